from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class GeometryConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'geometry'
    verbose_name = _('Discrete loop immersions')
