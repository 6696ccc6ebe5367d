from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class OrbitConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'orbit'
    verbose_name = _('Orbit equivalence')
