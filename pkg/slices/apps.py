from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class SlicesConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'slices'
    verbose_name = _('Normal bundle slices')
