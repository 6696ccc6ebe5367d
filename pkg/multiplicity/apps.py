from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class MultiplicityConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'multiplicity'
    verbose_name = _('Multiplicity function')
