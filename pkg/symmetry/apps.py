from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class SymmetryConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'symmetry'
    verbose_name = _('Isotropy and covering factorization')
