from django.apps import AppConfig


class DihedralConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'dihedral'
    verbose_name = 'Dihedral covers'
