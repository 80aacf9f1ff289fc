import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "dihedral_backend.settings")
django.setup()
