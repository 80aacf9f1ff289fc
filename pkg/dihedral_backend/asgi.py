"""
ASGI config for dihedral_backend project.

Exposes the ASGI callable as ``application``.
"""

import os

from django.core.asgi import get_asgi_application

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'dihedral_backend.settings')

application = get_asgi_application()
