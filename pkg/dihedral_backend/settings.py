from pathlib import Path
import os
import dj_database_url
from dotenv import load_dotenv

load_dotenv()
BASE_DIR = Path(__file__).resolve().parent.parent

## --- CORE DJANGO SETTINGS ---
SECRET_KEY = os.environ.get("SECRET_KEY", "dihedral-dev-only-secret")
ROOT_URLCONF = "dihedral_backend.urls"
WSGI_APPLICATION = "dihedral_backend.wsgi.application"
ASGI_APPLICATION = "dihedral_backend.asgi.application"
DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

## --- DEPLOYMENT & SECURITY ---
DEBUG = os.environ.get("DEBUG", "").lower() in {"1","true","yes"} or ("RENDER" not in os.environ and "HEROKU" not in os.environ)

# Hosts
ALLOWED_HOSTS = ["localhost", "127.0.0.1", "testserver"]
# Support comma-separated ALLOWED_HOSTS env (e.g., "topology.example.org,api.internal")
_allowed_env = os.environ.get("ALLOWED_HOSTS", "").strip()
if _allowed_env:
    for host in [h.strip() for h in _allowed_env.split(",") if h.strip()]:
        if host not in ALLOWED_HOSTS:
            ALLOWED_HOSTS.append(host)
RENDER_EXTERNAL_HOSTNAME = os.environ.get("RENDER_EXTERNAL_HOSTNAME")
HEROKU_APP_NAME = os.environ.get("HEROKU_APP_NAME")
if RENDER_EXTERNAL_HOSTNAME:
    ALLOWED_HOSTS.append(RENDER_EXTERNAL_HOSTNAME)
if HEROKU_APP_NAME:
    ALLOWED_HOSTS.append(f"{HEROKU_APP_NAME}.herokuapp.com")

# Security headers & HTTPS enforcement (default to strict in production)
SECURE_SSL_REDIRECT = (not DEBUG) and (os.environ.get("SECURE_SSL_REDIRECT", "1").lower() in {"1","true","yes"})
SESSION_COOKIE_SECURE = not DEBUG
CSRF_COOKIE_SECURE = not DEBUG
SESSION_COOKIE_HTTPONLY = True
SECURE_HSTS_SECONDS = int(os.environ.get("SECURE_HSTS_SECONDS", "31536000" if not DEBUG else "0"))
SECURE_CONTENT_TYPE_NOSNIFF = True
SECURE_REFERRER_POLICY = os.environ.get("SECURE_REFERRER_POLICY", "strict-origin-when-cross-origin")
X_FRAME_OPTIONS = os.environ.get("X_FRAME_OPTIONS", "DENY")
SECURE_PROXY_SSL_HEADER = ("HTTP_X_FORWARDED_PROTO", "https")

## --- INSTALLED APPS ---
INSTALLED_APPS = [
    "django.contrib.auth",
    "django.contrib.contenttypes",
    "whitenoise.runserver_nostatic",
    "django.contrib.staticfiles",
    "rest_framework",
    "drf_spectacular",
    "dihedral",
]

## --- MIDDLEWARE ---
MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "whitenoise.middleware.WhiteNoiseMiddleware",
    "django.middleware.common.CommonMiddleware",
    "django.middleware.clickjacking.XFrameOptionsMiddleware",
]

## --- DATABASE ---
# The computations are stateless; the database only backs Django's auth/contenttypes tables.
_db_url = os.environ.get("DATABASE_URL", f"sqlite:///{os.path.join(BASE_DIR, 'db.sqlite3')}")
DATABASES = {
    "default": dj_database_url.parse(_db_url, conn_max_age=600),
}

## --- STATIC FILES (WHITENOISE) ---
STATIC_URL = "static/"
STATIC_ROOT = os.path.join(BASE_DIR, "staticfiles")
STORAGES = {
    "default": {
        "BACKEND": "django.core.files.storage.FileSystemStorage",
    },
    "staticfiles": {
        "BACKEND": "whitenoise.storage.CompressedManifestStaticFilesStorage",
    },
}

TEMPLATES = [
    {
        "BACKEND": "django.template.backends.django.DjangoTemplates",
        "DIRS": [],
        "APP_DIRS": True,
        "OPTIONS": {
            "context_processors": [
                "django.template.context_processors.request",
            ],
        },
    },
]
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

## --- REST FRAMEWORK ---
REST_FRAMEWORK = {
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [
        "rest_framework.permissions.AllowAny",
    ],
    "UNAUTHENTICATED_USER": None,
    "DEFAULT_THROTTLE_CLASSES": [
        "rest_framework.throttling.AnonRateThrottle",
    ],
    # Defaults; can override via env (e.g., DRF_THROTTLE_COMPUTE=30/min)
    "DEFAULT_THROTTLE_RATES": {
        "anon": os.environ.get("DRF_THROTTLE_ANON", "300/min"),
        # Per-scope throttle: the computation endpoints
        "compute": os.environ.get("DRF_THROTTLE_COMPUTE", "60/min"),
    },
    "DEFAULT_SCHEMA_CLASS": "drf_spectacular.openapi.AutoSchema",
}
SPECTACULAR_SETTINGS = {
    "TITLE": "Dihedral API",
    "DESCRIPTION": "Signature defects of 3-colored knots and trisections of dihedral branched covers.",
    "VERSION": "1.0.0",
    "SERVE_INCLUDE_SCHEMA": False,
}

# Use JSONRenderer only in production (disable Browsable API)
if not DEBUG:
    REST_FRAMEWORK["DEFAULT_RENDERER_CLASSES"] = [
        "rest_framework.renderers.JSONRenderer",
    ]

## --- DIHEDRAL COMPUTATION SETTINGS ---
DIHEDRAL = {
    "DEFAULT_P": int(os.environ.get("DIHEDRAL_DEFAULT_P", "3")),
    "DEFAULT_RESOLUTION": os.environ.get("DIHEDRAL_RESOLUTION", "left").lower(),
    # mpmath working precision for Tristram-Levine signatures at p > 3
    "MP_DPS": int(os.environ.get("DIHEDRAL_MP_DPS", "50")),
    # Upper bound on arcs for coloring enumeration requested over HTTP
    "MAX_COLORING_ARCS": int(os.environ.get("DIHEDRAL_MAX_COLORING_ARCS", "64")),
    "MAX_UPLOAD_BYTES": int(os.environ.get("DIHEDRAL_MAX_UPLOAD_BYTES", str(512 * 1024))),
}

# --- Upload limits (documents are posted inline) ---
DATA_UPLOAD_MAX_MEMORY_SIZE = int(os.environ.get("DATA_UPLOAD_MAX_MEMORY_SIZE", str(2 * 1024 * 1024)))  # 2 MB

## --- LOGGING ---
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{asctime} {levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "verbose",
        },
    },
    "loggers": {
        "dihedral": {
            "handlers": ["console"],
            "level": os.environ.get("DIHEDRAL_LOG_LEVEL", "WARNING").upper(),
            "propagate": False,
        },
        "django": {
            "handlers": ["console"],
            "level": os.environ.get("DJANGO_LOG_LEVEL", "WARNING").upper(),
        },
    },
}
