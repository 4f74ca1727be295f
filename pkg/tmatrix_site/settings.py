"""
Django settings for tmatrix_site project.

The project has no database and no web front-end: it hosts the
coulomb_tmatrix app for its management commands and scripts.
"""

import os

BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

SECRET_KEY = os.environ.get("TMATRIX_SECRET_KEY", "tmatrix-batch-only")

DEBUG = False

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'django_extensions',
    'coulomb_tmatrix',
]

DATABASES = {}

USE_TZ = True

# location of the JSON config file read by coulomb_tmatrix.scripts.config
TMATRIX_CONFIG = os.environ.get(
    "TMATRIX_CONFIG",
    os.path.join(BASE_DIR, "etc", "tmatrix_config.json")
)

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'
