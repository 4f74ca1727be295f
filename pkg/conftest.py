# Test wiring for running the Django test suite under pytest.
import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "tmatrix_site.settings")
django.setup()
