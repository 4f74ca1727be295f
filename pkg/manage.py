#!/usr/bin/env python
import os
import sys

if __name__ == "__main__":
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "tmatrix_site.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError:
        # check that Django really is missing before masking the error
        try:
            import django
        except ImportError:
            raise ImportError(
                "Couldn't import Django. Is it installed and on your "
                "PYTHONPATH, and is the virtual environment activated?"
            )
        raise
    execute_from_command_line(sys.argv)
