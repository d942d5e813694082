"""
Django settings for OrbiLab project.

OrbiLab has no web surface: Django hosts the management commands, the
configuration layer, logging and the run ledger database.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
import os
try:
    from dotenv import load_dotenv  # optional for local runs
    load_dotenv()
except Exception:
    pass

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'orbilab-local-only-key')

DEBUG = os.getenv('DJANGO_DEBUG', 'false').lower() in ('1', 'true', 'yes')

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'algebra',
    'orbifolds',
    'cohomology',
]


# Database
# Only the run ledger (cohomology.RunRecord) lives here.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.getenv('ORBIFOLD_DATABASE', str(BASE_DIR / 'db.sqlite3')),
    }
}


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Orbifold engine
# Degree cap D for enumeration and cohomology when --max-degree is not given
ORBIFOLD_MAX_DEGREE = int(os.getenv('ORBIFOLD_MAX_DEGREE', '5'))

# Warn when any cochain basis grows past this many columns
ORBIFOLD_BASIS_WARN_COLUMNS = int(os.getenv('ORBIFOLD_BASIS_WARN_COLUMNS', '20000'))

# Refuse to build cochain bases larger than this (exit status 3)
ORBIFOLD_BASIS_CAP = int(os.getenv('ORBIFOLD_BASIS_CAP', '2000000'))

ORBIFOLD_PROGRESS = os.getenv('ORBIFOLD_PROGRESS', 'false').lower() in ('1', 'true', 'yes')

ORBIFOLD_LOG_LEVEL = os.getenv('ORBIFOLD_LOG_LEVEL', 'INFO').upper()


# Logging
# Reports go to stdout from the commands; log records go to stderr.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'algebra': {'handlers': ['console'], 'level': ORBIFOLD_LOG_LEVEL, 'propagate': False},
        'orbifolds': {'handlers': ['console'], 'level': ORBIFOLD_LOG_LEVEL, 'propagate': False},
        'cohomology': {'handlers': ['console'], 'level': ORBIFOLD_LOG_LEVEL, 'propagate': False},
    },
}
