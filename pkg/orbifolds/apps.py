from django.apps import AppConfig


class OrbifoldsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'orbifolds'
    verbose_name = 'Orbifold complexes'
