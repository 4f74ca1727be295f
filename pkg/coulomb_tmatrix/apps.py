from django.apps import AppConfig


class CoulombTmatrixConfig(AppConfig):
    name = 'coulomb_tmatrix'
    verbose_name = "Off-shell Coulomb T-matrix"
