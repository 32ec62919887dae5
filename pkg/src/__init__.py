# Gaussian curve extremes

__version__ = "0.1.0"
