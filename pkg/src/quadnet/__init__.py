"""
quadnet: asymptotic sets of networks of coupled complex quadratic maps.
"""
__all__ = ["__version__"]
__version__ = "0.1.0"
