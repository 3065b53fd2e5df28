"""
Inicialización del módulo commands
"""
from . import census, classify, construct, morph, replacements

__all__ = ["census", "classify", "construct", "morph", "replacements"]
