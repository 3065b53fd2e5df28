"""
Inicialización del módulo services
"""
from .census_service import CensusService
from .chain_service import ChainService
from .classify_service import ClassifierService
from .replacement_service import ReplacementService

__all__ = ["CensusService", "ChainService", "ClassifierService", "ReplacementService"]
