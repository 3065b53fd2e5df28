"""
Inicialización del módulo models
"""
from .schemas import (
    AmbientStep,
    AmoebaCategory,
    AutomorphismResult,
    ChainVerdict,
    CensusLine,
    ClassificationReport,
    CompositionLayout,
    ConsistencyRecord,
    EdgeReplacement,
    GeneratorAtlas,
    GeneratorWord,
    GlobalMethod,
    Graph,
    MorphChain,
    Permutation,
    ReachabilitySummary,
    ReplacementKind,
    RootedGraph,
    RootedVerdict,
    StabilizerLevel,
)

__all__ = [
    "AmbientStep",
    "AmoebaCategory",
    "AutomorphismResult",
    "ChainVerdict",
    "CensusLine",
    "ClassificationReport",
    "CompositionLayout",
    "ConsistencyRecord",
    "EdgeReplacement",
    "GeneratorAtlas",
    "GeneratorWord",
    "GlobalMethod",
    "Graph",
    "MorphChain",
    "Permutation",
    "ReachabilitySummary",
    "ReplacementKind",
    "RootedGraph",
    "RootedVerdict",
    "StabilizerLevel",
]
