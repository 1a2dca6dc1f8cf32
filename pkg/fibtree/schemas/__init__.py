from ._cnn import (
    V2,
    CnnTemplate,
    Degree1Discrepancy,
    LocalPattern,
    LocalPatternSet,
    PhaseDiagram,
    PhaseDiagramRow,
    Realizability,
    RegionIndex,
    SeparationWitness,
    SkippedCell,
    sign_str,
)
from ._document import RunReport, SpecDocument
from ._entropy import EntropyResult, SimpleSubsystem, SymbolClass, SymbolClassification
from ._lattice import LatticeSlice, NodeWord, RootType
from ._spec import GammaTable, MarkovFibSpec, PruneReport, Provenance

__all__ = [
    "NodeWord",
    "RootType",
    "LatticeSlice",
    "MarkovFibSpec",
    "Provenance",
    "PruneReport",
    "GammaTable",
    "SymbolClass",
    "SymbolClassification",
    "SimpleSubsystem",
    "EntropyResult",
    "V2",
    "CnnTemplate",
    "LocalPattern",
    "LocalPatternSet",
    "RegionIndex",
    "SeparationWitness",
    "Realizability",
    "Degree1Discrepancy",
    "PhaseDiagramRow",
    "SkippedCell",
    "PhaseDiagram",
    "sign_str",
    "SpecDocument",
    "RunReport",
]
