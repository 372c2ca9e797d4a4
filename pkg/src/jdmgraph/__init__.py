"""Construct and uniformly sample graphs with a prescribed joint degree matrix."""

from .construct import greedy_construct
from .errors import JDMError, NotGraphical
from .mcmc import ChainKind, SamplerSchedule, sample
from .model import (
    DegreeVector,
    JointDegreeMatrix,
    Pseudograph,
    SimpleGraph,
    derive_degree_vector,
    edge_count,
    edge_mean,
    erdos_gallai_check,
    extract_jdm,
    is_graphical,
)

__version__ = "0.1.0"

__all__ = [
    "ChainKind",
    "DegreeVector",
    "JDMError",
    "JointDegreeMatrix",
    "NotGraphical",
    "Pseudograph",
    "SamplerSchedule",
    "SimpleGraph",
    "derive_degree_vector",
    "edge_count",
    "edge_mean",
    "erdos_gallai_check",
    "extract_jdm",
    "greedy_construct",
    "is_graphical",
    "sample",
]
