"""Decoherence-free subsystems of qudits under collective SU(d) noise."""

from .codes import (
    CodeBasis,
    LogicalState,
    decode,
    discriminate,
    encode,
    get_code,
    sdfs_matrix,
    three_qubit_code,
    three_qutrit_code,
    verify_code,
)
from .collective import (
    CollectiveOperatorSet,
    SiteConfig,
    StateVector,
    collective_set,
    evolve,
    generic_error,
)
from .dfs_finder import (
    DecompositionReport,
    QuantumNumbers,
    commutant_dimension,
    decompose_hilbert_space,
    highest_weight_subspace,
    identify_irrep,
    verify_block_structure,
)
from .noise_sim import FidelityReport, SimConfig, logical_fidelity, run_trials, twirl
from .su_algebra import RepKind, generators, rep_generators
from .tableaux import Decomposition, YoungDiagram, conjugate_irrep, decompose_chain, dimension, tensor_pieri

__all__ = [
    "CodeBasis",
    "FidelityReport",
    "LogicalState",
    "SimConfig",
    "decode",
    "discriminate",
    "encode",
    "get_code",
    "logical_fidelity",
    "run_trials",
    "sdfs_matrix",
    "three_qubit_code",
    "three_qutrit_code",
    "twirl",
    "verify_code",
    "CollectiveOperatorSet",
    "Decomposition",
    "DecompositionReport",
    "QuantumNumbers",
    "RepKind",
    "SiteConfig",
    "StateVector",
    "YoungDiagram",
    "collective_set",
    "commutant_dimension",
    "conjugate_irrep",
    "decompose_chain",
    "decompose_hilbert_space",
    "dimension",
    "evolve",
    "generators",
    "generic_error",
    "highest_weight_subspace",
    "identify_irrep",
    "rep_generators",
    "tensor_pieri",
    "verify_block_structure",
]

__version__ = "0.1.0"
