"""Randomized compiling for easy/hard cycle circuits.

Rewrites circuits so that every easy round absorbs a fresh Pauli twirl and
its correction, turning coherent gate noise into stochastic Pauli noise at
no depth cost, and provides the channel/metric/simulation machinery to
quantify the effect.
"""

from .gates import (
    ALL_DIHEDRAL,
    ALL_PAULIS,
    Circuit,
    Cycle,
    DihedralElem,
    HardRound,
    PauliElem,
    circuit_from_json,
    circuit_to_json,
    circuit_unitary,
    conjugate_pauli_round,
    dihedral_inverse,
    dihedral_mul,
    easy_matrix,
    pauli_embed,
    sample_random_circuit,
)
from .randomize import (
    RandomizedCircuit,
    check_logical_equivalence,
    compile_with_twirls,
    correction_round,
    dress_cycle,
    randomize_circuit,
    randomized_from_json,
    randomized_to_json,
)
from .channels import (
    NoiseSpec,
    PauliChannel,
    Ptm,
    calibrate_delta,
    infidelity,
    over_rotation,
    pauli_twirl,
    ptm_compose,
    ptm_from_unitary,
    ptm_identity,
    ptm_tensor,
)
from .metrics import (
    BoundReport,
    diamond_diff_lower_search,
    diamond_lower_search,
    diamond_pauli,
    diamond_unitary,
    eq3_bounds,
    fig2_upper_bound,
    telescoping_residual,
    thm2_bound,
    thm3_general_bound,
    thm3_local_bound,
    variational_distance,
)
from .simulate import (
    ideal_distribution,
    relabel_distribution,
    run_bare,
    run_randomized,
    run_tailored,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
