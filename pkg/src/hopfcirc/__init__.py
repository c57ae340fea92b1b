"""Quantum circuits as compositions of Hopf-algebra structure maps.

The multiplication of the two-element group algebra is the XOR gate; copy
the control with the comultiplication and multiply the copy into the
target and you have the controlled-NOT.  This package builds that algebra
(and any finite group algebra), verifies the Hopf axioms numerically,
evaluates layered circuits of structure maps, compiles ordinary gate lists
into those primitives, and reads probabilistic outputs off non-unitary
circuit maps.
"""

from .algebra import (
    AlgebraElement,
    AxiomReport,
    GroupTableError,
    HopfAlgebra,
    antipode_apply,
    basis_element,
    builtin_algebra,
    check_axioms,
    comultiply,
    counit_value,
    group_algebra,
    load_group_table,
    multiply,
    resolve_algebra,
    z2_algebra,
)
from .circuit import (
    ANTIPODE,
    COMUL,
    COUNIT,
    ID,
    MUL,
    SWAP,
    UNIT,
    AnnihilatedStateError,
    Circuit,
    CircuitError,
    Cnot,
    OutcomeDistribution,
    U1,
    apply,
    basis_state,
    build_cnot,
    compile_gate_circuit,
    direct_gate_map,
    evaluate,
    evaluate_bruteforce,
    is_unitary,
    layer_map,
    measure,
    unitary,
    validate,
)
from .dsl import CircuitDocument, ParseError, parse_circuit, print_circuit, to_circuit
from .tensor import (
    LinearMap,
    Tensor,
    allclose,
    as_linear_map,
    compose,
    contract,
    identity_map,
    kron_maps,
    permute_axes,
    tensor_product,
)

__version__ = "0.1.0"
