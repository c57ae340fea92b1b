"""Layered circuits of algebra structure maps, evaluation, and compilation.

A circuit is a list of layers applied bottom-up (first layer touches the
inputs).  Each layer is a left-to-right list of primitives whose input
arities must add up to the wire count entering the layer; the wire count
leaving is the sum of output arities.  Because Mul, Comul, Unit and Counit
change the wire count, circuits need not be square maps: evaluation yields
a LinearMap from d^wires_in to d^wires_out and the output can be fed to a
Born-rule measurement even when the map is not unitary.

Two evaluators are provided.  evaluate composes dense layer matrices;
evaluate_bruteforce propagates one basis input through an explicit sum
over all intermediate basis assignments, reading structure-tensor entries
directly.  They share no code path and are tested against each other.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import HopfAlgebra
from .tensor import LinearMap, Tensor, compose, identity_map, kron_maps

__all__ = [
    "Primitive",
    "ID",
    "MUL",
    "COMUL",
    "UNIT",
    "COUNIT",
    "ANTIPODE",
    "SWAP",
    "unitary",
    "PRIMITIVE_ARITY",
    "Circuit",
    "CircuitError",
    "AnnihilatedStateError",
    "OutcomeDistribution",
    "Cnot",
    "U1",
    "validate",
    "layer_map",
    "evaluate",
    "evaluate_bruteforce",
    "build_cnot",
    "compile_gate_circuit",
    "direct_gate_map",
    "apply",
    "measure",
    "is_unitary",
    "basis_state",
    "basis_label",
    "index_to_digits",
    "digits_to_index",
]

#: kind -> (wires consumed, wires produced)
PRIMITIVE_ARITY = {
    "Id": (1, 1),
    "Mul": (2, 1),
    "Comul": (1, 2),
    "Unit": (0, 1),
    "Counit": (1, 0),
    "Antipode": (1, 1),
    "Swap": (2, 2),
    "Unitary": (1, 1),
}

#: states wider than this many entries are refused outright
MAX_STATE_ENTRIES = 2**20


class CircuitError(ValueError):
    """Circuit fails wire arithmetic or uses primitives inconsistently."""


class AnnihilatedStateError(ValueError):
    """A non-unitary circuit sent this input to the zero vector."""


UNITARY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Primitive:
    kind: str
    name: str | None = None
    matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in PRIMITIVE_ARITY:
            raise CircuitError(f"unknown primitive kind {self.kind!r}")
        if (self.kind == "Unitary") != (self.matrix is not None):
            raise CircuitError("exactly the Unitary primitive carries a matrix")
        if self.matrix is None:
            return
        arr = np.array(self.matrix, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise CircuitError(f"unitary {self.name!r} must be square, got shape {arr.shape}")
        gram = arr.conj().T @ arr
        dev = float(np.max(np.abs(gram - np.eye(arr.shape[0]))))
        if dev > UNITARY_TOL:
            raise CircuitError(f"matrix for {self.name!r} is not unitary (deviation {dev:.2e})")
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @property
    def wires_in(self) -> int:
        return PRIMITIVE_ARITY[self.kind][0]

    @property
    def wires_out(self) -> int:
        return PRIMITIVE_ARITY[self.kind][1]

    def __repr__(self) -> str:
        if self.kind == "Unitary":
            return f"Primitive(Unitary {self.name!r})"
        return f"Primitive({self.kind})"


ID = Primitive("Id")
MUL = Primitive("Mul")
COMUL = Primitive("Comul")
UNIT = Primitive("Unit")
COUNIT = Primitive("Counit")
ANTIPODE = Primitive("Antipode")
SWAP = Primitive("Swap")


def unitary(name: str, matrix) -> Primitive:
    """One-wire unitary gate on the algebra's basis; non-unitary matrices
    are rejected at construction."""
    return Primitive("Unitary", name=name, matrix=np.asarray(matrix, dtype=complex))


@dataclass(frozen=True, eq=False)
class Circuit:
    algebra: HopfAlgebra
    wires_in: int
    layers: tuple[tuple[Primitive, ...], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(tuple(layer) for layer in self.layers))
        if self.wires_in < 0:
            raise CircuitError("wires_in must be nonnegative")


def validate(circuit: Circuit) -> list[int]:
    """Thread wire counts through the layers; the profile has one entry per
    layer boundary, starting at wires_in."""
    d = circuit.algebra.dim
    profile = [circuit.wires_in]
    wires = circuit.wires_in
    for i, layer in enumerate(circuit.layers):
        if not layer:
            raise CircuitError(f"layer {i} is empty")
        consumed = sum(p.wires_in for p in layer)
        if consumed != wires:
            raise CircuitError(f"layer {i} consumes {consumed} wires, {wires} available")
        for p in layer:
            if p.kind == "Unitary" and p.matrix.shape != (d, d):
                raise CircuitError(
                    f"layer {i}: unitary {p.name!r} is {p.matrix.shape[0]}x{p.matrix.shape[1]} "
                    f"but the algebra dimension is {d}"
                )
        wires = sum(p.wires_out for p in layer)
        profile.append(wires)
    for w in profile:
        if d**w > MAX_STATE_ENTRIES:
            raise CircuitError(
                f"circuit too wide: {w} wires at dimension {d} exceeds "
                f"{MAX_STATE_ENTRIES} state entries"
            )
    return profile


def _primitive_map(algebra: HopfAlgebra, prim: Primitive) -> LinearMap:
    if prim.kind == "Id":
        return identity_map(algebra.dim, 1)
    if prim.kind == "Mul":
        return algebra.mul_map()
    if prim.kind == "Comul":
        return algebra.comul_map()
    if prim.kind == "Unit":
        return algebra.unit_map()
    if prim.kind == "Counit":
        return algebra.counit_map()
    if prim.kind == "Antipode":
        return algebra.antipode_map()
    if prim.kind == "Swap":
        return algebra.swap_map()
    return LinearMap(algebra.dim, 1, 1, Tensor(prim.matrix))


def layer_map(algebra: HopfAlgebra, layer: Sequence[Primitive]) -> LinearMap:
    """Kronecker product of the layer's primitive maps, leftmost factor first."""
    if not layer:
        raise CircuitError("layer_map requires a nonempty layer")
    result = _primitive_map(algebra, layer[0])
    for prim in layer[1:]:
        result = kron_maps(result, _primitive_map(algebra, prim))
    return result


def evaluate(circuit: Circuit) -> LinearMap:
    """Compose the layer maps in application order."""
    validate(circuit)
    total = identity_map(circuit.algebra.dim, circuit.wires_in)
    for layer in circuit.layers:
        total = compose(layer_map(circuit.algebra, layer), total)
    return total


# --- brute-force evaluator -------------------------------------------------

def _transitions(algebra: HopfAlgebra, prim: Primitive):
    """List of (input digits, output digits, coefficient) read entry by entry
    from the structure tensors, zeros skipped."""
    d = algebra.dim
    out = []
    if prim.kind == "Id":
        for a in range(d):
            out.append(((a,), (a,), 1.0 + 0j))
    elif prim.kind == "Mul":
        arr = algebra.mul.array
        for a in range(d):
            for b in range(d):
                for c in range(d):
                    if arr[a, b, c] != 0:
                        out.append(((a, b), (c,), complex(arr[a, b, c])))
    elif prim.kind == "Comul":
        arr = algebra.comul.array
        for a in range(d):
            for b in range(d):
                for c in range(d):
                    if arr[a, b, c] != 0:
                        out.append(((a,), (b, c), complex(arr[a, b, c])))
    elif prim.kind == "Unit":
        arr = algebra.unit.array
        for a in range(d):
            if arr[a] != 0:
                out.append(((), (a,), complex(arr[a])))
    elif prim.kind == "Counit":
        arr = algebra.counit.array
        for a in range(d):
            if arr[a] != 0:
                out.append(((a,), (), complex(arr[a])))
    elif prim.kind == "Antipode":
        arr = algebra.antipode.array
        for a in range(d):
            for b in range(d):
                if arr[a, b] != 0:
                    out.append(((a,), (b,), complex(arr[a, b])))
    elif prim.kind == "Swap":
        for a in range(d):
            for b in range(d):
                out.append(((a, b), (b, a), 1.0 + 0j))
    else:  # Unitary: column a of the matrix lists the images of basis a
        for a in range(d):
            for b in range(d):
                v = prim.matrix[b, a]
                if v != 0:
                    out.append(((a,), (b,), complex(v)))
    return out


def evaluate_bruteforce(circuit: Circuit, input_basis_index: int) -> np.ndarray:
    """Propagate one basis input by explicit summation over all intermediate
    basis assignments; returns the output column as a complex vector.

    Independent of evaluate: no Kronecker products, reshapes or matrix
    multiplications are involved.
    """
    profile = validate(circuit)
    d = circuit.algebra.dim
    n_in = circuit.wires_in
    if not 0 <= input_basis_index < d**n_in:
        raise ValueError(
            f"input index {input_basis_index} out of range for {n_in} wires at dimension {d}"
        )

    amplitudes = {tuple(index_to_digits(input_basis_index, d, n_in)): 1.0 + 0j}
    for layer in circuit.layers:
        tables = []
        for prim in layer:
            by_input = defaultdict(list)
            for digits_in, digits_out, coeff in _transitions(circuit.algebra, prim):
                by_input[digits_in].append((digits_out, coeff))
            tables.append((prim.wires_in, by_input))

        next_amplitudes: dict[tuple[int, ...], complex] = defaultdict(complex)
        for assignment, amp in amplitudes.items():
            partial = [((), amp)]
            pos = 0
            for n_cons, by_input in tables:
                digits_in = assignment[pos : pos + n_cons]
                pos += n_cons
                branches = by_input.get(digits_in, ())
                partial = [
                    (prefix + digits_out, value * coeff)
                    for prefix, value in partial
                    for digits_out, coeff in branches
                ]
                if not partial:
                    break
            for digits, value in partial:
                next_amplitudes[digits] += value
        amplitudes = next_amplitudes

    n_out = profile[-1]
    column = np.zeros(d**n_out, dtype=complex)
    for digits, value in amplitudes.items():
        column[digits_to_index(digits, d)] += value
    return column


# --- controlled-NOT and gate-list compilation ------------------------------

def build_cnot(algebra: HopfAlgebra) -> Circuit:
    """Copy the control, then multiply the copy into the target.

    For the two-element algebra this is the controlled-NOT; for a general
    group algebra it is the controlled shift sending (g, h) to (g, g*h).
    """
    return Circuit(algebra, wires_in=2, layers=((COMUL, ID), (ID, MUL)))


@dataclass(frozen=True)
class Cnot:
    control: int
    target: int


@dataclass(frozen=True, eq=False)
class U1:
    wire: int
    matrix: np.ndarray
    name: str = "u"


def _padded(n: int, at: int, prims: Sequence[Primitive], span: int) -> tuple[Primitive, ...]:
    """Layer acting as `prims` on wires at..at+span-1 and Id elsewhere."""
    return tuple([ID] * at + list(prims) + [ID] * (n - at - span))


def _swap_layer(n: int, p: int) -> tuple[Primitive, ...]:
    return _padded(n, p, [SWAP], 2)


def compile_gate_circuit(
    algebra: HopfAlgebra, wires: int, gates: Sequence[Cnot | U1]
) -> Circuit:
    """Translate a gate list into a circuit over the primitive set.

    One-wire gates become a single layer; a controlled-NOT on adjacent
    wires (control immediately left of target) becomes the two-layer
    copy/multiply block; any other control/target pair is bracketed by
    ladders of adjacent swaps that move the control next to the target and
    unwind afterwards.
    """
    n = wires
    layers: list[tuple[Primitive, ...]] = []
    for gi, gate in enumerate(gates):
        if isinstance(gate, U1):
            if not 0 <= gate.wire < n:
                raise CircuitError(f"gate {gi}: wire {gate.wire} out of range for {n} wires")
            layers.append(_padded(n, gate.wire, [unitary(gate.name, gate.matrix)], 1))
            continue
        if not isinstance(gate, Cnot):
            raise CircuitError(f"gate {gi}: expected Cnot or U1, got {type(gate).__name__}")
        c, t = gate.control, gate.target
        if not (0 <= c < n and 0 <= t < n):
            raise CircuitError(f"gate {gi}: wires ({c},{t}) out of range for {n} wires")
        if c == t:
            raise CircuitError(f"gate {gi}: control and target must differ")
        if c < t:
            pre = [(i, i + 1) for i in range(c, t - 1)]  # walk control right to t-1
            block_at = t - 1
        else:
            pre = [(i - 1, i) for i in range(c, t + 1, -1)]  # walk control left to t+1
            pre.append((t, t + 1))  # cross over the target
            block_at = t
        for p, _ in pre:
            layers.append(_swap_layer(n, p))
        layers.append(_padded(n, block_at, [COMUL], 1))
        layers.append(_padded(n + 1, block_at, [ID, MUL], 3))
        for p, _ in reversed(pre):
            layers.append(_swap_layer(n, p))
    return Circuit(algebra, wires_in=n, layers=tuple(layers))


def direct_gate_map(algebra: HopfAlgebra, wires: int, gates: Sequence[Cnot | U1]) -> LinearMap:
    """Plain matrix product of the gate list, for checking compiled circuits.

    Controlled-NOT acts as a basis permutation read off the group table;
    no comultiplication is involved, so this shares nothing with the
    compiled evaluation path.
    """
    d = algebra.dim
    dim = d**wires
    if dim > MAX_STATE_ENTRIES:
        raise CircuitError(f"{wires} wires at dimension {d} exceeds the width limit")
    total = np.eye(dim, dtype=complex)
    mul = algebra.mul.array
    for gi, gate in enumerate(gates):
        if isinstance(gate, U1):
            if not 0 <= gate.wire < wires:
                raise CircuitError(f"gate {gi}: wire {gate.wire} out of range for {wires} wires")
            m = np.kron(
                np.kron(np.eye(d**gate.wire), np.asarray(gate.matrix, dtype=complex)),
                np.eye(d ** (wires - gate.wire - 1)),
            )
        else:
            c, t = gate.control, gate.target
            if not (0 <= c < wires and 0 <= t < wires) or c == t:
                raise CircuitError(f"gate {gi}: bad wire pair ({c},{t}) for {wires} wires")
            m = np.zeros((dim, dim), dtype=complex)
            for col in range(dim):
                digits = index_to_digits(col, d, wires)
                digits[t] = int(np.argmax(mul[digits[c], digits[t]]))
                m[digits_to_index(digits, d), col] = 1.0
        total = m @ total
    return LinearMap(d, wires, wires, Tensor(total))


# --- applying maps and reading out results ---------------------------------

def apply(linmap: LinearMap, state: Sequence[complex]) -> np.ndarray:
    vec = np.asarray(state, dtype=complex).reshape(-1)
    expected = linmap.base_dim**linmap.wires_in
    if vec.shape != (expected,):
        raise ValueError(f"state has length {vec.shape[0]}, map consumes {expected}")
    return linmap.matrix.array @ vec


@dataclass(frozen=True)
class OutcomeDistribution:
    """Born-rule probabilities over basis output strings.

    norm_in is the squared norm of the vector before renormalization; for a
    unitary map on a normalized input it is 1, and how far it strays from 1
    measures how non-unitary the circuit acted on this input.
    """

    entries: tuple[tuple[str, float], ...]
    norm_in: float

    def __post_init__(self):
        total = sum(p for _, p in self.entries)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"probabilities sum to {total}, not 1")
        if any(not 0.0 <= p <= 1.0 for _, p in self.entries):
            raise ValueError("probabilities must lie in [0, 1]")

    def as_dict(self) -> dict:
        return {"norm_in": self.norm_in, "outcomes": {lbl: p for lbl, p in self.entries}}


ANNIHILATION_THRESHOLD = 1e-14


def measure(state: Sequence[complex], base_dim: int) -> OutcomeDistribution:
    """Born rule on the full output vector, renormalized.

    Raises AnnihilatedStateError when every amplitude magnitude is at most
    1e-14: the circuit destroyed this input, and inventing a distribution
    would be worse than failing.
    """
    vec = np.asarray(state, dtype=complex).reshape(-1)
    if base_dim < 1 or (base_dim == 1 and vec.shape[0] != 1):
        raise ValueError(f"state length {vec.shape[0]} is not a power of {base_dim}")
    wires = 0
    while base_dim > 1 and base_dim**wires < vec.shape[0]:
        wires += 1
    if base_dim**wires != vec.shape[0]:
        raise ValueError(f"state length {vec.shape[0]} is not a power of {base_dim}")
    if float(np.max(np.abs(vec))) <= ANNIHILATION_THRESHOLD:
        raise AnnihilatedStateError(
            "all output amplitudes are at most 1e-14; the circuit annihilated this input"
        )
    weights = np.abs(vec) ** 2
    norm_in = float(weights.sum())
    entries = tuple(
        (basis_label(index_to_digits(i, base_dim, wires), base_dim), float(w / norm_in))
        for i, w in enumerate(weights)
        if w > 0.0
    )
    return OutcomeDistribution(entries=entries, norm_in=norm_in)


def is_unitary(linmap: LinearMap, tol: float = 1e-10) -> bool:
    """True iff the map is square and its Gram matrix is the identity."""
    if linmap.wires_in != linmap.wires_out:
        return False
    m = linmap.matrix.array
    gram = m.conj().T @ m
    return float(np.max(np.abs(gram - np.eye(m.shape[1])))) <= tol


# --- basis bookkeeping ------------------------------------------------------

def index_to_digits(index: int, base_dim: int, wires: int) -> list[int]:
    """Wire 0 is the most significant digit."""
    digits = []
    for k in range(wires - 1, -1, -1):
        digits.append((index // base_dim**k) % base_dim)
    return digits


def digits_to_index(digits: Sequence[int], base_dim: int) -> int:
    index = 0
    for dgt in digits:
        index = index * base_dim + dgt
    return index


def basis_label(digits: Sequence[int], base_dim: int) -> str:
    if base_dim <= 10:
        return "".join(str(dgt) for dgt in digits)
    return ",".join(str(dgt) for dgt in digits)


def basis_state(base_dim: int, digits: Sequence[int]) -> np.ndarray:
    vec = np.zeros(base_dim ** len(digits), dtype=complex)
    vec[digits_to_index(digits, base_dim)] = 1.0
    return vec
