"""Shared test machinery: independent oracles and random generators.

Everything here deliberately avoids the code paths under test: the
contraction oracle uses explicit index loops, the axiom oracle sums over
raw tensor entries, and the gate simulator propagates matrix rows by index
arithmetic instead of Kronecker products or layer maps.
"""

from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np

from hopfcirc.circuit import (
    ANTIPODE,
    COMUL,
    COUNIT,
    ID,
    MUL,
    SWAP,
    UNIT,
    Circuit,
    Cnot,
    U1,
    unitary,
)

REPO_ROOT = Path(__file__).resolve().parents[1]


def loop_contract(a: np.ndarray, axes_a, b: np.ndarray, axes_b) -> np.ndarray:
    """Contraction by explicit nested loops over every index tuple."""
    axes_a, axes_b = list(axes_a), list(axes_b)
    free_a = [i for i in range(a.ndim) if i not in axes_a]
    free_b = [i for i in range(b.ndim) if i not in axes_b]
    out_shape = [a.shape[i] for i in free_a] + [b.shape[i] for i in free_b]
    out = np.zeros(out_shape, dtype=complex) if out_shape else np.zeros((), dtype=complex)
    sum_ranges = [range(a.shape[i]) for i in axes_a]
    for out_idx in itertools.product(*[range(s) for s in out_shape]):
        ia = [0] * a.ndim
        ib = [0] * b.ndim
        for pos, axis in enumerate(free_a):
            ia[axis] = out_idx[pos]
        for pos, axis in enumerate(free_b):
            ib[axis] = out_idx[len(free_a) + pos]
        total = 0j
        for summed in itertools.product(*sum_ranges):
            for axis_a, axis_b, v in zip(axes_a, axes_b, summed):
                ia[axis_a] = v
                ib[axis_b] = v
            total += a[tuple(ia)] * b[tuple(ib)]
        out[out_idx] = total
    return out


def loop_axiom_deviations(algebra) -> dict[str, float]:
    """Hopf-axiom deviations summed over all index tuples with plain loops."""
    d = algebra.dim
    M = algebra.mul.array
    D = algebra.comul.array
    u = algebra.unit.array
    eps = algebra.counit.array
    S = algebra.antipode.array
    rng_d = range(d)
    dev = dict.fromkeys(
        ["associativity", "unit", "coassociativity", "counit", "bialgebra", "antipode"], 0.0
    )

    for a, b, c, e in itertools.product(rng_d, repeat=4):
        left = sum(M[a, b, x] * M[x, c, e] for x in rng_d)
        right = sum(M[b, c, x] * M[a, x, e] for x in rng_d)
        dev["associativity"] = max(dev["associativity"], abs(left - right))
    for a, b in itertools.product(rng_d, repeat=2):
        delta = 1.0 if a == b else 0.0
        dev["unit"] = max(
            dev["unit"],
            abs(sum(u[x] * M[x, a, b] for x in rng_d) - delta),
            abs(sum(u[x] * M[a, x, b] for x in rng_d) - delta),
        )
    for a, i, j, k in itertools.product(rng_d, repeat=4):
        left = sum(D[a, x, k] * D[x, i, j] for x in rng_d)
        right = sum(D[a, i, x] * D[x, j, k] for x in rng_d)
        dev["coassociativity"] = max(dev["coassociativity"], abs(left - right))
    for a, b in itertools.product(rng_d, repeat=2):
        delta = 1.0 if a == b else 0.0
        dev["counit"] = max(
            dev["counit"],
            abs(sum(D[a, x, b] * eps[x] for x in rng_d) - delta),
            abs(sum(D[a, b, x] * eps[x] for x in rng_d) - delta),
        )
    for a, b, p, q in itertools.product(rng_d, repeat=4):
        left = sum(M[a, b, c] * D[c, p, q] for c in rng_d)
        right = sum(
            D[a, x, y] * D[b, z, w] * M[x, z, p] * M[y, w, q]
            for x, y, z, w in itertools.product(rng_d, repeat=4)
        )
        dev["bialgebra"] = max(dev["bialgebra"], abs(left - right))
    for p, q in itertools.product(rng_d, repeat=2):
        left = sum(u[a] * D[a, p, q] for a in rng_d)
        dev["bialgebra"] = max(dev["bialgebra"], abs(left - u[p] * u[q]))
    for a, b in itertools.product(rng_d, repeat=2):
        left = sum(M[a, b, c] * eps[c] for c in rng_d)
        dev["bialgebra"] = max(dev["bialgebra"], abs(left - eps[a] * eps[b]))
    dev["bialgebra"] = max(dev["bialgebra"], abs(sum(u[a] * eps[a] for a in rng_d) - 1.0))
    for a, b in itertools.product(rng_d, repeat=2):
        left = sum(
            D[a, x, y] * S[x, z] * M[z, y, b] for x, y, z in itertools.product(rng_d, repeat=3)
        )
        right = sum(
            D[a, x, y] * S[y, z] * M[x, z, b] for x, y, z in itertools.product(rng_d, repeat=3)
        )
        target = u[b] * eps[a]
        dev["antipode"] = max(dev["antipode"], abs(left - target), abs(right - target))
    return {k: float(v) for k, v in dev.items()}


def haar_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_circuit(rng: np.random.Generator, algebra, max_wires: int = 4, max_layers: int = 5) -> Circuit:
    """Random validated circuit; every layer boundary stays within max_wires."""
    d = algebra.dim
    wires_in = int(rng.integers(1, max_wires + 1))
    layers = []
    wires = wires_in
    u_count = 0
    for _ in range(int(rng.integers(0, max_layers + 1))):
        if wires == 0:
            layers.append((UNIT,))
            wires = 1
            continue
        layer = []
        remaining = wires
        produced = 0
        while remaining > 0:
            candidates = []
            for prim in (ID, MUL, COMUL, UNIT, COUNIT, ANTIPODE, SWAP, "U"):
                n_in, n_out = (1, 1) if prim == "U" else (prim.wires_in, prim.wires_out)
                if n_in <= remaining and produced + n_out + (remaining - n_in) <= max_wires:
                    candidates.append(prim)
            prim = candidates[int(rng.integers(len(candidates)))]
            if prim == "U":
                prim = unitary(f"u{u_count}", haar_unitary(rng, d))
                u_count += 1
            layer.append(prim)
            remaining -= prim.wires_in
            produced += prim.wires_out
        layers.append(tuple(layer))
        wires = produced
    return Circuit(algebra, wires_in, tuple(layers))


def random_gate_list(rng: np.random.Generator, wires: int, n_gates: int) -> list:
    gates = []
    for _ in range(n_gates):
        if wires >= 2 and rng.random() < 0.5:
            c, t = rng.choice(wires, size=2, replace=False)
            gates.append(Cnot(int(c), int(t)))
        else:
            gates.append(U1(int(rng.integers(wires)), haar_unitary(rng, 2), "u"))
    return gates


def simulate_gates_rowwise(wires: int, gates: list) -> np.ndarray:
    """Full qubit-gate-list matrix built by index arithmetic on rows.

    Controlled-NOT permutes basis rows via XOR of the control/target bits;
    one-wire unitaries scale and add rows digit by digit.  No Kronecker
    products and no circuit layers, so this is independent of both package
    evaluation paths.
    """
    dim = 2**wires
    total = np.eye(dim, dtype=complex)

    def bit(index: int, wire: int) -> int:
        return (index >> (wires - 1 - wire)) & 1

    def with_bit(index: int, wire: int, value: int) -> int:
        mask = 1 << (wires - 1 - wire)
        return (index & ~mask) | (value * mask)

    for gate in gates:
        if isinstance(gate, Cnot):
            perm = np.empty(dim, dtype=int)
            for row in range(dim):
                flipped = bit(row, gate.target) ^ bit(row, gate.control)
                perm[with_bit(row, gate.target, flipped)] = row
            total = total[perm]
        else:
            new = np.zeros_like(total)
            for row in range(dim):
                a = bit(row, gate.wire)
                for b in range(2):
                    new[with_bit(row, gate.wire, b)] += gate.matrix[b, a] * total[row]
            total = new
    return total


def document_strategy():
    """Hypothesis strategy over syntactically valid circuit documents."""
    from hypothesis import strategies as st

    from hopfcirc.dsl import CircuitDocument, UnitaryDef, PRESET_NAMES, ROTATION_NAMES

    finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
    name = st.from_regex(r"[A-Za-z_][A-Za-z0-9_]{0,8}", fullmatch=True)
    algebra_name = st.one_of(
        st.sampled_from(["Z2", "Z3", "Z4", "Z5", "S3"]),
        st.from_regex(r"[A-Za-z_][A-Za-z0-9_./-]{0,12}", fullmatch=True),
    )
    cplx = st.builds(complex, finite, finite)

    def rows_strategy():
        return st.integers(1, 3).flatmap(
            lambda n: st.lists(
                st.lists(cplx, min_size=n, max_size=n).map(tuple), min_size=n, max_size=n
            ).map(tuple)
        )

    unitary_def = st.one_of(
        st.sampled_from(PRESET_NAMES).map(lambda p: UnitaryDef(preset=p)),
        st.tuples(st.sampled_from(ROTATION_NAMES), finite).map(
            lambda t: UnitaryDef(preset=t[0], angle=t[1])
        ),
        rows_strategy().map(lambda rows: UnitaryDef(rows=rows)),
    )

    def build(draw_tuple):
        alg, wires, defs, layer_shape = draw_tuple
        unitaries = tuple(defs.items())
        unames = list(defs)
        layers = []
        for spec in layer_shape:
            layer = []
            for kind in spec:
                if kind < 7:
                    layer.append(("ID", "M", "DELTA", "UNIT", "COUNIT", "S", "SWAP")[kind])
                elif unames:
                    layer.append(("U", unames[kind % len(unames)]))
                else:
                    layer.append("ID")
            layers.append(tuple(layer))
        return CircuitDocument(
            algebra_name=alg, wires_in=wires, unitaries=unitaries, layers=tuple(layers)
        )

    return st.tuples(
        algebra_name,
        st.integers(0, 6),
        st.dictionaries(name, unitary_def, max_size=3),
        st.lists(st.lists(st.integers(0, 9), min_size=1, max_size=5), max_size=5),
    ).map(build)
