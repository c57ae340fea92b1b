"""Finite-dimensional Hopf algebras built from finite group tables.

A finite group gives a Hopf algebra on the vector space spanned by its
elements: multiplication extends the group law bilinearly, comultiplication
is the copy map g -> g (x) g, the counit sends every basis element to 1 and
the antipode sends g to its inverse.  The two-element case encodes XOR and
is the algebra underlying the controlled-NOT construction in circuit.py.

Axis conventions, fixed project-wide: mul has axes (in, in, out), comul
(in, out, out), antipode (in, out).  Unit and counit are plain vectors.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .tensor import (
    LinearMap,
    Tensor,
    as_linear_map,
    compose,
    identity_map,
    kron_maps,
    permute_axes,
)

__all__ = [
    "HopfAlgebra",
    "AlgebraElement",
    "AxiomCheck",
    "AxiomReport",
    "GroupTableError",
    "z2_algebra",
    "group_algebra",
    "cyclic_group_table",
    "symmetric_group_3_table",
    "builtin_algebra",
    "load_group_table",
    "resolve_algebra",
    "basis_element",
    "multiply",
    "comultiply",
    "counit_value",
    "antipode_apply",
    "check_axioms",
    "BUILTIN_ALGEBRAS",
]

#: named algebras the CLI resolves without a table file
BUILTIN_ALGEBRAS = ("Z2", "Z3", "Z4", "Z5", "S3")


class GroupTableError(ValueError):
    """A multiplication table failed one of the group laws."""


class HopfAlgebra:
    """Bundle of structure tensors over a d-dimensional basis.

    Direct construction only checks shapes; use z2_algebra, group_algebra
    or builtin_algebra to obtain instances whose axioms are verified.
    """

    __slots__ = ("dim", "basis_labels", "mul", "comul", "unit", "counit", "antipode")

    def __init__(
        self,
        basis_labels: Sequence[str],
        mul: Tensor,
        comul: Tensor,
        unit: Tensor,
        counit: Tensor,
        antipode: Tensor,
    ):
        d = len(basis_labels)
        if d < 1:
            raise ValueError("algebra needs at least one basis element")
        if len(set(basis_labels)) != d:
            raise ValueError("basis labels must be distinct")
        for name, t, dims in (
            ("mul", mul, (d, d, d)),
            ("comul", comul, (d, d, d)),
            ("unit", unit, (d,)),
            ("counit", counit, (d,)),
            ("antipode", antipode, (d, d)),
        ):
            if t.dims != dims:
                raise ValueError(f"{name} tensor has dims {t.dims}, expected {dims}")
        self.dim = d
        self.basis_labels = tuple(basis_labels)
        self.mul = mul
        self.comul = comul
        self.unit = unit
        self.counit = counit
        self.antipode = antipode

    def __eq__(self, other) -> bool:
        if not isinstance(other, HopfAlgebra):
            return NotImplemented
        return (
            self.basis_labels == other.basis_labels
            and np.array_equal(self.mul.array, other.mul.array)
            and np.array_equal(self.comul.array, other.comul.array)
            and np.array_equal(self.unit.array, other.unit.array)
            and np.array_equal(self.counit.array, other.counit.array)
            and np.array_equal(self.antipode.array, other.antipode.array)
        )

    def __hash__(self):
        return hash((self.basis_labels,))

    def __repr__(self) -> str:
        return f"HopfAlgebra(dim={self.dim}, labels={list(self.basis_labels)})"

    # Structure tensors reshaped into composable maps (see tensor.py for the
    # wire conventions).  Output axes must precede input axes, so mul
    # (in,in,out) is permuted to (out,in,in) and comul (in,out,out) to
    # (out,out,in) before reshaping.

    def mul_map(self) -> LinearMap:
        return as_linear_map(permute_axes(self.mul, (2, 0, 1)), self.dim, 1, 2)

    def comul_map(self) -> LinearMap:
        return as_linear_map(permute_axes(self.comul, (1, 2, 0)), self.dim, 2, 1)

    def unit_map(self) -> LinearMap:
        return as_linear_map(self.unit, self.dim, 1, 0)

    def counit_map(self) -> LinearMap:
        return as_linear_map(self.counit, self.dim, 0, 1)

    def antipode_map(self) -> LinearMap:
        return as_linear_map(permute_axes(self.antipode, (1, 0)), self.dim, 1, 1)

    def swap_map(self) -> LinearMap:
        d = self.dim
        m = np.zeros((d * d, d * d), dtype=complex)
        for a in range(d):
            for b in range(d):
                m[b * d + a, a * d + b] = 1.0
        return LinearMap(d, 2, 2, Tensor(m))


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    deviation: float
    passed: bool


@dataclass(frozen=True)
class AxiomReport:
    """Per-family deviations of the Hopf axioms at a given tolerance.

    Commutativity and cocommutativity are informational only; nonabelian
    group algebras are perfectly good Hopf algebras.
    """

    tol: float
    checks: tuple[AxiomCheck, ...]
    commutative: bool
    cocommutative: bool

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_deviation(self) -> float:
        return max(c.deviation for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "tol": self.tol,
            "passed": self.passed,
            "axioms": [
                {"name": c.name, "deviation": c.deviation, "passed": c.passed}
                for c in self.checks
            ],
            "commutative": self.commutative,
            "cocommutative": self.cocommutative,
        }


def _deviation(f: LinearMap, g: LinearMap) -> float:
    return float(np.max(np.abs(f.matrix.array - g.matrix.array)))


def check_axioms(algebra: HopfAlgebra, tol: float) -> AxiomReport:
    """Evaluate the six Hopf axiom families as exact tensor identities.

    Families: associativity, unit, coassociativity, counit, the four
    bialgebra compatibility identities (reported as one family by their
    max deviation), and the antipode identity.
    """
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    d = algebra.dim
    m = algebra.mul_map()
    dl = algebra.comul_map()
    u = algebra.unit_map()
    eps = algebra.counit_map()
    s = algebra.antipode_map()
    tau = algebra.swap_map()
    i1 = identity_map(d, 1)

    deviations: dict[str, float] = {}

    deviations["associativity"] = _deviation(
        compose(m, kron_maps(m, i1)), compose(m, kron_maps(i1, m))
    )
    deviations["unit"] = max(
        _deviation(compose(m, kron_maps(u, i1)), i1),
        _deviation(compose(m, kron_maps(i1, u)), i1),
    )
    deviations["coassociativity"] = _deviation(
        compose(kron_maps(dl, i1), dl), compose(kron_maps(i1, dl), dl)
    )
    deviations["counit"] = max(
        _deviation(compose(kron_maps(eps, i1), dl), i1),
        _deviation(compose(kron_maps(i1, eps), dl), i1),
    )
    # Four compatibility identities making (mul, comul) a bialgebra.
    mm = compose(kron_maps(m, m), kron_maps(kron_maps(i1, tau), i1))
    deviations["bialgebra"] = max(
        _deviation(compose(dl, m), compose(mm, kron_maps(dl, dl))),
        _deviation(compose(dl, u), kron_maps(u, u)),
        _deviation(compose(eps, m), kron_maps(eps, eps)),
        _deviation(compose(eps, u), identity_map(d, 0)),
    )
    u_eps = compose(u, eps)
    deviations["antipode"] = max(
        _deviation(compose(m, compose(kron_maps(s, i1), dl)), u_eps),
        _deviation(compose(m, compose(kron_maps(i1, s), dl)), u_eps),
    )

    checks = tuple(
        AxiomCheck(name, dev, dev <= tol) for name, dev in deviations.items()
    )
    commutative = _deviation(compose(m, tau), m) <= tol
    cocommutative = _deviation(compose(tau, dl), dl) <= tol
    return AxiomReport(tol=tol, checks=checks, commutative=commutative, cocommutative=cocommutative)


def z2_algebra() -> HopfAlgebra:
    """The two-element algebra whose multiplication table is XOR."""
    mul = np.zeros((2, 2, 2))
    mul[0, 0, 0] = mul[0, 1, 1] = mul[1, 0, 1] = mul[1, 1, 0] = 1.0
    comul = np.zeros((2, 2, 2))
    comul[0, 0, 0] = comul[1, 1, 1] = 1.0
    return HopfAlgebra(
        ("f0", "f1"),
        mul=Tensor(mul),
        comul=Tensor(comul),
        unit=Tensor([1.0, 0.0]),
        counit=Tensor([1.0, 1.0]),
        antipode=Tensor(np.eye(2)),
    )


def _validate_group_table(table: Sequence[Sequence[int]]) -> int:
    """Return the identity element's index; raise GroupTableError otherwise."""
    d = len(table)
    if d < 1 or any(len(row) != d for row in table):
        raise GroupTableError(f"not a group: table must be square, got {d} rows")
    for row in table:
        for v in row:
            if not isinstance(v, (int, np.integer)) or not 0 <= v < d:
                raise GroupTableError(
                    f"not a group: table entries must be indices in 0..{d - 1}, got {v!r}"
                )
    for i, row in enumerate(table):
        if sorted(row) != list(range(d)):
            raise GroupTableError("not a group: rows not permutations")
    for j in range(d):
        if sorted(table[i][j] for i in range(d)) != list(range(d)):
            raise GroupTableError("not a group: columns not permutations")
    identity = None
    for e in range(d):
        if all(table[e][j] == j for j in range(d)) and all(table[i][e] == i for i in range(d)):
            identity = e
            break
    if identity is None:
        raise GroupTableError("not a group: no identity element")
    for i, j, k in itertools.product(range(d), repeat=3):
        if table[table[i][j]][k] != table[i][table[j][k]]:
            raise GroupTableError(f"not a group: associativity fails at ({i},{j},{k})")
    for g in range(d):
        if not any(table[g][h] == identity and table[h][g] == identity for h in range(d)):
            raise GroupTableError(f"not a group: element {g} has no inverse")
    return identity


def group_algebra(labels: Sequence[str], table: Sequence[Sequence[int]]) -> HopfAlgebra:
    """Hopf algebra of a finite group given by its multiplication table.

    table[i][j] is the index of (element i) * (element j).  The table is
    validated exhaustively (permutation rows/columns, identity,
    associativity, inverses) before any tensor is built.
    """
    identity = _validate_group_table(table)
    d = len(table)
    if len(labels) != d:
        raise ValueError(f"got {len(labels)} labels for a {d}-element table")

    mul = np.zeros((d, d, d))
    for i in range(d):
        for j in range(d):
            mul[i, j, table[i][j]] = 1.0
    comul = np.zeros((d, d, d))
    for g in range(d):
        comul[g, g, g] = 1.0
    unit = np.zeros(d)
    unit[identity] = 1.0
    antipode = np.zeros((d, d))
    for g in range(d):
        inv = next(h for h in range(d) if table[g][h] == identity)
        antipode[g, inv] = 1.0

    algebra = HopfAlgebra(
        tuple(labels),
        mul=Tensor(mul),
        comul=Tensor(comul),
        unit=Tensor(unit),
        counit=Tensor(np.ones(d)),
        antipode=Tensor(antipode),
    )
    report = check_axioms(algebra, 1e-12)
    if not report.passed:  # cannot happen for a valid group table
        raise GroupTableError("group table produced an algebra violating the Hopf axioms")
    return algebra


def cyclic_group_table(n: int) -> tuple[list[str], list[list[int]]]:
    """Addition mod n, with labels g0..g(n-1)."""
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    labels = [f"g{i}" for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return labels, table


def symmetric_group_3_table() -> tuple[list[str], list[list[int]]]:
    """Permutations of three points in lexicographic one-line order."""
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    labels = ["".join(str(x) for x in p) for p in perms]
    # composition convention: (p * q)(x) = p(q(x))
    table = [
        [index[tuple(p[q[x]] for x in range(3))] for q in perms]
        for p in perms
    ]
    return labels, table


def builtin_algebra(name: str) -> HopfAlgebra:
    key = name.upper()
    if key == "Z2":
        return z2_algebra()
    if key in ("Z3", "Z4", "Z5"):
        return group_algebra(*cyclic_group_table(int(key[1])))
    if key == "S3":
        return group_algebra(*symmetric_group_3_table())
    raise ValueError(f"unknown built-in algebra {name!r} (expected one of {', '.join(BUILTIN_ALGEBRAS)})")


def load_group_table(path: str | Path) -> HopfAlgebra:
    """Load a group algebra from a JSON file {"labels": [...], "table": [[...]]}."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "labels" not in doc or "table" not in doc:
        raise ValueError(f"{path}: expected a JSON object with 'labels' and 'table'")
    return group_algebra(doc["labels"], doc["table"])


def resolve_algebra(name: str) -> HopfAlgebra:
    """Resolve a built-in algebra name, or else a path to a group-table file."""
    if name.upper() in BUILTIN_ALGEBRAS:
        return builtin_algebra(name)
    if Path(name).exists():
        return load_group_table(name)
    raise ValueError(f"unknown algebra {name!r}: not a built-in name and not a file")


class AlgebraElement:
    """Complex coefficient vector c^a over the algebra basis."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: HopfAlgebra, coeffs):
        arr = np.array(coeffs, dtype=complex).reshape(-1)
        if arr.shape != (algebra.dim,):
            raise ValueError(f"expected {algebra.dim} coefficients, got {arr.shape}")
        arr.setflags(write=False)
        self.algebra = algebra
        self.coeffs = arr

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _require_same_algebra(self, other)
        return AlgebraElement(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _require_same_algebra(self, other)
        return AlgebraElement(self.algebra, self.coeffs - other.coeffs)

    def __mul__(self, scalar) -> "AlgebraElement":
        return AlgebraElement(self.algebra, self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        terms = " + ".join(
            f"({c:.3g})*{lbl}"
            for c, lbl in zip(self.coeffs, self.algebra.basis_labels)
            if c != 0
        )
        return f"AlgebraElement({terms or '0'})"


def _require_same_algebra(x: AlgebraElement, y: AlgebraElement) -> None:
    if x.algebra is not y.algebra and x.algebra != y.algebra:
        raise ValueError("elements belong to different algebras")


def basis_element(algebra: HopfAlgebra, index: int) -> AlgebraElement:
    coeffs = np.zeros(algebra.dim, dtype=complex)
    coeffs[index] = 1.0
    return AlgebraElement(algebra, coeffs)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Bilinear product: result_c = sum_ab x_a y_b mul[a,b,c]."""
    _require_same_algebra(x, y)
    out = np.einsum("a,b,abc->c", x.coeffs, y.coeffs, x.algebra.mul.array)
    return AlgebraElement(x.algebra, out)


def comultiply(x: AlgebraElement) -> Tensor:
    """Coefficients of the image of x in the tensor-square basis."""
    return Tensor(np.einsum("a,abc->bc", x.coeffs, x.algebra.comul.array))


def counit_value(x: AlgebraElement) -> complex:
    return complex(np.dot(x.algebra.counit.array, x.coeffs))


def antipode_apply(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(x.algebra, np.einsum("a,ab->b", x.coeffs, x.algebra.antipode.array))
