"""Line-oriented textual description of circuits, with a canonical printer.

Grammar ('#' starts a comment, keywords are case-insensitive, one
statement per line):

    circuit   ::= header { layerline }
    header    ::= "algebra" NAME  "in" INT  { unitdef }
    unitdef   ::= "unitary" NAME ( PRESET | MATRIX )
    layerline ::= "layer" prim { "," prim }
    prim      ::= ID | M | DELTA | UNIT | COUNIT | S | SWAP | U(NAME)
    MATRIX    ::= "[" row { ";" row } "]"   row ::= entry { "," entry }

Layers are written in application order: the first layer line acts on the
circuit inputs.  Matrix entries are complex literals written as
"re+imi" pairs, e.g. 0.5-0.5i; presets (two-dimensional algebras only)
are I, X, Y, Z, H, S_PHASE, T and the rotations RX(a), RY(a), RZ(a) with
the angle in radians.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass

import numpy as np

from .algebra import resolve_algebra
from .circuit import (
    ANTIPODE,
    COMUL,
    COUNIT,
    ID,
    MUL,
    SWAP,
    UNIT,
    Circuit,
    CircuitError,
    Primitive,
    unitary,
)

__all__ = [
    "ParseError",
    "UnitaryDef",
    "CircuitDocument",
    "parse_circuit",
    "print_circuit",
    "to_circuit",
    "circuit_to_document",
    "PRESET_NAMES",
    "ROTATION_NAMES",
]

PRESET_NAMES = ("I", "X", "Y", "Z", "H", "S_PHASE", "T")
ROTATION_NAMES = ("RX", "RY", "RZ")

_PRIM_TOKENS = {
    "ID": ID,
    "M": MUL,
    "DELTA": COMUL,
    "UNIT": UNIT,
    "COUNIT": COUNIT,
    "S": ANTIPODE,
    "SWAP": SWAP,
}

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_UREF_RE = re.compile(r"^[Uu]\s*\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*\)$")
_PRESET_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\(([^()]*)\))?$")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class UnitaryDef:
    """Either a named preset (with an angle for rotations) or explicit rows."""

    preset: str | None = None
    angle: float | None = None
    rows: tuple[tuple[complex, ...], ...] | None = None

    def matrix(self) -> np.ndarray:
        if self.rows is not None:
            return np.array(self.rows, dtype=complex)
        return _preset_matrix(self.preset, self.angle)


@dataclass(frozen=True)
class CircuitDocument:
    algebra_name: str
    wires_in: int
    unitaries: tuple[tuple[str, UnitaryDef], ...]
    layers: tuple[tuple[str | tuple[str, str], ...], ...]


_SQRT2_INV = 1.0 / math.sqrt(2.0)


def _preset_matrix(preset: str, angle: float | None) -> np.ndarray:
    if preset == "I":
        return np.eye(2, dtype=complex)
    if preset == "X":
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if preset == "Y":
        return np.array([[0, -1j], [1j, 0]], dtype=complex)
    if preset == "Z":
        return np.array([[1, 0], [0, -1]], dtype=complex)
    if preset == "H":
        return np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV
    if preset == "S_PHASE":
        return np.array([[1, 0], [0, 1j]], dtype=complex)
    if preset == "T":
        return np.array([[1, 0], [0, cmath.exp(1j * math.pi / 4)]], dtype=complex)
    half = angle / 2.0
    if preset == "RX":
        return np.array(
            [[math.cos(half), -1j * math.sin(half)], [-1j * math.sin(half), math.cos(half)]],
            dtype=complex,
        )
    if preset == "RY":
        return np.array(
            [[math.cos(half), -math.sin(half)], [math.sin(half), math.cos(half)]], dtype=complex
        )
    if preset == "RZ":
        return np.array([[cmath.exp(-1j * half), 0], [0, cmath.exp(1j * half)]], dtype=complex)
    raise ValueError(f"unknown preset {preset!r}")


# --- complex literals -------------------------------------------------------

_FLOAT = r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_FULL_RE = re.compile(rf"^(?P<re>{_FLOAT})(?P<im>[+-](?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)i$")
_IMAG_ONLY_RE = re.compile(rf"^(?P<im>{_FLOAT})i$")
_REAL_ONLY_RE = re.compile(rf"^{_FLOAT}$")


def _parse_complex(token: str) -> complex:
    token = token.replace(" ", "")
    m = _COMPLEX_FULL_RE.match(token)
    if m:
        return complex(float(m.group("re")), float(m.group("im")))
    m = _IMAG_ONLY_RE.match(token)
    if m:
        return complex(0.0, float(m.group("im")))
    if _REAL_ONLY_RE.match(token):
        return complex(float(token), 0.0)
    raise ValueError(f"bad complex literal {token!r} (expected forms: 1.5, 2i, 1.5-0.5i)")


def _format_complex(z: complex) -> str:
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _parse_matrix(text: str, line: int, column: int) -> tuple[tuple[complex, ...], ...]:
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("matrix literal must be enclosed in [ ]", line, column)
    rows = []
    for row_text in body[1:-1].split(";"):
        entries = []
        for entry_text in row_text.split(","):
            try:
                entries.append(_parse_complex(entry_text.strip()))
            except ValueError as exc:
                raise ParseError(str(exc), line, column) from None
        rows.append(tuple(entries))
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("matrix rows have unequal lengths", line, column)
    if any(not (cmath.isfinite(e)) for r in rows for e in r):
        raise ParseError("matrix entries must be finite", line, column)
    return tuple(rows)


# --- parsing ----------------------------------------------------------------

def _split_statement(raw: str) -> tuple[str, str, int] | None:
    """Strip comment; return (keyword lowercased, rest of line, column of rest)."""
    hash_pos = raw.find("#")
    line = raw if hash_pos < 0 else raw[:hash_pos]
    if not line.strip():
        return None
    match = re.match(r"^(\s*)(\S+)(\s*)", line)
    keyword = match.group(2)
    rest_col = match.end() + 1
    return keyword.lower(), line[match.end():].strip(), rest_col


def parse_circuit(text: str) -> CircuitDocument:
    """Parse DSL source into a document; raises ParseError with line/column."""
    algebra_name: str | None = None
    wires_in: int | None = None
    unitaries: list[tuple[str, UnitaryDef]] = []
    unitary_names: set[str] = set()
    layers: list[tuple[str | tuple[str, str], ...]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stmt = _split_statement(raw)
        if stmt is None:
            continue
        keyword, rest, rest_col = stmt

        if keyword == "algebra":
            if algebra_name is not None:
                raise ParseError("duplicate algebra line", lineno, 1)
            if wires_in is not None or unitaries or layers:
                raise ParseError("algebra must be the first statement", lineno, 1)
            if not rest or len(rest.split()) != 1:
                raise ParseError("expected a single algebra name", lineno, rest_col)
            algebra_name = rest
        elif keyword == "in":
            if algebra_name is None:
                raise ParseError("'in' must follow the algebra line", lineno, 1)
            if wires_in is not None:
                raise ParseError("duplicate 'in' line", lineno, 1)
            try:
                wires_in = int(rest)
            except ValueError:
                raise ParseError(f"expected an integer wire count, got {rest!r}", lineno, rest_col) from None
            if wires_in < 0:
                raise ParseError("wire count must be nonnegative", lineno, rest_col)
        elif keyword == "unitary":
            if wires_in is None:
                raise ParseError("unitary definitions must follow the header", lineno, 1)
            if layers:
                raise ParseError("unitary definitions must precede layers", lineno, 1)
            parts = rest.split(None, 1)
            if len(parts) != 2:
                raise ParseError("expected: unitary NAME (PRESET | [matrix])", lineno, rest_col)
            name, definition = parts
            if not _NAME_RE.match(name):
                raise ParseError(f"bad unitary name {name!r}", lineno, rest_col)
            if name in unitary_names:
                raise ParseError(f"duplicate unitary definition {name!r}", lineno, rest_col)
            def_col = rest_col + rest.find(definition)
            unitaries.append((name, _parse_unitary_def(definition, lineno, def_col)))
            unitary_names.add(name)
        elif keyword == "layer":
            if wires_in is None:
                raise ParseError("layers must follow the header", lineno, 1)
            layers.append(_parse_layer(rest, rest_col, lineno, unitary_names))
        else:
            col = raw.lower().find(keyword) + 1
            raise ParseError(f"unknown statement {keyword!r}", lineno, col)

    if algebra_name is None:
        raise ParseError("missing algebra line", max(1, text.count("\n") + 1), 1)
    if wires_in is None:
        raise ParseError("missing 'in' line", max(1, text.count("\n") + 1), 1)
    return CircuitDocument(
        algebra_name=algebra_name,
        wires_in=wires_in,
        unitaries=tuple(unitaries),
        layers=tuple(layers),
    )


def _parse_unitary_def(definition: str, lineno: int, column: int) -> UnitaryDef:
    if definition.startswith("["):
        return UnitaryDef(rows=_parse_matrix(definition, lineno, column))
    m = _PRESET_RE.match(definition)
    if not m:
        raise ParseError(f"bad unitary definition {definition!r}", lineno, column)
    preset = m.group(1).upper()
    arg = m.group(2)
    if preset in PRESET_NAMES:
        if arg is not None:
            raise ParseError(f"preset {preset} takes no angle", lineno, column)
        return UnitaryDef(preset=preset)
    if preset in ROTATION_NAMES:
        if arg is None:
            raise ParseError(f"rotation {preset} needs an angle in radians", lineno, column)
        try:
            angle = float(arg)
        except ValueError:
            raise ParseError(f"bad angle {arg!r}", lineno, column) from None
        if not math.isfinite(angle):
            raise ParseError("angle must be finite", lineno, column)
        return UnitaryDef(preset=preset, angle=angle)
    raise ParseError(
        f"unknown preset {preset!r} (known: {', '.join(PRESET_NAMES + ROTATION_NAMES)})",
        lineno,
        column,
    )


def _parse_layer(
    rest: str, rest_col: int, lineno: int, unitary_names: set[str]
) -> tuple[str | tuple[str, str], ...]:
    if not rest:
        raise ParseError("empty layer", lineno, rest_col)
    tokens: list[str | tuple[str, str]] = []
    offset = 0
    for piece in rest.split(","):
        token = piece.strip()
        column = rest_col + offset + piece.find(token) if token else rest_col + offset
        offset += len(piece) + 1
        if not token:
            raise ParseError("empty primitive between commas", lineno, column)
        uref = _UREF_RE.match(token)
        if uref:
            name = uref.group(1)
            if name not in unitary_names:
                raise ParseError(f"unknown unitary name {name!r}", lineno, column)
            tokens.append(("U", name))
        elif token.upper() in _PRIM_TOKENS:
            tokens.append(token.upper())
        else:
            raise ParseError(f"unknown primitive {token!r}", lineno, column)
    return tuple(tokens)


# --- printing ---------------------------------------------------------------

def print_circuit(doc: CircuitDocument) -> str:
    """Canonical text form; parse_circuit(print_circuit(doc)) == doc."""
    lines = [f"algebra {doc.algebra_name}", f"in {doc.wires_in}"]
    for name, udef in doc.unitaries:
        lines.append(f"unitary {name} {_format_unitary_def(udef)}")
    for layer in doc.layers:
        rendered = ", ".join(t if isinstance(t, str) else f"U({t[1]})" for t in layer)
        lines.append(f"layer {rendered}")
    return "\n".join(lines) + "\n"


def _format_unitary_def(udef: UnitaryDef) -> str:
    if udef.rows is not None:
        rows = "; ".join(", ".join(_format_complex(e) for e in row) for row in udef.rows)
        return f"[{rows}]"
    if udef.angle is not None:
        return f"{udef.preset}({udef.angle!r})"
    return udef.preset


# --- bridging to the engine ---------------------------------------------------

def to_circuit(doc: CircuitDocument) -> Circuit:
    """Resolve the algebra and primitives of a document into a Circuit."""
    algebra = resolve_algebra(doc.algebra_name)
    prims: dict[str, Primitive] = {}
    for name, udef in doc.unitaries:
        if udef.preset is not None and algebra.dim != 2:
            raise CircuitError(
                f"preset {udef.preset} defines a 2x2 matrix but algebra "
                f"{doc.algebra_name!r} has dimension {algebra.dim}"
            )
        prims[name] = unitary(name, udef.matrix())
    layers = tuple(
        tuple(_PRIM_TOKENS[t] if isinstance(t, str) else prims[t[1]] for t in layer)
        for layer in doc.layers
    )
    return Circuit(algebra, wires_in=doc.wires_in, layers=layers)


_TOKEN_BY_KIND = {
    "Id": "ID",
    "Mul": "M",
    "Comul": "DELTA",
    "Unit": "UNIT",
    "Counit": "COUNIT",
    "Antipode": "S",
    "Swap": "SWAP",
}


def circuit_to_document(circuit: Circuit, algebra_name: str) -> CircuitDocument:
    """Render a programmatic circuit as a document with u0, u1, ... unitaries."""
    defs: list[tuple[str, UnitaryDef]] = []
    seen: dict[bytes, str] = {}
    layers: list[tuple[str | tuple[str, str], ...]] = []
    for layer in circuit.layers:
        tokens: list[str | tuple[str, str]] = []
        for prim in layer:
            if prim.kind != "Unitary":
                tokens.append(_TOKEN_BY_KIND[prim.kind])
                continue
            key = prim.matrix.tobytes()
            if key not in seen:
                name = f"u{len(defs)}"
                rows = tuple(tuple(complex(e) for e in row) for row in prim.matrix)
                defs.append((name, UnitaryDef(rows=rows)))
                seen[key] = name
            tokens.append(("U", seen[key]))
        layers.append(tuple(tokens))
    return CircuitDocument(
        algebra_name=algebra_name,
        wires_in=circuit.wires_in,
        unitaries=tuple(defs),
        layers=tuple(layers),
    )
