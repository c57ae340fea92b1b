"""Command-line front end: axiom checking, evaluation, compilation, sampling.

Basis convention, used by every command: wire 0 is the leftmost tensor
factor and the most significant (slowest-varying) digit of basis labels,
so on two qubits the basis order is 00, 01, 10, 11.

Exit codes: 0 success, 1 usage, 2 parse/validate, 3 numeric failure,
4 annihilated state.  Failures print one line "error: <category>: <detail>"
to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .algebra import GroupTableError, check_axioms, resolve_algebra
from .circuit import (
    AnnihilatedStateError,
    CircuitError,
    Cnot,
    U1,
    apply,
    basis_label,
    basis_state,
    compile_gate_circuit,
    direct_gate_map,
    evaluate,
    evaluate_bruteforce,
    index_to_digits,
    is_unitary,
    measure,
)
from .dsl import ParseError, _format_complex, circuit_to_document, parse_circuit, print_circuit, to_circuit

__all__ = ["cli_run", "main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_NUMERIC = 3
EXIT_ANNIHILATED = 4

ORACLE_TOL = 1e-12
COMPILE_TOL = 1e-10

_BASIS_NOTE = (
    "Basis convention: wire 0 is the leftmost tensor factor and the most "
    "significant (slowest-varying) digit of every basis label and matrix "
    "index; on two qubits the basis order is 00, 01, 10, 11.  Layers in a "
    "circuit file are written in application order (first line acts first)."
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); we want exit 1
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="hopfcirc",
        description="Circuits as compositions of Hopf-algebra structure maps. " + _BASIS_NOTE,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-axioms", help="verify the Hopf axioms of an algebra")
    p.add_argument("--algebra", required=True, help="built-in name (Z2..Z5, S3) or group-table JSON path")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--json", action="store_true", help="print only the JSON report")
    p.set_defaults(func=_cmd_check_axioms)

    p = sub.add_parser("eval", help="apply a circuit file to a basis input")
    p.add_argument("file")
    p.add_argument("--input", required=True, help="basis digits, e.g. 10 (or comma-separated for d>10)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("matrix", help="print the full linear map of a circuit file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_matrix)

    p = sub.add_parser("compile", help="compile a JSON gate list to circuit text")
    p.add_argument("--wires", type=int, required=True)
    p.add_argument("--gates", required=True, help="JSON gate list file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_compile)

    p = sub.add_parser("sample", help="draw shots from a circuit's exact output distribution")
    p.add_argument("file")
    p.add_argument("--input", required=True)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, required=True, help="seed for the NumPy PCG64 generator")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("oracle-check", help="compare dense evaluation against the brute-force evaluator")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_oracle_check)

    return parser


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _load_circuit(path: str):
    text = Path(path).read_text(encoding="utf-8")
    return to_circuit(parse_circuit(text))


def _parse_input_digits(text: str, d: int, wires: int) -> list[int]:
    try:
        if "," in text:
            digits = [int(tok) for tok in text.split(",")]
        else:
            digits = [int(ch) for ch in text]
    except ValueError:
        raise ValueError(f"bad input string {text!r}: expected base-{d} digits") from None
    if len(digits) != wires:
        raise ValueError(f"input {text!r} has {len(digits)} digits, circuit consumes {wires} wires")
    for dgt in digits:
        if not 0 <= dgt < d:
            raise ValueError(f"input digit {dgt} out of range for dimension {d}")
    return digits


# --- subcommands -------------------------------------------------------------

def _cmd_check_axioms(args) -> int:
    algebra = resolve_algebra(args.algebra)
    if args.tol < 0:
        raise ValueError("tolerance must be nonnegative")
    report = check_axioms(algebra, args.tol)
    payload = {"algebra": args.algebra, "dim": algebra.dim, **report.as_dict()}
    if not args.json:
        print(f"algebra {args.algebra} (dim {algebra.dim}), tol {args.tol!r}")
        width = max(len(c.name) for c in report.checks)
        print(f"{'axiom'.ljust(width)}  {'deviation':<12}  pass")
        for c in report.checks:
            print(f"{c.name.ljust(width)}  {c.deviation!r:<12}  {'yes' if c.passed else 'NO'}")
        print(
            f"info: commutative={'yes' if report.commutative else 'no'} "
            f"cocommutative={'yes' if report.cocommutative else 'no'}"
        )
        print(f"overall: {'PASS' if report.passed else 'FAIL'}")
    print(_dump_json(payload))
    return EXIT_OK if report.passed else EXIT_NUMERIC


def _format_vector(vec: np.ndarray, d: int, wires: int) -> list[str]:
    lines = []
    for i, z in enumerate(vec):
        if z != 0:
            lines.append(f"  {basis_label(index_to_digits(i, d, wires), d)}  {_format_complex(complex(z))}")
    if not lines:
        lines.append("  (zero vector)")
    return lines


def _cmd_eval(args) -> int:
    circuit = _load_circuit(args.file)
    d = circuit.algebra.dim
    linmap = evaluate(circuit)
    digits = _parse_input_digits(args.input, d, linmap.wires_in)
    out = apply(linmap, basis_state(d, digits))
    unitary = is_unitary(linmap)
    distribution = None
    if args.json or not unitary:
        distribution = measure(out, d)

    if args.json:
        payload = {
            "input": args.input,
            "d": d,
            "wires_in": linmap.wires_in,
            "wires_out": linmap.wires_out,
            "unitary": unitary,
            "vector": {"re": [float(z.real) for z in out], "im": [float(z.imag) for z in out]},
            "distribution": distribution.as_dict(),
        }
        print(_dump_json(payload))
        return EXIT_OK

    print(f"input {args.input}")
    print(f"map: {linmap.wires_in} -> {linmap.wires_out} wires (d={d}), "
          f"{'unitary' if unitary else 'not unitary'}")
    print("output vector:")
    for line in _format_vector(out, d, linmap.wires_out):
        print(line)
    if distribution is not None:
        print(f"distribution (norm_in={distribution.norm_in!r}):")
        for label, prob in distribution.entries:
            print(f"  {label}  {prob!r}")
    return EXIT_OK


def _cmd_matrix(args) -> int:
    circuit = _load_circuit(args.file)
    linmap = evaluate(circuit)
    if args.json:
        print(_dump_json(linmap.to_json()))
        return EXIT_OK
    rows, cols = linmap.matrix.dims
    print(f"map: {linmap.wires_in} -> {linmap.wires_out} wires (d={linmap.base_dim}), "
          f"matrix {rows}x{cols}")
    for row in linmap.matrix.array:
        print("  " + "  ".join(_format_complex(complex(z)) for z in row))
    return EXIT_OK


def _matrix_from_json(obj, where: str) -> np.ndarray:
    if not isinstance(obj, dict) or "re" not in obj:
        raise ValueError(f"{where}: matrix must be an object with 're' (and optional 'im') rows")
    re_part = np.array(obj["re"], dtype=float)
    im_part = np.array(obj.get("im", np.zeros_like(re_part)), dtype=float)
    if re_part.shape != im_part.shape or re_part.ndim != 2:
        raise ValueError(f"{where}: 're' and 'im' must be equal-shaped 2-d arrays")
    return re_part + 1j * im_part


def _load_gates(path: str) -> list[Cnot | U1]:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, list):
        raise ValueError(f"{path}: gate list must be a JSON array")
    gates: list[Cnot | U1] = []
    for i, item in enumerate(doc):
        where = f"{path}: gate {i}"
        if not isinstance(item, dict) or len(item) != 1:
            raise ValueError(f"{where}: expected an object with exactly one of 'cnot' or 'u1'")
        if "cnot" in item:
            pair = item["cnot"]
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ValueError(f"{where}: 'cnot' must be [control, target]")
            gates.append(Cnot(int(pair[0]), int(pair[1])))
        elif "u1" in item:
            spec = item["u1"]
            if not isinstance(spec, dict) or "wire" not in spec or "matrix" not in spec:
                raise ValueError(f"{where}: 'u1' needs 'wire' and 'matrix'")
            gates.append(
                U1(
                    wire=int(spec["wire"]),
                    matrix=_matrix_from_json(spec["matrix"], where),
                    name=str(spec.get("name", "u")),
                )
            )
        else:
            raise ValueError(f"{where}: unknown gate kind {list(item)!r}")
    return gates


def _cmd_compile(args) -> int:
    algebra = resolve_algebra("Z2")
    gates = _load_gates(args.gates)
    circuit = compile_gate_circuit(algebra, args.wires, gates)
    text = print_circuit(circuit_to_document(circuit, "Z2"))
    compiled = evaluate(circuit)
    direct = direct_gate_map(algebra, args.wires, gates)
    deviation = float(np.max(np.abs(compiled.matrix.array - direct.matrix.array)))
    if args.json:
        payload = {
            "wires": args.wires,
            "gates": len(gates),
            "circuit": text,
            "max_deviation": deviation,
        }
        print(_dump_json(payload))
    else:
        print(text, end="")
        print(f"max deviation: {deviation!r}")
    return EXIT_OK if deviation <= COMPILE_TOL else EXIT_NUMERIC


def _cmd_sample(args) -> int:
    if args.shots < 1:
        raise ValueError("shots must be positive")
    circuit = _load_circuit(args.file)
    d = circuit.algebra.dim
    linmap = evaluate(circuit)
    digits = _parse_input_digits(args.input, d, linmap.wires_in)
    out = apply(linmap, basis_state(d, digits))
    distribution = measure(out, d)
    labels = [lbl for lbl, _ in distribution.entries]
    probs = np.array([p for _, p in distribution.entries])
    rng = np.random.default_rng(args.seed)
    draws = rng.choice(len(labels), size=args.shots, p=probs / probs.sum())
    counts: dict[str, int] = {lbl: 0 for lbl in labels}
    for k in draws:
        counts[labels[k]] += 1
    counts = {lbl: n for lbl, n in sorted(counts.items()) if n > 0}
    if args.json:
        print(_dump_json({"input": args.input, "shots": args.shots, "seed": args.seed, "counts": counts}))
    else:
        print(f"input {args.input} shots {args.shots} seed {args.seed}")
        for lbl, n in counts.items():
            print(f"  {lbl} {n}")
    return EXIT_OK


def _cmd_oracle_check(args) -> int:
    circuit = _load_circuit(args.file)
    d = circuit.algebra.dim
    linmap = evaluate(circuit)
    n_inputs = d**linmap.wires_in
    deviation = 0.0
    for idx in range(n_inputs):
        column = evaluate_bruteforce(circuit, idx)
        deviation = max(deviation, float(np.max(np.abs(column - linmap.matrix.array[:, idx]))))
    passed = deviation <= ORACLE_TOL
    if args.json:
        print(_dump_json({"inputs": n_inputs, "max_deviation": deviation, "passed": passed}))
    else:
        print(f"inputs checked: {n_inputs}")
        print(f"max deviation: {deviation!r}")
        print(f"oracle check: {'PASS' if passed else 'FAIL'}")
    return EXIT_OK if passed else EXIT_NUMERIC


# --- driver -------------------------------------------------------------------

def cli_run(argv: list[str] | None = None) -> int:
    """Run one command; returns the exit status instead of exiting."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AnnihilatedStateError as exc:
        print(f"error: annihilated: {exc}", file=sys.stderr)
        return EXIT_ANNIHILATED
    except (CircuitError, GroupTableError) as exc:
        print(f"error: validate: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: validate: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main() -> None:
    sys.exit(cli_run(sys.argv[1:]))


if __name__ == "__main__":
    main()
