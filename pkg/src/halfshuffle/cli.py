"""Command-line interface: transforms, verification suites, partition oracles.

All numeric I/O is exact: rationals are read and written as integer strings
or ``"p/q"`` strings, never as floats.  Exit codes: 0 success, 1 verification
failure, 2 input error, 3 guard violation.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import transforms
from .partitions import (
    MAX_GROUND_SET,
    enumerate_nc,
    enumerate_partitions,
)
from .suites import SUITES, run_suites
from .words import (
    Alphabet,
    GuardError,
    Word,
    bar_basis_count,
    words_up_to,
)

__all__ = ["main", "build_parser", "parse_rational", "format_rational"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_GUARD = 3

MAX_UNIVARIATE_ORDER = 10
MAX_BAR_BASIS = 5000
MAX_VERIFY_ORDER = 8

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


class InputError(ValueError):
    """Malformed or inconsistent command input."""


def parse_rational(value) -> Fraction:
    """Exact rational from an int or a decimal-free ``"p/q"`` string."""
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value.strip()):
        return Fraction(value.strip())
    raise InputError(f"not a rational: {value!r} (use integers or 'p/q' strings)")


def format_rational(value: Fraction) -> str:
    return str(value)


def _load_document(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    return doc


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _json_dumps(document) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# transform
# ---------------------------------------------------------------------------

_SEQUENCE_KEYS = {
    ("free", "moments-to-cumulants"): ("moments", "cumulants"),
    ("free", "cumulants-to-moments"): ("cumulants", "moments"),
    ("classical", "moments-to-cumulants"): ("moments", "cumulants"),
    ("classical", "cumulants-to-moments"): ("cumulants", "moments"),
}
_TABLE_KEYS = {
    "moments-to-cumulants": ("phi", "kappa"),
    "cumulants-to-moments": ("kappa", "phi"),
}


def _pick(config_value, doc, key, what):
    value = config_value if config_value is not None else doc.get(key)
    if value is None:
        raise InputError(f"missing {what}: pass --{key} or include {key!r} in the input")
    return value


def _univariate_transform(mode, direction, values, order):
    in_key, out_key = _SEQUENCE_KEYS[(mode, direction)]
    seq = [parse_rational(v) for v in values]
    if not seq:
        raise InputError(f"{in_key} list must be nonempty")
    if order is None:
        order = len(seq)
    if order < 1 or order > len(seq):
        raise InputError(f"order {order} inconsistent with {len(seq)} input values")
    if order > MAX_UNIVARIATE_ORDER:
        raise GuardError(f"order {order} exceeds the univariate guard {MAX_UNIVARIATE_ORDER}")
    seq = seq[:order]
    if direction == "moments-to-cumulants":
        spec = transforms.MomentSpec.univariate(seq)
        out = (
            transforms.free_cumulants_from_moments(spec)
            if mode == "free"
            else transforms.classical_cumulants_from_moments(spec)
        )
    else:
        spec = transforms.CumulantSpec.univariate(seq)
        out = (
            transforms.moments_from_free_cumulants(spec)
            if mode == "free"
            else transforms.classical_moments_from_cumulants(spec)
        )
    return out_key, [format_rational(v) for v in out.sequence()]


def _multivariate_transform(mode, direction, doc, order):
    if mode == "classical":
        raise InputError("classical transforms take univariate input only")
    in_key, out_key = _TABLE_KEYS[direction]
    names = doc.get("alphabet")
    if not isinstance(names, list) or not names:
        raise InputError("multivariate input needs a nonempty 'alphabet' list")
    try:
        alphabet = Alphabet(tuple(names))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    table_doc = doc.get(in_key)
    if not isinstance(table_doc, dict) or not table_doc:
        raise InputError(f"multivariate input needs a nonempty {in_key!r} table")
    if order is None:
        order = doc.get("order")
    if not isinstance(order, int) or order < 1:
        raise InputError("multivariate input needs a positive integer 'order'")
    if bar_basis_count(alphabet.size, order) > MAX_BAR_BASIS:
        raise GuardError(
            f"alphabet size {alphabet.size} at order {order} exceeds the "
            f"transform guard (bar basis > {MAX_BAR_BASIS})"
        )
    table = {}
    for text, value in table_doc.items():
        try:
            word = alphabet.word(text)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        if word.degree == 0:
            raise InputError("table keys must be nonempty words")
        table[word] = parse_rational(value)
    try:
        if direction == "moments-to-cumulants":
            spec = transforms.MomentSpec(alphabet, order, table)
            out = transforms.multivariate_free_cumulants(spec)
        else:
            spec = transforms.CumulantSpec(alphabet, order, table)
            out = transforms.moments_from_free_cumulants(spec)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    rendered = {
        alphabet.format_word(w): format_rational(out.table[w])
        for w in words_up_to(order, alphabet.size)
    }
    return out_key, rendered


def cmd_transform(args) -> int:
    doc = _load_document(args.input)
    mode = _pick(args.mode, doc, "mode", "transform mode")
    if mode not in ("free", "classical"):
        raise InputError(f"mode must be 'free' or 'classical', got {mode!r}")
    direction = _pick(args.direction, doc, "direction", "transform direction")
    if direction not in ("moments-to-cumulants", "cumulants-to-moments"):
        raise InputError(
            "direction must be 'moments-to-cumulants' or 'cumulants-to-moments', "
            f"got {direction!r}"
        )
    order = args.order if args.order is not None else doc.get("order")
    if order is not None and (not isinstance(order, int) or order < 1):
        raise InputError(f"order must be a positive integer, got {order!r}")

    multivariate = "alphabet" in doc or "phi" in doc or "kappa" in doc
    if multivariate:
        out_key, payload = _multivariate_transform(mode, direction, doc, order)
        order_out = order if order is not None else doc.get("order")
    else:
        in_key, _ = _SEQUENCE_KEYS[(mode, direction)]
        values = doc.get(in_key)
        if values is None:
            raise InputError(f"input document has no {in_key!r} entry")
        if not isinstance(values, list):
            raise InputError(f"{in_key!r} must be a list")
        out_key, payload = _univariate_transform(mode, direction, values, order)
        order_out = len(payload)

    document = {
        "command": "transform",
        "mode": mode,
        "direction": direction,
        "order": order_out,
        "input": doc,
        "output": {out_key: payload},
    }
    if args.format == "json":
        _emit(args, _json_dumps(document))
    else:
        lines = [f"# mode={mode} direction={direction} order={order_out}"]
        if isinstance(payload, list):
            lines += [f"{i}\t{v}" for i, v in enumerate(payload, start=1)]
        else:
            lines += [f"{k}\t{v}" for k, v in payload.items()]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    if not 1 <= args.order <= MAX_VERIFY_ORDER:
        raise GuardError(f"verify order must be in 1..{MAX_VERIFY_ORDER}, got {args.order}")
    names = [args.suite] if args.suite else list(SUITES)
    try:
        reports = run_suites(names, args.order, args.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    all_ok = all(r.ok for r in reports)
    if args.format == "json":
        document = {
            "command": "verify",
            "order": args.order,
            "seed": args.seed,
            "ok": all_ok,
            "suites": [
                {
                    "name": r.name,
                    "ok": r.ok,
                    "checked": r.checked,
                    "failures": r.failures,
                }
                for r in reports
            ],
        }
        _emit(args, _json_dumps(document))
    else:
        lines = [r.summary() for r in reports]
        lines.append(f"{'PASS' if all_ok else 'FAIL'}  overall ({len(reports)} suites)")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if all_ok else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------


def cmd_oracle(args) -> int:
    if not 1 <= args.n <= MAX_GROUND_SET:
        raise GuardError(f"ground set size must be in 1..{MAX_GROUND_SET}, got {args.n}")
    parts = enumerate_nc(args.n) if args.family == "nc" else enumerate_partitions(args.n)
    values = None
    if args.values:
        raw = [v for v in args.values.split(",") if v.strip()]
        values = [parse_rational(v) for v in raw]
        if len(values) < args.n:
            raise InputError(f"need at least {args.n} values, got {len(values)}")
    if args.format == "json":
        document = {
            "command": "oracle",
            "family": args.family,
            "n": args.n,
            "count": len(parts),
            "partitions": [[list(block) for block in p.blocks] for p in parts],
        }
        if values is not None:
            total = sum(
                _block_product(p, values) for p in parts
            )
            document["total"] = format_rational(total)
        _emit(args, _json_dumps(document))
        return EXIT_OK
    lines = []
    total = Fraction(0)
    for p in parts:
        if values is None:
            lines.append(str(p))
        else:
            product = _block_product(p, values)
            total += product
            lines.append(f"{p}\t{format_rational(product)}")
    if values is not None:
        lines.append(f"total\t{format_rational(total)}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _block_product(partition, values):
    product = Fraction(1)
    for block in partition.blocks:
        product *= values[len(block) - 1]
    return product


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="halfshuffle",
        description=(
            "Exact-rational moment/cumulant transforms through half-shuffle "
            "fixed point equations, with partition oracles and structural "
            "verification suites."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_tr = sub.add_parser("transform", help="run a moment/cumulant transform")
    p_tr.add_argument("--mode", choices=("free", "classical"))
    p_tr.add_argument(
        "--direction", choices=("moments-to-cumulants", "cumulants-to-moments")
    )
    p_tr.add_argument("-n", "--order", type=int)
    p_tr.add_argument("-i", "--input", default="-", help="JSON file or '-' for stdin")
    p_tr.add_argument("-o", "--output", help="write to a file instead of stdout")
    p_tr.add_argument("--format", choices=("json", "table"), default="json")
    p_tr.set_defaults(func=cmd_transform)

    p_ver = sub.add_parser("verify", help="run the structural verification suites")
    p_ver.add_argument("-n", "--order", type=int, default=5)
    p_ver.add_argument("--seed", type=int, default=1)
    p_ver.add_argument("--suite", help="run a single suite (default: all)")
    p_ver.add_argument("-o", "--output")
    p_ver.add_argument("--format", choices=("json", "table"), default="table")
    p_ver.set_defaults(func=cmd_verify)

    p_or = sub.add_parser("oracle", help="list partitions and partition sums")
    p_or.add_argument("family", choices=("nc", "all"))
    p_or.add_argument("n", type=int)
    p_or.add_argument(
        "--values",
        help="comma-separated rationals indexed by block size; prints block products",
    )
    p_or.add_argument("-o", "--output")
    p_or.add_argument("--format", choices=("json", "table"), default="table")
    p_or.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardError as exc:
        print(f"guard violation: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
