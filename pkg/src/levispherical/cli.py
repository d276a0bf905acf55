"""Command-line interface.

Every subcommand takes --type (e.g. A5, D4, e6; case-insensitive) and emits
a single JSON document on stdout, except census, which streams JSON lines
(records, then a summary, then a cross-check report if a battery was given).
Diagnostics go to stderr only.  --pretty switches to a human-readable
rendering.

Words and node subsets are whitespace- or comma-separated 1-based indices
("3 2 3 4 2 1 2" or "2,3"); weights are coordinate vectors in the
fundamental-weight basis.

Exit codes: 0 success, 1 domain error (bad type, letter out of range, levi
set not inside the descent set, non-dominant weight, ...), 2 usage error,
3 budget exhaustion (enumeration cap, character term ceiling, or a witness
search that ends without a verdict).

Budget defaults can be overridden by environment variables:
LEVISPHERICAL_ENUM_CAP, LEVISPHERICAL_WITNESS_CAP,
LEVISPHERICAL_WITNESS_LAMBDA_BUDGET, LEVISPHERICAL_WITNESS_TERM_CEILING.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Optional, Sequence

from . import census as census_mod
from . import characters as chars_mod
from .characters import (
    CharacterBudgetExceeded,
    DEFAULT_LAMBDA_BUDGET,
    DEFAULT_TERM_CEILING,
    DEFAULT_WITNESS_CAP,
    decomposition_to_json,
    decompose_levi,
    demazure_char,
    is_multiplicity_free,
    witness_search,
)
from .rootsys import RootSystemSpec, build_root_system
from .sphericality import classify, classify_toric
from .weyl import (
    DEFAULT_ENUM_CAP,
    CapExceeded,
    from_word,
    left_descents,
    reduced_word,
)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"environment variable {name}={raw!r} is not an integer")


def _parse_indices(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    parts = [p for p in re.split(r"[,\s]+", text) if p]
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"cannot parse index list from {text!r}")


def _parse_weight(spec: RootSystemSpec, text: str) -> tuple[int, ...]:
    vec = _parse_indices(text)
    if len(vec) != spec.rank:
        raise ValueError(
            f"weight {text!r} has {len(vec)} coordinates, expected {spec.rank}"
        )
    return vec


def _parse_battery(spec: RootSystemSpec, text: str) -> list[tuple[int, ...]]:
    """Semicolon-separated weights; 'fundamentals' and 'rho' are shorthands."""
    out: list[tuple[int, ...]] = []
    for part in text.split(";"):
        token = part.strip().lower()
        if not token:
            continue
        if token == "fundamentals":
            for i in range(spec.rank):
                out.append(tuple(int(j == i) for j in range(spec.rank)))
        elif token == "rho":
            out.append((1,) * spec.rank)
        else:
            out.append(_parse_weight(spec, part))
    return out


def _parse_levi(spec: RootSystemSpec, text: str, w) -> tuple[int, ...]:
    if text.strip().lower() == "descents":
        return tuple(sorted(left_descents(spec, w)))
    return _parse_indices(text)


def _emit(obj, pretty: bool) -> None:
    if pretty:
        _pretty_print(obj)
    else:
        print(json.dumps(obj))


def _pretty_print(obj) -> None:
    if isinstance(obj, dict):
        width = max((len(str(k)) for k in obj), default=0)
        for k, v in obj.items():
            print(f"{str(k):<{width}}  {json.dumps(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                print("  ".join(f"{k}={json.dumps(v)}" for k, v in item.items()))
            else:
                print(json.dumps(item))
    else:
        print(json.dumps(obj))


def _cmd_classify(args) -> int:
    spec = build_root_system(args.type)
    w = from_word(spec, _parse_indices(args.word))
    levi = _parse_levi(spec, args.levi, w)
    result = classify(spec, w, levi)
    _emit(result.to_json_dict(), args.pretty)
    return 0


def _cmd_toric(args) -> int:
    spec = build_root_system(args.type)
    w = from_word(spec, _parse_indices(args.word))
    _emit(
        {
            "type": str(spec.cartan_type),
            "w_word": list(reduced_word(spec, w)),
            "toric": classify_toric(spec, w),
        },
        args.pretty,
    )
    return 0


def _cmd_descents(args) -> int:
    spec = build_root_system(args.type)
    w = from_word(spec, _parse_indices(args.word))
    _emit(
        {
            "type": str(spec.cartan_type),
            "w_word": list(reduced_word(spec, w)),
            "descents": sorted(left_descents(spec, w)),
        },
        args.pretty,
    )
    return 0


def _cmd_demazure(args) -> int:
    spec = build_root_system(args.type)
    w = from_word(spec, _parse_indices(args.word))
    lam = _parse_weight(spec, args.weight)
    char = demazure_char(spec, lam, w)
    if args.pretty:
        for entry in char.to_json_obj():
            print(f"{entry['weight']}  {entry['coeff']}")
        print(f"mass {char.mass()}  terms {len(char)}")
    else:
        print(json.dumps(char.to_json_obj()))
    return 0


def _cmd_decompose(args) -> int:
    spec = build_root_system(args.type)
    w = from_word(spec, _parse_indices(args.word))
    lam = _parse_weight(spec, args.weight)
    levi = _parse_levi(spec, args.levi, w)
    entries = decompose_levi(spec, demazure_char(spec, lam, w), levi)
    _emit(decomposition_to_json(entries), args.pretty)
    return 0


def _cmd_mf_check(args) -> int:
    spec = build_root_system(args.type)
    w = from_word(spec, _parse_indices(args.word))
    lam = _parse_weight(spec, args.weight)
    levi = _parse_levi(spec, args.levi, w)
    chk = is_multiplicity_free(spec, lam, w, levi)
    _emit(
        {
            "type": str(spec.cartan_type),
            "weight": list(lam),
            "w_word": list(reduced_word(spec, w)),
            "levi": list(levi),
            "multiplicity_free": chk.multiplicity_free,
            "witness_mu": None if chk.witness is None else list(chk.witness),
            "multiplicity": chk.multiplicity,
        },
        args.pretty,
    )
    return 0


def _cmd_witness(args) -> int:
    spec = build_root_system(args.type)
    w = from_word(spec, _parse_indices(args.word))
    levi = _parse_levi(spec, args.levi, w)
    cap = args.cap if args.cap is not None else _env_int(
        "LEVISPHERICAL_WITNESS_CAP", DEFAULT_WITNESS_CAP
    )
    budget = _env_int("LEVISPHERICAL_WITNESS_LAMBDA_BUDGET", DEFAULT_LAMBDA_BUDGET)
    ceiling = _env_int("LEVISPHERICAL_WITNESS_TERM_CEILING", DEFAULT_TERM_CEILING)
    found = witness_search(
        spec, w, levi, cap, lambda_budget=budget, term_ceiling=ceiling
    )
    if found is None:
        _emit(
            {"found": False, "coeff_cap": cap, "lambda_budget": budget},
            args.pretty,
        )
        print(
            f"no witness with coordinates <= {cap}; inconclusive",
            file=sys.stderr,
        )
        return 3
    _emit(
        {
            "found": True,
            "lambda": list(found.lam),
            "mu": list(found.mu),
            "multiplicity": found.multiplicity,
        },
        args.pretty,
    )
    return 0


def _cmd_census(args) -> int:
    spec = build_root_system(args.type)
    mode_token = (args.levi or "all").strip().lower()
    try:
        levi_mode = {"all": "all-subsets", "descents": "full-descent-only"}[
            mode_token
        ]
    except KeyError:
        raise ValueError(f"census --levi must be 'all' or 'descents', got {args.levi!r}")
    cap = args.cap if args.cap is not None else _env_int(
        "LEVISPHERICAL_ENUM_CAP", DEFAULT_ENUM_CAP
    )
    battery = _parse_battery(spec, args.battery) if args.battery else None
    records: Optional[list] = [] if battery is not None else None

    out_file = None
    try:
        if args.out:
            out_file = open(args.out, "w")
            sink = out_file
        else:
            sink = sys.stdout
        summary = census_mod.run_census(
            spec,
            levi_mode=levi_mode,
            cap=cap,
            sink=sink,
            jobs=args.jobs,
            records_out=records,
        )
    finally:
        if out_file is not None:
            out_file.close()

    _emit(summary.to_json_dict(), args.pretty)
    if battery is not None:
        report = census_mod.cross_check(
            spec, records, battery, sample=args.sample
        )
        _emit(report.to_json_dict(), args.pretty)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levispherical",
        description="Levi-sphericality of Schubert varieties, Demazure "
        "characters, and Weyl-group censuses (exact arithmetic).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, word=True):
        p.add_argument("--type", required=True, help="Cartan type, e.g. D4")
        if word:
            p.add_argument("--word", required=True, help="word in the generators")
        p.add_argument("--pretty", action="store_true", help="human output")

    p = sub.add_parser("classify", help="decide Levi-sphericality of X_w")
    common(p)
    p.add_argument(
        "--levi",
        default="",
        help="node subset; 'descents' uses the full left descent set; "
        "empty means the torus case",
    )
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("toric", help="does X_w contain a dense torus orbit")
    common(p)
    p.set_defaults(func=_cmd_toric)

    p = sub.add_parser("descents", help="left descent set of w")
    common(p)
    p.set_defaults(func=_cmd_descents)

    p = sub.add_parser("demazure", help="Demazure character of (lambda, w)")
    common(p)
    p.add_argument("--weight", required=True, help="dominant weight")
    p.set_defaults(func=_cmd_demazure)

    p = sub.add_parser(
        "decompose", help="Levi decomposition of the Demazure character"
    )
    common(p)
    p.add_argument("--weight", required=True, help="dominant weight")
    p.add_argument("--levi", default="", help="node subset or 'descents'")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser(
        "mf-check", help="is the Demazure module multiplicity-free over L_I"
    )
    common(p)
    p.add_argument("--weight", required=True, help="dominant weight")
    p.add_argument("--levi", default="", help="node subset or 'descents'")
    p.set_defaults(func=_cmd_mf_check)

    p = sub.add_parser(
        "witness", help="search for a non-multiplicity-free highest weight"
    )
    common(p)
    p.add_argument("--levi", default="", help="node subset or 'descents'")
    p.add_argument("--cap", type=int, default=None, help="weight coordinate cap")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("census", help="classify every element of the group")
    common(p, word=False)
    p.add_argument(
        "--levi",
        default="all",
        help="'all' for every descent subset, 'descents' for I = D_L(w) only",
    )
    p.add_argument("--cap", type=int, default=None, help="enumeration cap")
    p.add_argument("--out", default=None, help="write records to this file")
    p.add_argument(
        "--battery",
        default=None,
        help="cross-check weights: 'fundamentals;rho' or vectors 'a b; c d'",
    )
    p.add_argument(
        "--sample", type=float, default=None, help="cross-check sampling rate"
    )
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=_cmd_census)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CapExceeded, CharacterBudgetExceeded) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except census_mod.InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
