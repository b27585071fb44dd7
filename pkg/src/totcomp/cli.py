"""Command-line front end. Output is machine-readable and byte
deterministic for fixed inputs and flags; exit code 0 means the
computation ran (even when the answer is negative), 1 an input problem,
2 a failed internal self-check."""

from __future__ import annotations

import argparse
import json
import random
import sys

from .classify import (
    NonPropernessWitness,
    certificate_to_json,
    decide_proper,
    decompose,
    decomposition_to_json,
    witness_to_json,
)
from .errors import InputError, InternalCheckError, ParseError, SpanMismatch
from .field import QQ, field_from_text
from .oracle import verify_centroid_span, verify_radical_closed_forms, verify_totcomp_span
from .poset import Poset
from .radical import centroid_basis
from .search import survey, survey_to_csv, survey_to_jsonl
from .structures import (
    BilinearProduct,
    dot_product,
    is_annihilator_valued,
    is_associative,
    is_totally_compatible_with,
)

_SEED = 574203


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; that code is reserved
    # for internal self-check failures here
    def error(self, message):
        raise _UsageError(message)


def _dump(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _load_product(path, poset, field):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return BilinearProduct.from_json(poset, field, obj)


def _emit(args, payload, text_lines):
    if args.format == "text":
        for line in text_lines:
            print(line)
    else:
        print(_dump(payload))


def _cmd_poset_info(args):
    poset = Poset.load(args.file)
    payload = {
        "n": poset.n,
        "length": poset.length,
        "min": sorted(poset.min_elements),
        "max": sorted(poset.max_elements),
        "num_pairs": len(poset.pairs),
        "num_triples": len(poset.triples),
        "hasse": [list(e) for e in poset.covers],
    }
    _emit(
        args,
        payload,
        [
            f"n: {poset.n}",
            f"length: {poset.length}",
            f"min: {sorted(poset.min_elements)}",
            f"max: {sorted(poset.max_elements)}",
            f"pairs: {len(poset.pairs)}",
            f"triples: {len(poset.triples)}",
        ],
    )
    return 0


def _cmd_poset_classes(args):
    poset = Poset.load(args.file)
    sim = poset.sim_partition
    ap = poset.approx_partition
    pairs, triples = poset.pairs, poset.triples
    payload = {
        "sim": [
            {
                "class_rep": [pairs[d].x, pairs[d].y],
                "pairs": [[pairs[i].x, pairs[i].y] for i in sim.members[d]],
            }
            for d in sim.class_ids
        ],
        "approx": [
            {
                "class_rep": [triples[c].x, triples[c].y, triples[c].z],
                "triples": [
                    [triples[i].x, triples[i].y, triples[i].z] for i in ap.members[c]
                ],
                "proj_rep": [pairs[ap.proj[c]].x, pairs[ap.proj[c]].y],
            }
            for c in ap.class_ids
        ],
    }
    lines = [f"pair classes: {sim.num_classes}", f"triple classes: {ap.num_classes}"]
    _emit(args, payload, lines)
    return 0


def _cmd_poset_suffcond(args):
    poset = Poset.load(args.file)
    ok = poset.sufficient_condition_holds()
    _emit(args, {"sufficient_condition": ok}, [f"sufficient_condition: {str(ok).lower()}"])
    return 0


def _cmd_structure_check(args):
    poset = Poset.load(args.against)
    field = field_from_text(args.field)
    product = _load_product(args.file, poset, field)
    payload = {
        "associative": is_associative(product),
        "totally_compatible": is_totally_compatible_with(dot_product(poset, field), product),
        "annihilator_valued": is_annihilator_valued(product),
    }
    _emit(args, payload, [f"{k}: {str(v).lower()}" for k, v in sorted(payload.items())])
    return 0


def _cmd_structure_decompose(args):
    poset = Poset.load(args.against)
    field = field_from_text(args.field)
    product = _load_product(args.file, poset, field)
    dec = decompose(poset, field, product)
    payload = decomposition_to_json(poset, field, dec)
    _emit(args, payload, [_dump(payload)])
    return 0


def _cmd_structure_proper(args):
    poset = Poset.load(args.against)
    field = field_from_text(args.field)
    product = _load_product(args.file, poset, field)
    result = decide_proper(poset, field, product)
    if isinstance(result, NonPropernessWitness):
        payload = {"proper": False, "witness": witness_to_json(poset, field, result)}
        lines = [
            "proper: false",
            f"sim_class_rep: {payload['witness']['sim_class_rep']}",
            f"conflict: {payload['witness']['alpha1']} vs {payload['witness']['alpha2']}",
        ]
    else:
        payload = {"proper": True, "certificate": certificate_to_json(poset, field, result)}
        lines = ["proper: true"]
    _emit(args, payload, lines)
    return 0


def _cmd_centroid_basis(args):
    poset = Poset.load(args.poset)
    field = field_from_text(args.field)
    basis = centroid_basis(poset, field)
    payload = {"maps": [phi.to_json() for phi in basis]}
    _emit(args, payload, [f"spanning maps: {len(basis)}"])
    return 0


def _cmd_oracle_verify(args):
    poset = Poset.load(args.poset)
    field = field_from_text(args.field)
    checks = [args.check] if args.check else ["totcomp", "centroid", "radical"]
    rng = random.Random(args.seed)
    reports = []
    for check in checks:
        if check == "totcomp":
            reports.append(verify_totcomp_span(poset, field, rng=rng))
        elif check == "centroid":
            reports.append(verify_centroid_span(poset, field))
        else:
            reports.append(verify_radical_closed_forms(poset, field))
    payload = [r.to_json() for r in reports]
    _emit(args, payload, [f"{r.check}: {r.status} {_dump(r.dims)}" for r in reports])
    return 0


def _cmd_survey(args):
    field = field_from_text(args.field)
    rng = random.Random(args.seed)
    rows = survey(args.n, field=field, up_to_iso=args.iso, rng=rng)
    if args.format == "jsonl":
        sys.stdout.write(survey_to_jsonl(rows))
    else:
        sys.stdout.write(survey_to_csv(rows))
    return 0


def build_parser():
    parser = _Parser(prog="totcomp")
    parser.add_argument("--seed", type=int, default=_SEED, help="seed for randomized self-checks")
    sub = parser.add_subparsers(dest="group", required=True)

    poset_p = sub.add_parser("poset", help="order-theoretic queries")
    poset_sub = poset_p.add_subparsers(dest="action", required=True)
    for name, fn in (
        ("info", _cmd_poset_info),
        ("classes", _cmd_poset_classes),
        ("suffcond", _cmd_poset_suffcond),
    ):
        p = poset_sub.add_parser(name)
        p.add_argument("file")
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.set_defaults(func=fn)

    struct_p = sub.add_parser("structure", help="analyze a bilinear product")
    struct_sub = struct_p.add_subparsers(dest="action", required=True)
    for name, fn in (
        ("check", _cmd_structure_check),
        ("decompose", _cmd_structure_decompose),
        ("proper", _cmd_structure_proper),
    ):
        p = struct_sub.add_parser(name)
        p.add_argument("file")
        p.add_argument("--against", required=True, help="poset JSON file")
        p.add_argument("--field", default="Q")
        p.add_argument("--format", choices=["json", "text"], default="json")
        p.set_defaults(func=fn)

    centroid_p = sub.add_parser("centroid", help="centroid of the radical")
    centroid_sub = centroid_p.add_subparsers(dest="action", required=True)
    p = centroid_sub.add_parser("basis")
    p.add_argument("poset")
    p.add_argument("--field", default="Q")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=_cmd_centroid_basis)

    oracle_p = sub.add_parser("oracle", help="independent linear-algebra checks")
    oracle_sub = oracle_p.add_subparsers(dest="action", required=True)
    p = oracle_sub.add_parser("verify")
    p.add_argument("poset")
    p.add_argument("--check", choices=["totcomp", "centroid", "radical"])
    p.add_argument("--field", default="Q")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.set_defaults(func=_cmd_oracle_verify)

    survey_p = sub.add_parser("survey", help="tabulate predicates over small posets")
    survey_p.add_argument("--n", type=int, required=True)
    survey_p.add_argument("--iso", action="store_true", help="deduplicate up to isomorphism")
    survey_p.add_argument("--field", default="GF2")
    survey_p.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    survey_p.set_defaults(func=_cmd_survey)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(_dump({"error": "Usage", "detail": str(exc)}), file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except SpanMismatch as exc:
        print(
            _dump(
                {
                    "check": exc.check,
                    "status": "mismatch",
                    "dims": exc.dims,
                    "witness": exc.witness,
                }
            )
        )
        return 2
    except InternalCheckError as exc:
        print(_dump({"error": type(exc).__name__, "detail": str(exc)}), file=sys.stderr)
        return 2
    except (InputError, OSError) as exc:
        print(_dump({"error": type(exc).__name__, "detail": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
