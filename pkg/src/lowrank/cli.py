"""Command-line front end: validate, analyze, iso, census, and corpus.

Input algebras are JSON files in the documented format; reports are exact
(integers and exact element strings, never floats) and deterministic apart
from the timing field.  Exit codes: 0 success, 1 domain failure (invalid
algebra), 2 unreadable input, 3 unsupported ring or refused search space.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .algebra import StructureAlgebra, algebra_from_json
from .corpus import REGISTRY, build, corpus_names
from .degree import algebra_degree_with_method, geometric_degree
from .errors import (
    AlgebraFormatError,
    LowRankError,
    NoUnitError,
    NotAssociativeError,
    SearchSpaceExceededError,
    UnsupportedRingError,
)
from .exceptional import recognize_exceptional
from .involution import (
    check_uniqueness,
    degree_two_equivalence_report,
    find_standard_involution,
    involution_obstruction,
)
from .rank3 import (
    census,
    iso_test,
    jacobson_element,
    normalize_rank3,
    orbit_invariant,
    right_regular_embedding,
)
from .rings import ring_from_descriptor

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3


def analyze_algebra(B: StructureAlgebra, seed: int = 0) -> dict:
    """The full analysis report for a validated algebra."""
    start = time.perf_counter_ns()
    R = B.ring
    report: dict = {
        "ring": R.descriptor(),
        "rank": B.rank,
        "valid": True,
        "basis_change_applied": B.input_basis_change is not None,
        "seed": seed,
    }
    witness = B.commutator_witness()
    report["commutative"] = witness is None
    report["commutator_witness"] = None if witness is None else list(witness)

    try:
        deg, method = algebra_degree_with_method(B)
    except UnsupportedRingError:
        deg, method = None, "unavailable"
    report["degree"] = {"value": deg, "method": method}
    report["geometric_degree"] = geometric_degree(B)

    inv = find_standard_involution(B)
    if inv is None:
        obstruction = involution_obstruction(B)
        report["involution"] = {
            "present": False,
            "obstruction": list(obstruction) if obstruction else None,
        }
    else:
        report["involution"] = {
            "present": True,
            "trivial": inv.is_trivial,
            "trd": [R.elem_to_json(t) for t in inv.trd_vector],
            "unique": check_uniqueness(B),
        }

    eq = degree_two_equivalence_report(B)
    report["degree_two_equivalence"] = eq.to_json(R)

    splittings = recognize_exceptional(B)
    if splittings:
        report["exceptional"] = {
            "present": True,
            "splittings": [d.to_json() for d in splittings],
        }
    else:
        reason = (
            "no standard involution" if inv is None else "no multiplicative splitting"
        )
        report["exceptional"] = {"present": False, "reason": reason}

    if B.rank == 3 and inv is not None:
        form = normalize_rank3(B, inv)
        emb = right_regular_embedding(form)
        key = orbit_invariant(R, form.u, form.v)
        report["rank3"] = {
            "good_basis": form.to_json(),
            "orbit_invariant": {
                "label": key.label,
                "canonical_pair": [R.elem_to_json(c) for c in key.pair],
            },
            "jacobson_element": [R.elem_to_json(c) for c in jacobson_element(form)],
            "right_embedding": {
                "i": [[R.elem_to_json(c) for c in row] for row in emb.mat_i],
                "j": [[R.elem_to_json(c) for c in row] for row in emb.mat_j],
                "injective": emb.injective,
                "annihilator": R.elem_to_json(emb.annihilator),
            },
        }
    else:
        report["rank3"] = None

    report["algebra"] = B.to_json()
    report["timing_ns"] = time.perf_counter_ns() - start
    return report


def _load_algebra(path: str) -> StructureAlgebra:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise AlgebraFormatError(f"cannot read {path}: {exc}") from exc
    return algebra_from_json(obj)


def cmd_validate(args) -> int:
    try:
        B = _load_algebra(args.file)
    except NotAssociativeError as exc:
        print(f"INVALID: associativity fails on triple {exc.triple}")
        return EXIT_DOMAIN
    except NoUnitError as exc:
        print(f"INVALID: {exc}")
        return EXIT_DOMAIN
    print(f"OK: rank {B.rank} algebra over {B.ring}")
    if B.input_basis_change is not None:
        print("note: identity was re-based to basis vector 0")
    return EXIT_OK


def cmd_analyze(args) -> int:
    B = _load_algebra(args.file)
    report = analyze_algebra(B, seed=args.seed)
    if args.json:
        json.dump(report, sys.stdout, indent=2)
        print()
        return EXIT_OK
    print(f"rank {report['rank']} algebra over {B.ring}")
    print(f"  commutative:      {report['commutative']}")
    deg = report["degree"]
    print(f"  degree:           {deg['value']} ({deg['method']})")
    print(f"  geometric degree: {report['geometric_degree']}")
    inv = report["involution"]
    if inv["present"]:
        print(f"  involution:       yes, trd = {inv['trd']}, trivial = {inv['trivial']}")
    else:
        print(f"  involution:       no (obstruction {inv['obstruction']})")
    eq = report["degree_two_equivalence"]
    print(f"  deg-2 equivalence consistent: {eq['consistent']}")
    exc_block = report["exceptional"]
    print(f"  exceptional:      {exc_block['present']}")
    if report["rank3"]:
        rk = report["rank3"]
        print(f"  good basis (u, v): ({rk['good_basis']['u']}, {rk['good_basis']['v']})")
        print(f"  orbit invariant:  {rk['orbit_invariant']['label']}")
    return EXIT_OK


def cmd_iso(args) -> int:
    B1 = _load_algebra(args.file1)
    B2 = _load_algebra(args.file2)
    matrix = iso_test(B1, B2)
    result = {
        "isomorphic": matrix is not None,
        "matrix": None
        if matrix is None
        else [[B1.ring.elem_to_json(c) for c in row] for row in matrix],
    }
    if args.json:
        json.dump(result, sys.stdout, indent=2)
        print()
    elif matrix is None:
        print("not isomorphic (orbit invariants differ)")
    else:
        print("isomorphic; basis change rows:")
        for row in result["matrix"]:
            print("  ", row)
    return EXIT_OK


def cmd_census(args) -> int:
    ring = ring_from_descriptor(json.loads(args.ring))
    result = census(ring, args.rank, limit=args.limit)
    if args.json:
        json.dump(result.to_json(), sys.stdout, indent=2)
        print()
        return EXIT_OK
    print(
        f"census over {ring}, rank {result.rank}: "
        f"{result.total_tables} tables, {result.associative_count} associative, "
        f"{result.involution_count} with involution"
    )
    for row in result.rows:
        label = row.invariant.label if hasattr(row.invariant, "label") else row.invariant
        print(f"  class {label}: {row.count} tables, exceptional = {row.exceptional}")
    print(f"groupings agree: {result.groupings_agree}")
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.action == "list":
        for name in corpus_names():
            print(f"{name}: {REGISTRY[name].summary}")
        return EXIT_OK
    ring = ring_from_descriptor(json.loads(args.ring)) if args.ring else None
    params = args.params.split(",") if args.params else None
    B = build(args.name, ring=ring, params=params)
    json.dump(B.to_json(), sys.stdout, indent=2)
    print()
    return EXIT_OK


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lowrank",
        description="exact analysis of structure-constant algebras",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed recorded in reports")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate an algebra JSON file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("analyze", help="full exact analysis report")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("iso", help="isomorphism test for two rank-3 algebras")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("census", help="exhaustive census over a finite ring")
    p.add_argument("--ring", required=True, help='ring descriptor, e.g. {"kind":"Fp","p":2}')
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_census)

    p = sub.add_parser("corpus", help="built-in example algebras")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.add_argument("--ring", default=None)
    p.add_argument("--params", default=None)
    p.set_defaults(fn=cmd_corpus)

    args = parser.parse_args(argv)
    if args.command == "corpus" and args.action == "show" and not args.name:
        parser.error("corpus show needs a name")
    try:
        return args.fn(args)
    except (NotAssociativeError, NoUnitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (AlgebraFormatError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UnsupportedRingError, SearchSpaceExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except LowRankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
