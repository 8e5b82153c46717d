"""Command-line interface.

Machine-readable JSON goes to stdout (or --out), wrapped with a run
manifest so identical inputs and parameters reproduce byte-identical
output; human-readable progress goes to stderr.  Exit codes:

    0  success
    1  input error (unreadable or malformed files, bad flags)
    2  mathematical rejection, with a witness in the JSON output
    3  budget or bound exhausted

POLYGRAPH_BUDGET overrides the default enumeration budget.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from . import __version__, acceptance, catalog
from .enumeration import (
    BudgetExceeded,
    enumerate_presentations,
    isomorphism_classes,
)
from .groupcons import (
    BudgetExceeded as GroupBudgetExceeded,
    InvalidConstruction,
    NotCommuting,
    decompose,
    from_commuting_words,
    full_symmetry_subgroup,
    normalize_scalars,
    to_atomic_graph,
    to_dot,
)
from .jsonio import (
    FormatError,
    certificate_to_obj,
    dump_json,
    group_construction_to_obj,
    lattice_to_obj,
    load_presentation,
    presentation_to_obj,
    tail_from_obj,
    word_to_obj,
)
from .kgraph import PresentationError, CubicViolation, InvalidPermutation
from .periodicity import (
    LatticeInconsistency,
    TransducerCapExceeded,
    is_periodic,
    structure_report,
    symmetry_lattice,
)
from .tails import InvalidTail, shift_tail_equivalent, sigma_data, splice_separating_tail, tail_symmetry_group

EXIT_OK, EXIT_INPUT, EXIT_REJECTED, EXIT_BUDGET = 0, 1, 2, 3

CATALOG = {
    "flip": catalog.flip_2graph,
    "square": catalog.square_2graph,
    "cycle3-forward": catalog.cycle3_forward_2graph,
    "cycle3-reverse": catalog.cycle3_reverse_2graph,
    "flip-cycles": catalog.flip_cycle_cycle_3graph,
    "flip-squares": catalog.flip_square_square_3graph,
    "product-periodic": catalog.product_periodic_3graph,
    "twisted-periodic": catalog.twisted_periodic_3graph,
}


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _hash_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def _manifest(args: argparse.Namespace, inputs: list[str], summary) -> dict:
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "out") and v is not None}
    return {
        "tool": "polygraph",
        "version": __version__,
        "command": args.command,
        "presentation": getattr(args, "presentation", None),
        "input_hashes": {p: _hash_file(p) for p in inputs},
        "parameters": params,
        "summary": summary,
    }


def _emit(args, inputs, summary, result) -> None:
    out = {"manifest": _manifest(args, inputs, summary), "result": result}
    text = dump_json(out, getattr(args, "out", None))
    if getattr(args, "out", None):
        _say(f"wrote {args.out}")
    else:
        sys.stdout.write(text)


def _load(args) -> tuple:
    """Resolve --presentation (path or catalog name) to (P, input paths)."""
    name = args.presentation
    if name in CATALOG:
        return CATALOG[name](), []
    return load_presentation(name), [name]


def _parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as err:
        raise FormatError(f"bad integer vector {text!r}") from err


def _parse_words(P, text: str):
    words = []
    for i, part in enumerate(text.split(","), start=1):
        words.append(tuple((i, int(ch)) for ch in part))
    if len(words) != P.k:
        raise FormatError(f"need {P.k} comma-separated words, got {len(words)}")
    return words


def _parse_alphas(P, text: str | None):
    if text is None:
        return None
    out = []
    for part in text.split(","):
        num, den = part.split("/")
        out.append(Fraction(int(num), int(den)) % 1)
    if len(out) != P.k:
        raise FormatError(f"need {P.k} phases, got {len(out)}")
    return out


def cmd_validate(args) -> int:
    try:
        P = load_presentation(args.path)
    except FormatError:
        raise
    except InvalidPermutation as err:
        _emit(args, [args.path], "rejected",
              {"valid": False, "error": "invalid permutation", "pair": list(err.pair)})
        return EXIT_REJECTED
    except CubicViolation as err:
        _emit(args, [args.path], "rejected",
              {"valid": False, "error": "cubic violation",
               "colors": list(err.triple), "witness": list(err.witness),
               "left": list(err.left), "right": list(err.right)})
        return EXIT_REJECTED
    except PresentationError as err:
        _emit(args, [args.path], "rejected", {"valid": False, "error": str(err)})
        return EXIT_REJECTED
    _emit(args, [args.path], "valid", {"valid": True, "k": P.k, "m": list(P.m)})
    return EXIT_OK


def cmd_enumerate(args) -> int:
    m = _parse_vector(args.m)
    presentations = list(enumerate_presentations(m, budget=args.budget, jobs=args.jobs))
    _say(f"{len(presentations)} valid presentations for m={list(m)}")
    if args.classify:
        classes = isomorphism_classes(presentations)
        result = {"m": list(m), "count": len(presentations),
                  "classes": [{"representative": presentation_to_obj(c.representative),
                               "size": c.size} for c in classes]}
        summary = f"{len(presentations)} presentations, {len(classes)} classes"
    else:
        result = {"m": list(m), "count": len(presentations),
                  "presentations": [presentation_to_obj(p) for p in presentations]}
        summary = f"{len(presentations)} presentations"
    _emit(args, [], summary, result)
    return EXIT_OK


def cmd_classify(args) -> int:
    args.classify = True
    return cmd_enumerate(args)


def cmd_tail(args) -> int:
    P, inputs = _load(args)
    if args.tail_command == "splice":
        tl = splice_separating_tail(P, bound=args.bound, depth=args.depth)
        from .jsonio import tail_to_obj
        sym = tail_symmetry_group(tl, bound=args.bound, depth=args.depth)
        result = {"tail": tail_to_obj(tl), "symmetry_rank": sym.rank,
                  "symmetry_basis": [list(v) for v in sym.basis]}
        _emit(args, inputs, f"spliced tail, residual symmetry rank {sym.rank}", result)
        return EXIT_OK
    if args.tail is None:
        raise FormatError("--tail is required for sigma/symmetry/equivalent")
    with open(args.tail) as fh:
        tl = tail_from_obj(P, json.load(fh))
    inputs.append(args.tail)
    if args.tail_command == "sigma":
        box = _parse_vector(args.box)
        data = sigma_data(tl, box)
        result = {"box": list(box),
                  "sigma": [{"n": list(n), "t": list(v)} for n, v in data.values]}
        _emit(args, inputs, f"sigma on box {list(box)}", result)
    elif args.tail_command == "symmetry":
        sym = tail_symmetry_group(tl, bound=args.bound, depth=args.depth)
        result = {"bound": sym.bound, "depth": sym.depth, "rank": sym.rank,
                  "basis": [list(v) for v in sym.basis],
                  "lower_bound_only": True,
                  "generators_found": [list(g.shift) for g in sym.generators]}
        _emit(args, inputs, f"tail symmetry rank {sym.rank}", result)
    else:  # equivalent
        with open(args.other) as fh:
            other = tail_from_obj(P, json.load(fh))
        inputs.append(args.other)
        tr = shift_tail_equivalent(tl, other, _parse_vector(args.shift), depth=args.depth)
        result = {"shift": list(tr.shift), "equivalent": tr.equivalent,
                  "threshold": list(tr.threshold), "bottom": list(tr.bottom),
                  "counterexample": list(tr.counterexample) if tr.counterexample else None}
        _emit(args, inputs, f"equivalent={tr.equivalent}", result)
    return EXIT_OK


def cmd_periodicity(args) -> int:
    from .periodicity import central_element
    from .staralg import render
    P, inputs = _load(args)
    pi = _parse_vector(args.pi)
    cert = is_periodic(P, pi)
    if cert is None:
        _emit(args, inputs, f"{list(pi)} is not a period",
              {"pi": list(pi), "periodic": False})
        return EXIT_REJECTED
    result = {"pi": list(pi), "periodic": True,
              "certificate": certificate_to_obj(cert),
              "central_element": render(central_element(P, cert))}
    _emit(args, inputs, f"{list(pi)} certified", result)
    return EXIT_OK


def cmd_symmetry(args) -> int:
    P, inputs = _load(args)
    lat = symmetry_lattice(P, bound=args.bound, jobs=args.jobs)
    result = {"lattice": lattice_to_obj(lat),
              "structure": structure_report(P, lat)}
    _emit(args, inputs, f"rank {lat.rank}, basis {[list(v) for v in lat.basis]}", result)
    return EXIT_OK


def cmd_rep(args) -> int:
    P, inputs = _load(args)
    words = _parse_words(P, args.words)
    alphas = _parse_alphas(P, args.alphas)
    gc = from_commuting_words(P, words, alphas=alphas)
    if args.rep_command == "build":
        result = {"dimension": gc.dimension,
                  "construction": group_construction_to_obj(gc),
                  "symmetry_order": len(full_symmetry_subgroup(gc))}
        _emit(args, inputs, f"built {gc.dimension}-dimensional construction", result)
    elif args.rep_command == "decompose":
        rep = decompose(normalize_scalars(gc))
        result = {
            "dimension": gc.dimension,
            "symmetry": [list(h) for h in rep.symmetry],
            "summands": [{"dimension": s.dimension,
                          "construction": group_construction_to_obj(s)}
                         for s in rep.summands],
            "dimensions": rep.dimensions,
        }
        _emit(args, inputs,
              f"{len(rep.summands)} irreducible summands of dims {sorted(set(rep.dimensions))}",
              result)
    else:  # export-dot
        text = to_dot(gc)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
            _say(f"wrote {args.out}")
        else:
            sys.stdout.write(text + "\n")
    return EXIT_OK


def cmd_paper_suite(args) -> int:
    records = []
    for fn in acceptance.ALL_CRITERIA:
        rec = fn()
        records.append(rec)
        _say(f"criterion {rec['criterion']} ({rec['name']}): "
             f"{'PASS' if rec['passed'] else 'FAIL'}")
    result = {"criteria": records, "all_passed": all(r["passed"] for r in records)}
    _emit(args, [], "all passed" if result["all_passed"] else "FAILURES", result)
    return EXIT_OK if result["all_passed"] else EXIT_REJECTED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="polygraph",
        description="single-vertex k-graph toolkit: validation, enumeration, "
                    "periodicity certificates, atomic representations")
    ap.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                    help="worker processes for sweeps (results merged deterministically)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a presentation file")
    p.add_argument("path")
    p.add_argument("--out")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("enumerate", help="enumerate presentations for given multiplicities")
    p.add_argument("--m", required=True, help="multiplicities, e.g. 2,2,2")
    p.add_argument("--classify", action="store_true", help="group into isomorphism classes")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="enumerate and classify up to isomorphism")
    p.add_argument("--m", required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tail", help="window data, equivalence and symmetry of "
                                    "eventually periodic tails; splice builds a "
                                    "separating tail")
    p.add_argument("tail_command", choices=["sigma", "symmetry", "equivalent", "splice"])
    p.add_argument("--presentation", required=True,
                   help="presentation file or catalog name "
                        f"({', '.join(sorted(CATALOG))})")
    p.add_argument("--tail", help="tail JSON file (not needed for splice)")
    p.add_argument("--box", default="4,4", help="window box for sigma")
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--other", help="second tail file for `equivalent`")
    p.add_argument("--shift", default=None, help="shift vector for `equivalent`")
    p.add_argument("--out")
    p.set_defaults(func=cmd_tail)

    p = sub.add_parser("periodicity", help="decide pi-periodicity with a certificate")
    p.add_argument("--presentation", required=True)
    p.add_argument("--pi", required=True, help="period vector, e.g. 1,1,-1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_periodicity)

    p = sub.add_parser("symmetry", help="symmetry lattice and structure report")
    p.add_argument("--presentation", required=True)
    p.add_argument("--bound", type=int, default=4)
    p.add_argument("--report", "--out", dest="out", help="report file (JSON)")
    p.set_defaults(func=cmd_symmetry)

    p = sub.add_parser("rep", help="build/decompose/export finitely correlated representations")
    p.add_argument("rep_command", choices=["build", "decompose", "export-dot"])
    p.add_argument("--presentation", required=True)
    p.add_argument("--words", required=True,
                   help="one index word per color, e.g. 112,112,112")
    p.add_argument("--alphas", help="constant phases p/q per color, e.g. 0/1,1/3,2/3")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rep)

    p = sub.add_parser("paper-suite", help="run every acceptance criterion")
    p.add_argument("--out")
    p.set_defaults(func=cmd_paper_suite)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as err:
        _say(f"input error: {err}")
        return EXIT_INPUT
    except (OSError, json.JSONDecodeError) as err:
        _say(f"input error: {err}")
        return EXIT_INPUT
    except (BudgetExceeded, GroupBudgetExceeded, TransducerCapExceeded,
            LatticeInconsistency) as err:
        _say(f"budget/bound exceeded: {err}")
        return EXIT_BUDGET
    except (PresentationError, InvalidConstruction, NotCommuting, InvalidTail) as err:
        _say(f"rejected: {err}")
        sys.stdout.write(dump_json({"rejected": str(err)}, getattr(args, "out", None)))
        return EXIT_REJECTED


if __name__ == "__main__":
    sys.exit(main())
