"""JSON readers/writers for the on-disk formats.

Presentation files are the interchange contract:

    {"k": 3, "m": [2, 2, 2],
     "theta": {"1,2": [[[s, t], [s2, t2]], ...], "1,3": [...], "2,3": [...]}}

with 1-based indices, each table listing every [[s, t], [s2, t2]] pair of
its domain, and pair keys "i,j" with i < j.  Writers emit pairs in
lexicographic (s, t) order and sorted keys so output is byte-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .groupcons import FiniteAbelianGroup, GroupConstruction, group_construction
from .kgraph import Presentation, Theta, Word, validate_presentation
from .periodicity import PeriodicityCertificate, SymmetryLattice, TailCheck
from .tails import Tail, tail


class FormatError(ValueError):
    """Malformed input file (not a mathematical rejection)."""


def presentation_to_obj(P: Presentation) -> dict:
    theta = {}
    for (i, j), flat in P._pairs():
        mj = P.m[j - 1]
        entries = []
        for s in range(1, P.m[i - 1] + 1):
            for t in range(1, mj + 1):
                s2, t2 = flat[(s - 1) * mj + (t - 1)]
                entries.append([[s, t], [s2, t2]])
        theta[f"{i},{j}"] = entries
    return {"k": P.k, "m": list(P.m), "theta": theta}


def presentation_from_obj(obj: Any) -> Presentation:
    try:
        k = int(obj["k"])
        m = tuple(int(x) for x in obj["m"])
        raw = obj["theta"]
        theta: Theta = {}
        for key, entries in raw.items():
            i_s, j_s = key.split(",")
            pair = (int(i_s), int(j_s))
            table = {}
            for (st, st2) in entries:
                table[(int(st[0]), int(st[1]))] = (int(st2[0]), int(st2[1]))
            theta[pair] = table
    except (KeyError, TypeError, ValueError, AttributeError) as err:
        raise FormatError(f"malformed presentation object: {err}") from err
    return validate_presentation(k, m, theta)


def load_presentation(path: str) -> Presentation:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as err:
        raise FormatError(f"cannot read presentation from {path}: {err}") from err
    return presentation_from_obj(obj)


def dump_presentation(P: Presentation, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(presentation_to_obj(P), fh, sort_keys=True, indent=1)
        fh.write("\n")


def word_to_obj(w: Word) -> list:
    return [[c, s] for c, s in w]


def word_from_obj(obj: Any) -> Word:
    try:
        return tuple((int(c), int(s)) for c, s in obj)
    except (TypeError, ValueError) as err:
        raise FormatError(f"malformed word {obj!r}") from err


def tail_to_obj(t: Tail) -> dict:
    return {"preperiod": word_to_obj(t.preperiod), "period": word_to_obj(t.period)}


def tail_from_obj(P: Presentation, obj: Any) -> Tail:
    try:
        pre = word_from_obj(obj.get("preperiod", []))
        per = word_from_obj(obj["period"])
    except (KeyError, AttributeError) as err:
        raise FormatError(f"malformed tail object: {err}") from err
    return tail(P, pre, per)


def phase_str(p: Fraction) -> str:
    return f"{p.numerator}/{p.denominator}"


def phase_from_str(s: str) -> Fraction:
    try:
        num, den = s.split("/")
        return Fraction(int(num), int(den)) % 1
    except (ValueError, ZeroDivisionError) as err:
        raise FormatError(f"malformed phase {s!r}") from err


def tail_check_to_obj(tc: TailCheck | None) -> Any:
    if tc is None:
        return None
    out = {"mode": tc.mode, "passed": tc.passed}
    if tc.mode == "transducer":
        out["states_visited"] = tc.states_visited
    if tc.violation is not None:
        path, state = tc.violation
        out["violation"] = {"path": word_to_obj(path),
                            "state": [word_to_obj(state[0]), word_to_obj(state[1])]}
    return out


def certificate_to_obj(cert: PeriodicityCertificate) -> dict:
    return {
        "pi": list(cert.pi),
        "gamma": [[word_to_obj(e), word_to_obj(f)] for e, f in cert.gamma],
        "tail_check": tail_check_to_obj(cert.tail_check),
    }


def lattice_to_obj(lat: SymmetryLattice) -> dict:
    return {
        "bound": lat.bound,
        "rank": lat.rank,
        "basis": [list(v) for v in lat.basis],
        "hits": [list(v) for v in lat.hits],
        "certificates": [certificate_to_obj(c) for c in lat.certificates],
    }


def group_construction_to_obj(gc: GroupConstruction) -> dict:
    return {
        "kernel": [list(r) for r in gc.group.kernel],
        "elements": [list(g) for g in gc.group.elements],
        "t": [list(row) for row in gc.t],
        "alpha": [[phase_str(a) for a in row] for row in gc.alpha],
    }


def group_construction_from_obj(P: Presentation, obj: Any) -> GroupConstruction:
    try:
        kernel = [tuple(int(x) for x in row) for row in obj["kernel"]]
        G = FiniteAbelianGroup.from_kernel(kernel)
        t = [tuple(int(x) for x in row) for row in obj["t"]]
        alpha = [tuple(phase_from_str(a) for a in row) for row in obj["alpha"]]
    except (KeyError, TypeError, ValueError) as err:
        raise FormatError(f"malformed group construction object: {err}") from err
    return group_construction(P, G, t, alpha)


def dump_json(obj: Any, path: str | None) -> str:
    text = json.dumps(obj, sort_keys=True, indent=1) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
