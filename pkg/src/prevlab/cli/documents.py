"""JSON interchange documents.

Rationals travel as strings ("3/2", integers as "3").  Output is UTF-8,
sorted keys, two-space indent and a trailing newline, so identical values
serialize to identical bytes.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from ..exactgeo import Point
from ..polarity import FinitePoset
from ..powercone import HoareGen, SmythGen
from ..prevcore import DownGen, GaugeForm, LinearPrev, MaxOfSuper, MinOfSub, Prevision, UpGen
from ..transforms import CPredSuper, Flavor, QPredSub

VERSION = 1
FORMS = ("linear", "min_of_sub", "max_of_super", "gauge")
FLAVORS = tuple(f.value for f in Flavor)


class DocumentError(ValueError):
    """A malformed document; `field` names the offending JSON path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- rationals and points ----------------------------------------------------------------


def enc_rat(x: Fraction) -> str:
    return str(x)


def dec_rat(v: Any, field: str) -> Fraction:
    if not isinstance(v, str):
        raise DocumentError(field, f"expected a rational string such as \"3/2\", got {json.dumps(v)}")
    try:
        return Fraction(v.strip())
    except (ValueError, ZeroDivisionError):
        raise DocumentError(field, f"not a rational: {v!r}") from None


def enc_point(p: Sequence[Fraction]) -> List[str]:
    return [enc_rat(c) for c in p]


def dec_point(v: Any, field: str, n: int = None) -> Point:
    if not isinstance(v, list) or not v:
        raise DocumentError(field, "expected a nonempty array of rational strings")
    p = tuple(dec_rat(c, f"{field}[{i}]") for i, c in enumerate(v))
    if any(c < 0 for c in p):
        raise DocumentError(field, "coordinates must be nonnegative")
    if n is not None and len(p) != n:
        raise DocumentError(field, f"expected {n} coordinates, got {len(p)}")
    return p


def _dec_points(v: Any, field: str, n: int) -> Tuple[Point, ...]:
    if not isinstance(v, list) or not v:
        raise DocumentError(field, "expected a nonempty array of points")
    return tuple(dec_point(p, f"{field}[{i}]", n) for i, p in enumerate(v))


# -- envelopes ------------------------------------------------------------------------------


def _load_json(text: str, field: str = "document") -> Dict[str, Any]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(field, f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(obj, dict):
        raise DocumentError(field, "expected a JSON object")
    return obj


def _require(obj: Dict[str, Any], key: str, prefix: str) -> Any:
    if key not in obj:
        raise DocumentError(f"{prefix}{key}", "missing field")
    return obj[key]


def _check_version(obj: Dict[str, Any], prefix: str) -> None:
    v = _require(obj, "version", prefix)
    if v != VERSION:
        raise DocumentError(f"{prefix}version", f"unsupported version {json.dumps(v)}; expected {VERSION}")


def _dec_int(obj: Dict[str, Any], key: str, prefix: str, least: int = 1) -> int:
    v = _require(obj, key, prefix)
    if not isinstance(v, int) or isinstance(v, bool) or v < least:
        raise DocumentError(f"{prefix}{key}", f"expected an integer >= {least}")
    return v


# -- previsions -----------------------------------------------------------------------------


def prevision_to_json(P: Prevision, flavor: Flavor = None) -> Dict[str, Any]:
    f = P.form
    doc: Dict[str, Any] = {"version": VERSION, "n": P.n}
    if isinstance(f, LinearPrev):
        doc["form"], doc["payload"] = "linear", enc_point(f.weights)
    elif isinstance(f, MinOfSub):
        doc["form"] = "min_of_sub"
        doc["payload"] = [[enc_point(g) for g in b.gens] for b in f.branches]
    elif isinstance(f, MaxOfSuper):
        doc["form"] = "max_of_super"
        doc["payload"] = [[enc_point(g) for g in b.gens] for b in f.branches]
    else:
        doc["form"], doc["direction"] = "gauge", f.direction
        doc["payload"] = [enc_point(p) for p in f.hull_points]
    if flavor is not None:
        doc["flavor"] = Flavor(flavor).value
    return doc


def prevision_from_json(obj: Any, prefix: str = "") -> Tuple[Prevision, Flavor]:
    """Returns the prevision and its declared flavor (plain when absent)."""
    if not isinstance(obj, dict):
        raise DocumentError(prefix.rstrip(".") or "document", "expected a JSON object")
    _check_version(obj, prefix)
    n = _dec_int(obj, "n", prefix)
    form = _require(obj, "form", prefix)
    if form not in FORMS:
        raise DocumentError(f"{prefix}form", f"unknown form {json.dumps(form)}; expected one of {', '.join(FORMS)}")
    payload = _require(obj, "payload", prefix)
    field = f"{prefix}payload"
    if form == "linear":
        P = Prevision(n, LinearPrev(dec_point(payload, field, n)))
    elif form == "gauge":
        direction = _require(obj, "direction", prefix)
        if direction not in ("down", "up"):
            raise DocumentError(f"{prefix}direction", "expected \"down\" or \"up\"")
        pts = _dec_points(payload, field, n)
        if direction == "up" and any(not any(p) for p in pts):
            raise DocumentError(field, "an up-gauge hull point must be nonzero")
        P = Prevision(n, GaugeForm(pts, direction))
    else:
        if not isinstance(payload, list) or not payload:
            raise DocumentError(field, "expected a nonempty array of branches")
        branches = [_dec_points(b, f"{field}[{i}]", n) for i, b in enumerate(payload)]
        if form == "min_of_sub":
            P = Prevision(n, MinOfSub(tuple(DownGen(b) for b in branches)))
        else:
            P = Prevision(n, MaxOfSuper(tuple(UpGen(b) for b in branches)))
    flavor = obj.get("flavor", "plain")
    if flavor not in FLAVORS:
        raise DocumentError(f"{prefix}flavor", f"unknown flavor {json.dumps(flavor)}; expected one of {', '.join(FLAVORS)}")
    extra = set(obj) - {"version", "n", "form", "payload", "flavor", "direction"}
    if extra:
        raise DocumentError(f"{prefix}{sorted(extra)[0]}", "unknown field")
    return P, Flavor(flavor)


def dump_prevision(P: Prevision, flavor: Flavor = None) -> str:
    return dumps(prevision_to_json(P, flavor))


def load_prevision(text: str) -> Tuple[Prevision, Flavor]:
    return prevision_from_json(_load_json(text))


# -- hyperspace elements ------------------------------------------------------------------------


def hyper_to_json(x) -> Dict[str, Any]:
    kind = "smyth" if isinstance(x, SmythGen) else "hoare"
    return {"version": VERSION, "n": x.n, "kind": kind, "members": [prevision_to_json(g) for g in x.gens]}


def hyper_from_json(obj: Dict[str, Any]):
    _check_version(obj, "")
    n = _dec_int(obj, "n", "")
    kind = _require(obj, "kind", "")
    if kind not in ("smyth", "hoare"):
        raise DocumentError("kind", "expected \"smyth\" or \"hoare\"")
    members = _require(obj, "members", "")
    if not isinstance(members, list) or not members:
        raise DocumentError("members", "expected a nonempty array of prevision documents")
    gens = []
    for i, m in enumerate(members):
        P, _ = prevision_from_json(m, f"members[{i}].")
        if P.n != n:
            raise DocumentError(f"members[{i}].n", f"expected n = {n}")
        gens.append(P)
    try:
        return SmythGen(tuple(gens)) if kind == "smyth" else HoareGen(tuple(gens))
    except ValueError as exc:
        raise DocumentError("members", str(exc)) from None


def dump_hyper(x) -> str:
    return dumps(hyper_to_json(x))


def load_hyper(text: str):
    return hyper_from_json(_load_json(text))


def wrapper_to_json(x) -> Dict[str, Any]:
    """QPredSub / CPredSuper as {kind, flavor, canonical}."""
    if isinstance(x, QPredSub):
        return {"version": VERSION, "kind": "nim", "flavor": x.flavor.value, "canonical": prevision_to_json(x.canonical)}
    if isinstance(x, CPredSuper):
        canon = None if x.top else prevision_to_json(x.canonical)
        return {"version": VERSION, "kind": "qus", "flavor": x.flavor.value, "n": x.n, "top": x.top, "canonical": canon}
    raise TypeError(f"not a wrapper: {x!r}")


# -- point lists and posets -------------------------------------------------------------------------


def points_to_json(pts: Sequence[Point]) -> Dict[str, Any]:
    return {"version": VERSION, "n": len(pts[0]), "points": [enc_point(p) for p in pts]}


def load_points(text: str) -> Tuple[Point, ...]:
    obj = _load_json(text)
    _check_version(obj, "")
    n = _dec_int(obj, "n", "")
    return _dec_points(_require(obj, "points", ""), "points", n)


def poset_to_json(P: FinitePoset) -> Dict[str, Any]:
    pairs = [[i, j] for i in range(P.size) for j in range(P.size) if i != j and P.leq[i][j]]
    return {"version": VERSION, "size": P.size, "leq": pairs}


def load_poset(text: str) -> FinitePoset:
    obj = _load_json(text)
    _check_version(obj, "")
    size = _dec_int(obj, "size", "")
    pairs = _require(obj, "leq", "")
    if not isinstance(pairs, list):
        raise DocumentError("leq", "expected an array of [i, j] pairs")
    clean = []
    for k, pr in enumerate(pairs):
        ok = (
            isinstance(pr, list)
            and len(pr) == 2
            and all(isinstance(v, int) and not isinstance(v, bool) and 0 <= v < size for v in pr)
        )
        if not ok:
            raise DocumentError(f"leq[{k}]", f"expected a pair of element indices below {size}")
        clean.append((pr[0], pr[1]))
    try:
        return FinitePoset.from_pairs(size, clean)
    except ValueError as exc:
        raise DocumentError("leq", str(exc)) from None
