"""JSON documents: loading with schema checks, and canonical saving.

Every document is an object ``{"kind": ..., "version": 1, ...payload}``.  Ids
are arbitrary JSON scalars or arrays; arrays are read back as tuples, so
simplex ids such as ``("x", "x")`` survive a round trip.  Tables keyed by ids
are stored as lists of rows, e.g. ``"morphisms": [[id, src, tgt], ...]`` and
``"compose": [[f, g, h], ...]`` meaning h = g∘f (f first).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from .constructors import CategoryError, FiniteCategory, PartialMonoid, from_monoid, from_poset
from .grpd import FiniteGroupoid, Functor, GroupoidError, canon_key, canonical
from .simplicial import SemiSimplicialGroupoid, SimplicialGroupoid, SimplicialMap, validate, validate_map

VERSION = 1
KINDS = ("groupoid", "category", "poset", "monoid", "group", "partial-monoid", "simplicial",
         "semi-simplicial", "map")


class DocumentError(ValueError):
    """Invalid document; ``where`` locates the offending field."""

    def __init__(self, message, where=""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


@dataclass
class Document:
    kind: str
    obj: Any
    payload: dict
    version: int = VERSION


# -- ids ------------------------------------------------------------------------

def enc(x):
    if isinstance(x, tuple):
        return [enc(y) for y in x]
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    raise DocumentError(f"id {x!r} cannot be written to JSON")


def dec(v):
    if isinstance(v, list):
        return tuple(dec(y) for y in v)
    if isinstance(v, (dict, float)):
        raise DocumentError(f"{v!r} is not a valid id")
    return v


def _rows(rows):
    return sorted(rows, key=lambda r: canon_key(tuple(dec(x) for x in r)))


def _field(d, key, where, typ=None):
    if not isinstance(d, dict) or key not in d:
        raise DocumentError(f"missing field {key!r}", where)
    v = d[key]
    if typ is not None and not isinstance(v, typ):
        raise DocumentError(f"field {key!r} should be a {typ.__name__}", where)
    return v


def _table(d, key, width, where):
    rows = _field(d, key, where, list)
    out = []
    for k, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != width:
            raise DocumentError(f"row should have {width} entries", f"{where}.{key}[{k}]")
        out.append(tuple(dec(x) for x in r))
    return out


# -- groupoids and functors ---------------------------------------------------

def groupoid_payload(G: FiniteGroupoid) -> dict:
    return {
        "objects": [enc(x) for x in canonical(G.objects)],
        "morphisms": _rows([[enc(m), enc(G.source[m]), enc(G.target[m])] for m in G.source]),
        "identity": _rows([[enc(x), enc(i)] for x, i in G.identity.items()]),
        "compose": _rows([[enc(f), enc(g), enc(h)] for (f, g), h in G.compose.items()]),
    }


def groupoid_from(d, where="groupoid") -> FiniteGroupoid:
    objects = [dec(x) for x in _field(d, "objects", where, list)]
    mors = {m: (s, t) for m, s, t in _table(d, "morphisms", 3, where)}
    ident = dict(_table(d, "identity", 2, where))
    comp = {(f, g): h for f, g, h in _table(d, "compose", 3, where)}
    try:
        return FiniteGroupoid.from_tables(objects, mors, ident, comp)
    except GroupoidError as exc:
        raise DocumentError(str(exc), where) from None


def functor_payload(F: Functor) -> dict:
    return {"objects": _rows([[enc(x), enc(y)] for x, y in F.on_objects.items()]),
            "morphisms": _rows([[enc(m), enc(n)] for m, n in F.on_morphisms.items()])}


def functor_from(d, S, T, where) -> Functor:
    F = Functor(S, T, dict(_table(d, "objects", 2, where)), dict(_table(d, "morphisms", 2, where)))
    try:
        F.validate()
    except (GroupoidError, KeyError) as exc:
        raise DocumentError(f"invalid functor: {exc}", where) from None
    return F


# -- categories and sugar -----------------------------------------------------

def category_payload(C: FiniteCategory) -> dict:
    return {
        "objects": [enc(x) for x in canonical(C.objects)],
        "morphisms": _rows([[enc(m), enc(s), enc(t)] for m, (s, t) in C.morphisms.items()]),
        "identity": _rows([[enc(x), enc(i)] for x, i in C.identity.items()]),
        "compose": _rows([[enc(f), enc(g), enc(h)] for (f, g), h in C.compose.items()]),
    }


def _category_from(d, where):
    C = FiniteCategory(tuple(canonical(dec(x) for x in _field(d, "objects", where, list))),
                       {m: (s, t) for m, s, t in _table(d, "morphisms", 3, where)},
                       dict(_table(d, "identity", 2, where)),
                       {(f, g): h for f, g, h in _table(d, "compose", 3, where)},
                       d.get("name", ""))
    C.validate()
    return C


def _poset_from(d, where):
    return from_poset([dec(x) for x in _field(d, "elements", where, list)],
                      _table(d, "leq", 2, where), d.get("name", ""))


def _monoid_from(d, where, group=False):
    elements = [dec(x) for x in _field(d, "elements", where, list)]
    unit = dec(_field(d, "unit", where))
    table = {(a, b): c for a, b, c in _table(d, "table", 3, where)}
    C = from_monoid(elements, unit, table, d.get("name", ""))
    if group:
        for a in elements:
            if not any(table[a, b] == unit and table[b, a] == unit for b in elements):
                raise DocumentError(f"element {a!r} has no inverse", where)
    return C


def _partial_from(d, where):
    M = PartialMonoid(tuple(canonical(dec(x) for x in _field(d, "elements", where, list))),
                      dec(_field(d, "unit", where)),
                      {(a, b): c for a, b, c in _table(d, "table", 3, where)}, d.get("name", ""))
    M.validate()
    return M


def _sugar_payload(kind, d):
    """Canonical form of a poset / monoid / partial-monoid payload."""
    out = {"elements": [enc(x) for x in canonical(dec(x) for x in d["elements"])]}
    if kind == "poset":
        out["leq"] = _rows(d["leq"])
    else:
        out["unit"] = d["unit"]
        out["table"] = _rows(d["table"])
    if d.get("name"):
        out["name"] = d["name"]
    return out


# -- simplicial bundles ---------------------------------------------------------

def simplicial_payload(X) -> dict:
    out = {"truncation": X.truncation,
           "levels": [groupoid_payload(L) for L in X.levels],
           "faces": [dict(level=n, index=i, **functor_payload(F))
                     for (n, i), F in sorted(X.faces.items())]}
    if isinstance(X, SimplicialGroupoid):
        out["degeneracies"] = [dict(level=n, index=i, **functor_payload(F))
                               for (n, i), F in sorted(X.degeneracies.items())]
    if X.name:
        out["name"] = X.name
    return out


def _operators(d, key, levels, where, shift):
    ops = {}
    for k, row in enumerate(_field(d, key, where, list)):
        w = f"{where}.{key}[{k}]"
        n, i = _field(row, "level", w, int), _field(row, "index", w, int)
        tgt = n - 1 if shift < 0 else n + 1
        if not (0 <= min(n, tgt) and max(n, tgt) < len(levels)):
            raise DocumentError(f"operator at level {n} leaves the truncation", w)
        ops[n, i] = functor_from(row, levels[n], levels[tgt], w)
    return ops


def simplicial_from(d, where="simplicial", semi=False):
    raw = _field(d, "levels", where, list)
    levels = [groupoid_from(L, f"{where}.levels[{n}]") for n, L in enumerate(raw)]
    if len(levels) < 1:
        raise DocumentError("no levels", where)
    faces = _operators(d, "faces", levels, where, -1)
    name = d.get("name", "")
    if semi:
        X = SemiSimplicialGroupoid(levels, faces, name=name)
    else:
        degens = _operators(d, "degeneracies", levels, where, +1)
        X = SimplicialGroupoid(levels, faces, degens, name=name)
    problems = validate(X)
    if problems:
        raise DocumentError("simplicial identities fail: " + "; ".join(problems), where)
    return X


def map_payload(f: SimplicialMap) -> dict:
    return {"source": simplicial_payload(f.source), "target": simplicial_payload(f.target),
            "components": [functor_payload(F) for F in f.components]}


def map_from(d, where="map"):
    Y = simplicial_from(_field(d, "source", where, dict), f"{where}.source")
    X = simplicial_from(_field(d, "target", where, dict), f"{where}.target")
    comps = _field(d, "components", where, list)
    if len(comps) != len(Y.levels):
        raise DocumentError("one component functor per level is required", where)
    f = SimplicialMap(Y, X, [functor_from(c, Y.levels[n], X.levels[n], f"{where}.components[{n}]")
                             for n, c in enumerate(comps)])
    problems = validate_map(f)
    if problems:
        raise DocumentError("; ".join(problems), where)
    return f


# -- entry points -------------------------------------------------------------

def to_payload(kind, obj) -> dict:
    if kind == "groupoid":
        return groupoid_payload(obj)
    if kind == "category":
        return category_payload(obj)
    if kind in ("simplicial", "semi-simplicial"):
        return simplicial_payload(obj)
    if kind == "map":
        return map_payload(obj)
    raise DocumentError(f"kind {kind!r} is saved from its source payload")


def from_dict(d) -> Document:
    if not isinstance(d, dict):
        raise DocumentError("document must be a JSON object")
    kind = _field(d, "kind", "document", str)
    if kind not in KINDS:
        raise DocumentError(f"unknown kind {kind!r}", "document.kind")
    version = d.get("version", VERSION)
    if version != VERSION:
        raise DocumentError(f"unsupported version {version!r}", "document.version")
    try:
        if kind == "groupoid":
            obj = groupoid_from(d)
        elif kind == "category":
            obj = _category_from(d, kind)
        elif kind == "poset":
            obj = _poset_from(d, kind)
        elif kind in ("monoid", "group"):
            obj = _monoid_from(d, kind, group=kind == "group")
        elif kind == "partial-monoid":
            obj = _partial_from(d, kind)
        elif kind == "simplicial":
            obj = simplicial_from(d)
        elif kind == "semi-simplicial":
            obj = simplicial_from(d, "semi-simplicial", semi=True)
        else:
            obj = map_from(d)
    except CategoryError as exc:
        raise DocumentError(str(exc), kind) from None
    if kind in ("poset", "monoid", "group", "partial-monoid"):
        payload = _sugar_payload(kind, d)
    else:
        payload = to_payload(kind, obj)
    return Document(kind, obj, payload, version)


def loads(text: str) -> Document:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"JSON parse error: {exc.msg}", f"line {exc.lineno} column {exc.colno}")
    return from_dict(d)


def load(path) -> Document:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read file: {exc.strerror}", str(path)) from None
    return loads(text)


def dumps(kind, payload) -> str:
    doc = {"kind": kind, "version": VERSION, **payload}
    return json.dumps(doc, ensure_ascii=False, indent=1, sort_keys=True) + "\n"


def save_document(doc: Document) -> str:
    return dumps(doc.kind, doc.payload)


def save(kind, obj) -> str:
    return dumps(kind, to_payload(kind, obj))


def as_space(doc: Document, N: int):
    """Simplicial groupoid for any space-like document (categories become nerves)."""
    from .constructors import nerve, nerve_partial
    if doc.kind == "simplicial":
        return doc.obj
    if doc.kind in ("category", "poset", "monoid", "group"):
        return nerve(doc.obj, N)
    if doc.kind == "partial-monoid":
        return nerve_partial(doc.obj, N)
    raise DocumentError(f"a {doc.kind} document is not a simplicial space", "document.kind")
