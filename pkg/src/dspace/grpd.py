"""Finite 1-groupoids, functors, homotopy fibres/pullbacks and homotopy cardinality.

Everything here is strict: functors are dictionaries on objects and morphisms,
squares commute on the nose, and homotopy invariance is recovered by comparing
against the iso-comma (homotopy pullback) groupoid.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Hashable, Iterable, NamedTuple, Sequence


def canon_key(x):
    """Total order on the ids used throughout (ints, strings, nested tuples)."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(canon_key(y) for y in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(canon_key(y) for y in x)))
    return (4, repr(x))


def canonical(xs: Iterable) -> list:
    return sorted(xs, key=canon_key)


class GroupoidError(ValueError):
    """Invalid groupoid, functor or square data."""


class NonCommutingSquare(GroupoidError):
    pass


class Check(NamedTuple):
    """Boolean outcome of a decision procedure, with a witness when it fails."""

    ok: bool
    witness: Any = None

    def __bool__(self):
        return self.ok


class Component(NamedTuple):
    rep: Hashable
    objects: tuple
    aut_order: int


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    """A finite groupoid given by explicit tables.

    ``compose[(f, g)]`` is ``g∘f`` and is defined exactly when
    ``target[f] == source[g]``.
    """

    objects: tuple
    source: dict
    target: dict
    identity: dict
    compose: dict

    # -- construction -------------------------------------------------

    @classmethod
    def from_tables(cls, objects, morphisms, identity, compose, check=True):
        """``morphisms`` maps id -> (src, tgt)."""
        source = {m: st[0] for m, st in morphisms.items()}
        target = {m: st[1] for m, st in morphisms.items()}
        G = cls(tuple(canonical(objects)), source, target, dict(identity), dict(compose))
        if check:
            G.validate()
        return G

    @classmethod
    def discrete(cls, objects, tag="1"):
        objects = canonical(objects)
        identity = {x: (tag, x) for x in objects}
        source = {m: x for x, m in identity.items()}
        return cls(tuple(objects), source, dict(source), identity,
                   {(m, m): m for m in identity.values()})

    @classmethod
    def empty(cls):
        return cls.discrete([])

    @classmethod
    def point(cls, name="*"):
        return cls.discrete([name])

    @classmethod
    def from_group(cls, elements, unit, mult, obj="*"):
        """One-object groupoid B(G); ``mult(g, h)`` is the product ``g·h``.

        Composition convention: ``compose[(f, g)] = g∘f = mult(g, f)``.
        """
        elements = canonical(elements)
        src = {g: obj for g in elements}
        comp = {(f, g): mult(g, f) for f in elements for g in elements}
        G = cls((obj,), src, dict(src), {obj: unit}, comp)
        G.validate()
        return G

    # -- basic structure ------------------------------------------------

    @property
    def morphisms(self):
        return tuple(self.source)

    def is_discrete(self):
        return len(self.source) == len(self.objects)

    @cached_property
    def _out(self):
        out = defaultdict(list)
        for m, s in self.source.items():
            out[s].append(m)
        return {x: tuple(canonical(ms)) for x, ms in out.items()}

    @cached_property
    def _hom(self):
        hom = defaultdict(list)
        for m, s in self.source.items():
            hom[s, self.target[m]].append(m)
        return hom

    def out(self, x):
        return self._out.get(x, ())

    def hom(self, x, y):
        return self._hom.get((x, y), [])

    def aut(self, x):
        return self.hom(x, x)

    def comp(self, f, g):
        """g∘f."""
        return self.compose[f, g]

    @cached_property
    def _inverse(self):
        inv = {}
        for m in self.source:
            idx = self.identity[self.source[m]]
            for k in self.hom(self.target[m], self.source[m]):
                if self.compose.get((m, k)) == idx:
                    inv[m] = k
                    break
        return inv

    def inverse(self, f):
        return self._inverse[f]

    # -- components -------------------------------------------------------

    @cached_property
    def _components(self):
        parent = {x: x for x in self.objects}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for m, s in self.source.items():
            a, b = find(s), find(self.target[m])
            if a != b:
                parent[a] = b
        blocks = defaultdict(list)
        for x in self.objects:
            blocks[find(x)].append(x)
        comps = []
        for objs in blocks.values():
            objs = canonical(objs)
            rep = objs[0]
            comps.append(Component(rep, tuple(objs), len(self.aut(rep))))
        comps.sort(key=lambda c: canon_key(c.rep))
        return tuple(comps)

    @cached_property
    def component_of(self):
        """Object -> canonical representative of its component."""
        return {x: c.rep for c in self._components for x in c.objects}

    @cached_property
    def aut_order(self):
        """Component representative -> order of its automorphism group."""
        return {c.rep: c.aut_order for c in self._components}

    def components(self):
        return self._components

    def cardinality(self) -> Fraction:
        return sum((Fraction(1, c.aut_order) for c in self._components), Fraction(0))

    # -- derived groupoids ----------------------------------------------

    def full_subgroupoid(self, objects):
        keep = set(objects)
        mors = {m: (self.source[m], self.target[m]) for m in self.source
                if self.source[m] in keep and self.target[m] in keep}
        comp = {(f, g): h for (f, g), h in self.compose.items() if f in mors and g in mors}
        return FiniteGroupoid(tuple(canonical(keep)), {m: st[0] for m, st in mors.items()},
                              {m: st[1] for m, st in mors.items()},
                              {x: self.identity[x] for x in keep}, comp)

    def component_subgroupoid(self, reps):
        reps = set(reps)
        return self.full_subgroupoid(x for x in self.objects if self.component_of[x] in reps)

    def validate(self):
        """Raise GroupoidError naming the first violated groupoid axiom."""
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise GroupoidError("duplicate object ids")
        for m in self.source:
            if m not in self.target:
                raise GroupoidError(f"morphism {m!r} has no target")
            if self.source[m] not in objs or self.target[m] not in objs:
                raise GroupoidError(f"morphism {m!r} has an unknown endpoint")
        for x in objs:
            i = self.identity.get(x)
            if i is None or self.source.get(i) != x or self.target.get(i) != x:
                raise GroupoidError(f"object {x!r} has no valid identity")
        for f in self.source:
            for g in self.out(self.target[f]):
                h = self.compose.get((f, g))
                if h is None:
                    raise GroupoidError(f"composite of {f!r} then {g!r} is missing")
                if h not in self.source or self.source[h] != self.source[f] \
                        or self.target[h] != self.target[g]:
                    raise GroupoidError(f"composite of {f!r} then {g!r} has wrong endpoints")
        for (f, g) in self.compose:
            if f not in self.source or g not in self.source or self.target[f] != self.source[g]:
                raise GroupoidError(f"composite entry ({f!r}, {g!r}) is not composable")
        for f in self.source:
            if self.compose[self.identity[self.source[f]], f] != f \
                    or self.compose[f, self.identity[self.target[f]]] != f:
                raise GroupoidError(f"identity law fails at {f!r}")
            if f not in self._inverse:
                raise GroupoidError(f"morphism {f!r} is not invertible")
            if self.compose[self._inverse[f], f] != self.identity[self.target[f]]:
                raise GroupoidError(f"morphism {f!r} has only a one-sided inverse")
        comp = self.compose
        after = {g: [(h, comp[g, h]) for h in self.out(self.target[g])] for g in self.source}
        for f in self.source:
            for g in self.out(self.target[f]):
                gf = comp[f, g]
                bad = [h for h, hg in after[g] if comp[gf, h] != comp[f, hg]]
                if bad:
                    raise GroupoidError(f"associativity fails at ({f!r}, {g!r}, {bad[0]!r})")
        return True

    def __repr__(self):
        return (f"FiniteGroupoid({len(self.objects)} objects, {len(self.source)} morphisms, "
                f"{len(self._components)} components)")


def disjoint_union(*gs: FiniteGroupoid, tags: Sequence | None = None) -> FiniteGroupoid:
    tags = list(range(len(gs))) if tags is None else list(tags)
    objects, src, tgt, ident, comp = [], {}, {}, {}, {}
    for t, G in zip(tags, gs):
        objects += [(t, x) for x in G.objects]
        for m in G.source:
            src[t, m] = (t, G.source[m])
            tgt[t, m] = (t, G.target[m])
        for x, i in G.identity.items():
            ident[t, x] = (t, i)
        for (f, g), h in G.compose.items():
            comp[(t, f), (t, g)] = (t, h)
    return FiniteGroupoid(tuple(canonical(objects)), src, tgt, ident, comp)


def product(G: FiniteGroupoid, H: FiniteGroupoid) -> FiniteGroupoid:
    objects = [(x, y) for x in G.objects for y in H.objects]
    src, tgt, comp = {}, {}, {}
    for f in G.source:
        for g in H.source:
            src[f, g] = (G.source[f], H.source[g])
            tgt[f, g] = (G.target[f], H.target[g])
    for (f1, f2), f in G.compose.items():
        for (g1, g2), g in H.compose.items():
            comp[(f1, g1), (f2, g2)] = (f, g)
    ident = {(x, y): (G.identity[x], H.identity[y]) for x, y in objects}
    return FiniteGroupoid(tuple(canonical(objects)), src, tgt, ident, comp)


@dataclass(frozen=True, eq=False)
class Functor:
    source: FiniteGroupoid
    target: FiniteGroupoid
    on_objects: dict
    on_morphisms: dict

    def __call__(self, x):
        return self.on_objects[x]

    def mor(self, m):
        return self.on_morphisms[m]

    @classmethod
    def identity(cls, G):
        return cls(G, G, {x: x for x in G.objects}, {m: m for m in G.source})

    @classmethod
    def inclusion(cls, sub, G):
        return cls(sub, G, {x: x for x in sub.objects}, {m: m for m in sub.source})

    @classmethod
    def to_point(cls, G, P=None):
        P = FiniteGroupoid.point() if P is None else P
        (p,) = P.objects
        return cls(G, P, {x: p for x in G.objects}, {m: P.identity[p] for m in G.source})

    def then(self, other: "Functor") -> "Functor":
        """``other ∘ self``."""
        return Functor(self.source, other.target,
                       {x: other.on_objects[y] for x, y in self.on_objects.items()},
                       {m: other.on_morphisms[n] for m, n in self.on_morphisms.items()})

    def restrict(self, sub: FiniteGroupoid) -> "Functor":
        return Functor(sub, self.target, {x: self.on_objects[x] for x in sub.objects},
                       {m: self.on_morphisms[m] for m in sub.source})

    def corestrict(self, sub: FiniteGroupoid) -> "Functor":
        return Functor(self.source, sub, self.on_objects, self.on_morphisms)

    def validate(self):
        S, T = self.source, self.target
        for x in S.objects:
            if self.on_objects.get(x) not in T.identity:
                raise GroupoidError(f"object {x!r} is not mapped into the target")
            if self.on_morphisms.get(S.identity[x]) != T.identity[self.on_objects[x]]:
                raise GroupoidError(f"identity of {x!r} is not preserved")
        for m in S.source:
            fm = self.on_morphisms.get(m)
            if fm not in T.source:
                raise GroupoidError(f"morphism {m!r} is not mapped into the target")
            if T.source[fm] != self.on_objects[S.source[m]] or \
                    T.target[fm] != self.on_objects[S.target[m]]:
                raise GroupoidError(f"morphism {m!r} is mapped with wrong endpoints")
        for (f, g), h in S.compose.items():
            if T.compose[self.on_morphisms[f], self.on_morphisms[g]] != self.on_morphisms[h]:
                raise GroupoidError(f"composition ({f!r}, {g!r}) is not preserved")
        return True

    def agrees_with(self, other: "Functor") -> bool:
        return self.on_objects == other.on_objects and self.on_morphisms == other.on_morphisms

    @cached_property
    def pi0(self):
        """Component rep of source -> component rep of target."""
        T = self.target
        return {c.rep: T.component_of[self.on_objects[c.rep]] for c in self.source.components()}


def pairing(F: Functor, G: Functor) -> Functor:
    """``(F, G): A -> B × C`` for functors out of a common source."""
    if F.source is not G.source:
        raise GroupoidError("pairing needs a common source")
    P = product(F.target, G.target)
    return Functor(F.source, P, {x: (F(x), G(x)) for x in F.source.objects},
                   {m: (F.mor(m), G.mor(m)) for m in F.source.source})


@dataclass(frozen=True, eq=False)
class GroupoidSpan:
    apex: FiniteGroupoid
    left: Functor
    right: Functor

    def __post_init__(self):
        if self.left.source is not self.apex or self.right.source is not self.apex:
            raise GroupoidError("span legs must share the apex")

    @classmethod
    def identity(cls, G):
        i = Functor.identity(G)
        return cls(G, i, i)

    def then(self, other: "GroupoidSpan") -> "GroupoidSpan":
        """Compose ``S <- M -> T`` with ``T <- N -> U`` through the homotopy pullback."""
        P, pM, pN = homotopy_pullback(self.right, other.left)
        return GroupoidSpan(P, pM.then(self.left), pN.then(other.right))


# -- constructions -----------------------------------------------------------

def pi0_decomposition(G: FiniteGroupoid) -> list[Component]:
    return list(G.components())


def cardinality(G: FiniteGroupoid) -> Fraction:
    return G.cardinality()


def _index_out(src):
    out = defaultdict(list)
    for m, s in src.items():
        out[s].append(m)
    return out


def homotopy_fiber(F: Functor, b) -> FiniteGroupoid:
    """Fibre of F over b: objects (a, β) with β: F(a) → b, morphisms α: a → a'
    with β'∘F(α) = β."""
    A, B = F.source, F.target
    if b not in B.identity:
        raise GroupoidError(f"unknown object {b!r}")
    objects = [(a, beta) for a in A.objects for beta in B.hom(F(a), b)]
    src, tgt = {}, {}
    for a, beta in objects:
        for alpha in A.out(a):
            beta2 = B.comp(B.inverse(F.mor(alpha)), beta)
            m = (alpha, beta)
            src[m] = (a, beta)
            tgt[m] = (A.target[alpha], beta2)
    out = _index_out(src)
    comp = {(m1, m2): (A.comp(m1[0], m2[0]), m1[1]) for m1 in src for m2 in out[tgt[m1]]}
    ident = {(a, beta): (A.identity[a], beta) for a, beta in objects}
    return FiniteGroupoid(tuple(canonical(objects)), src, tgt, ident, comp)


def homotopy_pullback(F: Functor, G: Functor):
    """Iso-comma groupoid of ``A -F-> C <-G- B`` with its two projections.

    Objects are triples (a, b, γ) with γ: F(a) → G(b); a morphism
    (a, b, γ) → (a', b', γ') is a pair (α, β) with γ'∘F(α) = G(β)∘γ.
    """
    if F.target is not G.target:
        raise GroupoidError("homotopy pullback needs functors with a common target")
    A, B, C = F.source, G.source, F.target
    by_image = defaultdict(list)
    for b in B.objects:
        by_image[G(b)].append(b)
    objects = [(a, b, gamma) for a in A.objects for gamma in C.out(F(a))
               for b in by_image.get(C.target[gamma], ())]
    src, tgt = {}, {}
    for a, b, gamma in objects:
        for alpha in A.out(a):
            inv = C.inverse(F.mor(alpha))
            for beta in B.out(b):
                gamma2 = C.comp(C.comp(inv, gamma), G.mor(beta))
                m = (alpha, beta, gamma)
                src[m] = (a, b, gamma)
                tgt[m] = (A.target[alpha], B.target[beta], gamma2)
    out = _index_out(src)
    comp = {(m1, m2): (A.comp(m1[0], m2[0]), B.comp(m1[1], m2[1]), m1[2])
            for m1 in src for m2 in out[tgt[m1]]}
    ident = {(a, b, gamma): (A.identity[a], B.identity[b], gamma) for a, b, gamma in objects}
    P = FiniteGroupoid(tuple(canonical(objects)), src, tgt, ident, comp)
    pa = Functor(P, A, {o: o[0] for o in objects}, {m: m[0] for m in src})
    pb = Functor(P, B, {o: o[1] for o in objects}, {m: m[1] for m in src})
    return P, pa, pb


def _ff_check(F: Functor, surjective: bool) -> Check:
    S, T = F.source, F.target
    seen = {}
    for c in S.components():
        t = T.component_of[F(c.rep)]
        if t in seen:
            return Check(False, {"reason": "components merged", "components": [seen[t], c.rep],
                                 "image": t})
        seen[t] = c.rep
        images = {F.mor(m) for m in S.aut(c.rep)}
        n_target = len(T.aut(F(c.rep)))
        if len(images) != c.aut_order:
            return Check(False, {"reason": "not faithful", "object": c.rep})
        if len(images) != n_target:
            return Check(False, {"reason": "hom-set size mismatch", "object": c.rep,
                                 "source_aut": c.aut_order, "target_aut": n_target})
    if surjective:
        for c in T.components():
            if c.rep not in seen:
                return Check(False, {"reason": "missed component", "component": c.rep})
    return Check(True)


def is_equivalence(F: Functor) -> Check:
    """Full, faithful and essentially surjective."""
    return _ff_check(F, surjective=True)


def is_monomorphism(F: Functor) -> Check:
    """Every homotopy fibre is empty or contractible: full, faithful and injective on π0."""
    return _ff_check(F, surjective=False)


def square_commutes(pa: Functor, pb: Functor, f: Functor, g: Functor):
    """First object or morphism where ``f∘pa`` and ``g∘pb`` differ, else None."""
    for x in pa.source.objects:
        if f(pa(x)) != g(pb(x)):
            return ("object", x)
    for m in pa.source.source:
        if f.mor(pa.mor(m)) != g.mor(pb.mor(m)):
            return ("morphism", m)
    return None


def _iso_comma_classes(F: Functor, G: Functor):
    """Objects of the iso-comma of ``A -F-> C <-G- B`` and a find() for its
    components, without building morphisms or a composition table.

    Connectivity is generated by moves (α, 1) and (1, β) alone.
    """
    A, B, C = F.source, G.source, F.target
    by_image = defaultdict(list)
    for b in B.objects:
        by_image[G(b)].append(b)
    objects = [(a, b, gamma) for a in A.objects for gamma in C.out(F(a))
               for b in by_image.get(C.target[gamma], ())]
    parent = {o: o for o in objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, gamma in objects:
        here = find((a, b, gamma))
        for alpha in A.out(a):
            y = (A.target[alpha], b, C.comp(C.inverse(F.mor(alpha)), gamma))
            r = find(y)
            if r != here:
                parent[r] = here
        for beta in B.out(b):
            y = (a, B.target[beta], C.comp(gamma, G.mor(beta)))
            r = find(y)
            if r != here:
                parent[r] = here
    return objects, find


def _iso_comma_aut(F: Functor, G: Functor, obj):
    """Automorphisms (α, β) of (a, b, γ): γ∘F(α) = G(β)∘γ."""
    A, B, C = F.source, G.source, F.target
    a, b, gamma = obj
    return {(alpha, beta) for alpha in A.aut(a) for beta in B.aut(b)
            if C.comp(F.mor(alpha), gamma) == C.comp(gamma, G.mor(beta))}


def is_pullback_square(pa: Functor, pb: Functor, f: Functor, g: Functor) -> Check:
    """Decide whether the strictly commuting square

        P --pb--> B
        |pa       |g
        v         v
        A --f---> C

    is a homotopy pullback.  Raises NonCommutingSquare if it does not commute.
    """
    bad = square_commutes(pa, pb, f, g)
    if bad is not None:
        raise NonCommutingSquare(f"square does not commute at {bad[0]} {bad[1]!r}")
    P, C = pa.source, f.target
    objects, find = _iso_comma_classes(f, g)
    n_classes = len({find(o) for o in objects})

    def fail(w):
        w["corner_components"] = len(P.components())
        w["pullback_components"] = n_classes
        return Check(False, w)

    seen = {}
    for c in P.components():
        k = (pa(c.rep), pb(c.rep), C.identity[f(pa(c.rep))])
        root = find(k)
        if root in seen:
            return fail({"reason": "components merged", "components": [seen[root], c.rep],
                         "image": k})
        seen[root] = c.rep
        images = {(pa.mor(m), pb.mor(m)) for m in P.aut(c.rep)}
        n_target = len(_iso_comma_aut(f, g, k))
        if len(images) != c.aut_order:
            return fail({"reason": "not faithful", "object": c.rep})
        if len(images) != n_target:
            return fail({"reason": "hom-set size mismatch", "object": c.rep,
                         "source_aut": c.aut_order, "target_aut": n_target})
    if len(seen) != n_classes:
        missed = defaultdict(list)
        for o in objects:
            if find(o) not in seen:
                missed[find(o)].append(o)
        rep = min((canonical(v)[0] for v in missed.values()), key=canon_key)
        return fail({"reason": "missed component", "component": (rep[0], rep[1])})
    return Check(True)


def fiber_cardinalities(legs: Sequence[Functor]) -> dict:
    """Homotopy cardinality of the fibres of ``(legs...): M -> T1 × ... × Tk``.

    Keys are tuples of target component representatives; only nonempty fibres
    appear.  Each component [m] contributes  Π|Aut t_i| / |Aut m|.
    """
    M = legs[0].source
    out = defaultdict(Fraction)
    for c in M.components():
        key, num = [], 1
        for leg in legs:
            t = leg.target.component_of[leg(c.rep)]
            key.append(t)
            num *= leg.target.aut_order[t]
        out[tuple(key)] += Fraction(num, c.aut_order)
    return dict(out)


def fiber_cardinality(F: Functor, b) -> Fraction:
    t = F.target.component_of[b]
    return fiber_cardinalities([F]).get((t,), Fraction(0))


@dataclass(frozen=True)
class RationalMatrix:
    """Sparse exact matrix; rows and columns are indexed by π0 representatives."""

    rows: tuple
    cols: tuple
    entries: dict = field(default_factory=dict)

    def __getitem__(self, rc):
        return self.entries.get(rc, Fraction(0))

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if list(self.cols) != list(other.rows):
            raise GroupoidError("matrix dimensions do not match")
        by_row = defaultdict(list)
        for (k, j), v in other.entries.items():
            by_row[k].append((j, v))
        out = defaultdict(Fraction)
        for (i, k), v in self.entries.items():
            for j, w in by_row[k]:
                out[i, j] += v * w
        return RationalMatrix(self.rows, other.cols, {k: v for k, v in out.items() if v})

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        nz = lambda m: {k: v for k, v in m.entries.items() if v}
        return list(self.rows) == list(other.rows) and list(self.cols) == list(other.cols) \
            and nz(self) == nz(other)

    def as_lists(self):
        return [[self[r, c] for c in self.cols] for r in self.rows]

    @classmethod
    def identity(cls, index):
        index = tuple(index)
        return cls(index, index, {(i, i): Fraction(1) for i in index})


def span_matrix(span: GroupoidSpan) -> RationalMatrix:
    """Matrix of the linear map ``q_! p^*`` in the δ-bases indexed by π0.

    Entry (t, s) is the cardinality of the fibre of (p, q) over (s, t) divided
    by |Aut t|, so that composing spans multiplies matrices and identity spans
    give identity matrices.
    """
    S, T = span.left.target, span.right.target
    table = fiber_cardinalities([span.left, span.right])
    entries = {(t, s): v / T.aut_order[t] for (s, t), v in table.items()}
    return RationalMatrix(tuple(c.rep for c in T.components()),
                          tuple(c.rep for c in S.components()), entries)
