"""Nerves, partial-monoid nerves and fat nerves of finite categories."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .grpd import FiniteGroupoid, Functor, canonical
from .simplicial import SemiSimplicialGroupoid, SimplicialGroupoid


class CategoryError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    """Objects, morphisms id -> (src, tgt), identities and a total composition
    table on composable pairs: ``compose[f, g] = g∘f``."""

    objects: tuple
    morphisms: dict
    identity: dict
    compose: dict
    name: str = ""

    def src(self, f):
        return self.morphisms[f][0]

    def tgt(self, f):
        return self.morphisms[f][1]

    def out(self, x):
        return [f for f in self.morphisms if self.src(f) == x]

    def validate(self):
        objs = set(self.objects)
        for f, (s, t) in self.morphisms.items():
            if s not in objs or t not in objs:
                raise CategoryError(f"morphism {f!r} has an unknown endpoint")
        for x in objs:
            i = self.identity.get(x)
            if i not in self.morphisms or self.morphisms[i] != (x, x):
                raise CategoryError(f"object {x!r} has no valid identity")
        for f in self.morphisms:
            for g in self.out(self.tgt(f)):
                h = self.compose.get((f, g))
                if h is None:
                    raise CategoryError(f"composite of {f!r} then {g!r} is missing")
                if self.morphisms.get(h) != (self.src(f), self.tgt(g)):
                    raise CategoryError(f"composite of {f!r} then {g!r} has wrong endpoints")
        for (f, g) in self.compose:
            if f not in self.morphisms or g not in self.morphisms or self.tgt(f) != self.src(g):
                raise CategoryError(f"composite entry ({f!r}, {g!r}) is not composable")
        for f in self.morphisms:
            if self.compose[self.identity[self.src(f)], f] != f or \
                    self.compose[f, self.identity[self.tgt(f)]] != f:
                raise CategoryError(f"unit law fails at {f!r}")
            for g in self.out(self.tgt(f)):
                gf = self.compose[f, g]
                for h in self.out(self.tgt(g)):
                    if self.compose[gf, h] != self.compose[f, self.compose[g, h]]:
                        raise CategoryError(f"associativity fails at ({f!r}, {g!r}, {h!r})")
        return True

    def isomorphisms(self):
        """Invertible morphisms with their inverses."""
        inv = {}
        for f in self.morphisms:
            for g in self.out(self.tgt(f)):
                if self.tgt(g) == self.src(f) and self.compose[f, g] == self.identity[self.src(f)] \
                        and self.compose[g, f] == self.identity[self.tgt(f)]:
                    inv[f] = g
        return inv

    def core(self) -> FiniteGroupoid:
        inv = self.isomorphisms()
        mors = {f: self.morphisms[f] for f in inv}
        comp = {(f, g): h for (f, g), h in self.compose.items() if f in inv and g in inv}
        return FiniteGroupoid.from_tables(self.objects, mors, self.identity, comp)


# -- sugar: posets, monoids, groups ---------------------------------------------

def from_poset(elements, leq, name=""):
    """Category of a finite poset; ``leq`` must be transitively closed
    (reflexive pairs are added)."""
    elements = canonical(elements)
    rel = set(map(tuple, leq)) | {(x, x) for x in elements}
    es = set(elements)
    for x, y in rel:
        if x not in es or y not in es:
            raise CategoryError(f"relation pair {(x, y)!r} mentions an unknown element")
        if x != y and (y, x) in rel:
            raise CategoryError(f"antisymmetry fails at pair {(x, y)!r}")
    for x, y in rel:
        for z in elements:
            if (y, z) in rel and (x, z) not in rel:
                raise CategoryError(f"transitivity fails: {(x, y)!r} and {(y, z)!r} "
                                    f"without {(x, z)!r}")
    mors = {(x, y): (x, y) for x, y in rel}
    comp = {((x, y), (y2, z)): (x, z) for (x, y) in rel for (y2, z) in rel if y == y2}
    return FiniteCategory(tuple(elements), mors, {x: (x, x) for x in elements}, comp, name)


def from_monoid(elements, unit, table, name="", obj="*"):
    """One-object category; ``table[a, b]`` is the product a·b, and a string
    (f1, ..., fn) composes as fn·...·f1 (first f1)."""
    elements = canonical(elements)
    if unit not in elements:
        raise CategoryError("unit is not an element")
    mors = {a: (obj, obj) for a in elements}
    comp = {}
    for f in elements:
        for g in elements:
            if (g, f) not in table:
                raise CategoryError(f"product {g!r}·{f!r} is missing")
            comp[f, g] = table[g, f]
    C = FiniteCategory((obj,), mors, {obj: unit}, comp, name)
    C.validate()
    return C


def divisor_poset(n):
    ds = [d for d in range(1, n + 1) if n % d == 0]
    return from_poset(ds, [(a, b) for a in ds for b in ds if b % a == 0], name=f"D({n})")


def interval(C: FiniteCategory, lo, hi):
    """Full subposet [lo, hi] of a poset category."""
    elems = [x for x in C.objects if (lo, x) in C.morphisms and (x, hi) in C.morphisms]
    return from_poset(elems, [m for m in C.morphisms if m[0] in elems and m[1] in elems],
                      name=f"[{lo},{hi}]")


def boolean_lattice(k):
    elems = [frozenset(i for i in range(k) if mask >> i & 1) for mask in range(2 ** k)]
    names = {s: "".join(str(i) for i in sorted(s)) or "∅" for s in elems}
    leq = [(names[a], names[b]) for a in elems for b in elems if a <= b]
    return from_poset(list(names.values()), leq, name=f"B_{k}")


def chain(n):
    """Chain 0 < 1 < ... < n-1."""
    return from_poset(range(n), [(i, j) for i in range(n) for j in range(i, n)], name=f"chain({n})")


def fence():
    """⊥ < u1 < u2 < ⊤ and ⊥ < m < ⊤: lengths 3 and 2 between the same endpoints."""
    rel = [("bot", "u1"), ("bot", "u2"), ("bot", "top"), ("u1", "u2"), ("u1", "top"),
           ("u2", "top"), ("bot", "m"), ("m", "top")]
    return from_poset(["bot", "u1", "u2", "m", "top"], rel, name="fence")


def cyclic_group(n, names=None):
    names = names or [f"g{i}" for i in range(n)]
    table = {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    return from_monoid(names, names[0], table, name=f"Z/{n}")


def z2():
    return from_monoid(["e", "x"], "e", {("e", "e"): "e", ("e", "x"): "x", ("x", "e"): "x",
                                          ("x", "x"): "e"}, name="Z/2")


def retraction_category():
    """s: x → y, r: y → x with r∘s = id_x; e = s∘r is an idempotent on y."""
    objects = ("x", "y")
    mors = {"id_x": ("x", "x"), "id_y": ("y", "y"), "s": ("x", "y"), "r": ("y", "x"),
            "e": ("y", "y")}
    ident = {"x": "id_x", "y": "id_y"}
    rules = {("s", "r"): "id_x", ("r", "s"): "e", ("s", "e"): "s", ("e", "r"): "r",
             ("e", "e"): "e"}
    comp = {}
    for f, (a, b) in mors.items():
        for g, (c, d) in mors.items():
            if b != c:
                continue
            if f == ident[a]:
                comp[f, g] = g
            elif g == ident[d]:
                comp[f, g] = f
            else:
                comp[f, g] = rules[f, g]
    C = FiniteCategory(objects, mors, ident, comp, "retraction")
    C.validate()
    return C


def two_object_aut():
    """Objects x, y with Aut(x) = {1, t} ≅ Z/2 and hom(x, y) = {g, h}, g∘t = h."""
    mors = {"1x": ("x", "x"), "t": ("x", "x"), "1y": ("y", "y"), "g": ("x", "y"),
            "h": ("x", "y")}
    ident = {"x": "1x", "y": "1y"}
    rules = {("t", "t"): "1x", ("t", "g"): "h", ("t", "h"): "g"}
    comp = {}
    for f, (a, b) in mors.items():
        for g, (c, d) in mors.items():
            if b != c:
                continue
            if f == ident[a]:
                comp[f, g] = g
            elif g == ident[d]:
                comp[f, g] = f
            else:
                comp[f, g] = rules[f, g]
    C = FiniteCategory(("x", "y"), mors, ident, comp, "x<->Z/2")
    C.validate()
    return C


# -- partial monoids --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PartialMonoid:
    elements: tuple
    unit: object
    table: dict  # (a, b) -> a·b where defined
    name: str = ""

    def mul(self, a, b):
        return self.table.get((a, b))

    def product_of(self, word):
        acc = self.unit
        for a in word:
            acc = self.mul(acc, a)
            if acc is None:
                return None
        return acc

    def validate(self):
        es = set(self.elements)
        if self.unit not in es:
            raise CategoryError("unit is not an element")
        for (a, b), c in self.table.items():
            if a not in es or b not in es or c not in es:
                raise CategoryError(f"product entry {(a, b)!r} mentions an unknown element")
        for a in self.elements:
            if self.mul(self.unit, a) != a or self.mul(a, self.unit) != a:
                raise CategoryError(f"unit law fails at {a!r}")
        for a, b, c in iproduct(self.elements, repeat=3):
            ab, bc = self.mul(a, b), self.mul(b, c)
            left = None if ab is None else self.mul(ab, c)
            right = None if bc is None else self.mul(a, bc)
            if left != right:
                raise CategoryError(f"strong associativity fails at {(a, b, c)!r}")
        return True


def partial_ex():
    """{e, x} with x·x undefined."""
    return PartialMonoid(("e", "x"), "e", {("e", "e"): "e", ("e", "x"): "x", ("x", "e"): "x"},
                         "{e,x}")


# -- nerves -----------------------------------------------------------------

def _assemble(levels, face_fn, degen_fn, N, name, morphism_fns=None):
    """Build a simplicial groupoid from discrete levels and simplex-level maps."""
    faces, degens = {}, {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            obj = {x: face_fn(x, n, i) for x in levels[n].objects}
            faces[n, i] = Functor(levels[n], levels[n - 1], obj,
                                  {levels[n].identity[x]: levels[n - 1].identity[y]
                                   for x, y in obj.items()})
    for n in range(N):
        for i in range(n + 1):
            obj = {x: degen_fn(x, n, i) for x in levels[n].objects}
            degens[n, i] = Functor(levels[n], levels[n + 1], obj,
                                   {levels[n].identity[x]: levels[n + 1].identity[y]
                                    for x, y in obj.items()})
    return SimplicialGroupoid(levels, faces, degens, name=name)


def composable_strings(C: FiniteCategory, n):
    if n == 0:
        return list(C.objects)
    out_of = {x: C.out(x) for x in C.objects}
    strings = [(f,) for f in C.morphisms]
    for _ in range(n - 1):
        strings = [s + (g,) for s in strings for g in out_of[C.tgt(s[-1])]]
    return strings


def _string_face(C, sigma, n, i):
    if n == 1:
        f = sigma[0]
        return C.tgt(f) if i == 0 else C.src(f)
    if i == 0:
        return sigma[1:]
    if i == n:
        return sigma[:-1]
    return sigma[:i - 1] + (C.compose[sigma[i - 1], sigma[i]],) + sigma[i + 1:]


def _string_vertex(C, sigma, n, i):
    if n == 0:
        return sigma
    return C.src(sigma[i]) if i < n else C.tgt(sigma[-1])


def _string_degen(C, sigma, n, i):
    if n == 0:
        return (C.identity[sigma],)
    x = _string_vertex(C, sigma, n, i)
    return sigma[:i] + (C.identity[x],) + sigma[i:]


def nerve(C: FiniteCategory, N: int = 5, check=True) -> SimplicialGroupoid:
    """Strict nerve: level n is the discrete groupoid of composable n-strings."""
    if N < 2:
        raise ValueError("truncation must be at least 2")
    if check:
        C.validate()
    levels = [FiniteGroupoid.discrete(composable_strings(C, n)) for n in range(N + 1)]
    return _assemble(levels, lambda s, n, i: _string_face(C, s, n, i),
                     lambda s, n, i: _string_degen(C, s, n, i), N, f"nerve({C.name})")


def nerve_partial(M: PartialMonoid, N: int = 5) -> SimplicialGroupoid:
    """Level n: n-tuples whose full product is defined; X_0 is a point."""
    if N < 2:
        raise ValueError("truncation must be at least 2")
    M.validate()
    levels = [FiniteGroupoid.discrete(["*"])]
    for n in range(1, N + 1):
        words = [w for w in iproduct(M.elements, repeat=n) if M.product_of(w) is not None]
        levels.append(FiniteGroupoid.discrete(words))

    def face(w, n, i):
        if n == 1:
            return "*"
        if i == 0:
            return w[1:]
        if i == n:
            return w[:-1]
        return w[:i - 1] + (M.mul(w[i - 1], w[i]),) + w[i + 1:]

    def degen(w, n, i):
        if n == 0:
            return (M.unit,)
        return w[:i] + (M.unit,) + w[i:]

    return _assemble(levels, face, degen, N, f"partial({M.name})")


def fat_nerve(C: FiniteCategory, N: int = 5) -> SimplicialGroupoid:
    """Level n: functors [n] → C and natural isomorphisms between them.

    A morphism out of a string σ is (σ, (u_0, ..., u_n)) with u_i an iso out of
    vertex i; its target is the conjugated string f'_i = u_i∘f_i∘u_{i-1}^{-1}.
    """
    if N < 2:
        raise ValueError("truncation must be at least 2")
    C.validate()
    inv = C.isomorphisms()
    iso_out = {x: [u for u in C.out(x) if u in inv] for x in C.objects}
    comp = C.compose
    levels = []
    for n in range(N + 1):
        strings = composable_strings(C, n)
        if n == 0:
            levels.append(C.core())
            continue
        src, tgt, ident, table = {}, {}, {}, {}
        for s in strings:
            verts = [C.src(f) for f in s] + [C.tgt(s[-1])]
            for us in iproduct(*(iso_out[v] for v in verts)):
                t = tuple(comp[comp[inv[us[i]], s[i]], us[i + 1]] for i in range(n))
                src[s, us] = s
                tgt[s, us] = t
            ident[s] = (s, tuple(C.identity[v] for v in verts))
        out = {}
        for m, s in src.items():
            out.setdefault(s, []).append(m)
        for m1 in src:
            for m2 in out[tgt[m1]]:
                table[m1, m2] = (m1[0], tuple(comp[a, b] for a, b in zip(m1[1], m2[1])))
        levels.append(FiniteGroupoid(tuple(canonical(strings)), src, tgt, ident, table))

    def face_obj(s, n, i):
        return _string_face(C, s, n, i)

    def face_mor(m, n, i):
        s, us = m
        if n == 1:
            return us[1] if i == 0 else us[0]
        return (_string_face(C, s, n, i), us[:i] + us[i + 1:])

    def degen_obj(s, n, i):
        return _string_degen(C, s, n, i)

    def degen_mor(m, n, i):
        if n == 0:
            u = m
            return ((C.identity[C.src(u)],), (u, u))
        s, us = m
        return (_string_degen(C, s, n, i), us[:i + 1] + us[i:])

    faces, degens = {}, {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            L, D = levels[n], levels[n - 1]
            faces[n, i] = Functor(L, D, {s: face_obj(s, n, i) for s in L.objects},
                                  {m: face_mor(m, n, i) for m in L.source})
    for n in range(N):
        for i in range(n + 1):
            L, U = levels[n], levels[n + 1]
            degens[n, i] = Functor(L, U, {s: degen_obj(s, n, i) for s in L.objects},
                                   {m: degen_mor(m, n, i) for m in L.source})
    return SimplicialGroupoid(levels, faces, degens, name=f"fat({C.name})")


def constant(G: FiniteGroupoid, N: int = 5, name="const") -> SimplicialGroupoid:
    faces = {(n, i): Functor.identity(G) for n in range(1, N + 1) for i in range(n + 1)}
    degens = {(n, i): Functor.identity(G) for n in range(N) for i in range(n + 1)}
    return SimplicialGroupoid([G] * (N + 1), faces, degens, name=name)


def nerve_inclusion(C_sub: FiniteCategory, C: FiniteCategory, N: int = 5):
    """Simplicial map nerve(C_sub) → nerve(C) for a subcategory with shared ids."""
    from .simplicial import SimplicialMap
    Y, X = nerve(C_sub, N), nerve(C, N)
    comps = [Functor(Y.levels[n], X.levels[n], {s: s for s in Y.levels[n].objects},
                     {m: m for m in Y.levels[n].source}) for n in range(N + 1)]
    return SimplicialMap(Y, X, comps)


def map_to_point_nerve(X: SimplicialGroupoid, obj="*", unit="e"):
    """The unique simplicial map X → nerve(trivial monoid)."""
    from .simplicial import SimplicialMap
    P = nerve(from_monoid([unit], unit, {(unit, unit): unit}, obj=obj), X.truncation)
    comps = [Functor.to_point(X.levels[n], P.levels[n]) for n in range(X.truncation + 1)]
    return SimplicialMap(X, P, comps)


def semi_simplicial(levels, faces, name="") -> SemiSimplicialGroupoid:
    return SemiSimplicialGroupoid(list(levels), dict(faces), name=name)


def edge_semi(N: int = 3) -> SemiSimplicialGroupoid:
    """Z_0 = point, Z_1 = one edge a, Z_k empty for k ≥ 2."""
    levels = [FiniteGroupoid.discrete(["*"]), FiniteGroupoid.discrete(["a"])] + \
             [FiniteGroupoid.empty() for _ in range(2, N + 1)]
    faces = {}
    for n in range(1, N + 1):
        for i in range(n + 1):
            L, D = levels[n], levels[n - 1]
            faces[n, i] = Functor(L, D, {x: "*" for x in L.objects},
                                  {m: D.identity["*"] for m in L.source})
    return SemiSimplicialGroupoid(levels, faces, name="edge")


def nondegenerate_nerve(C: FiniteCategory, M: int) -> SemiSimplicialGroupoid:
    """Strings of non-identity arrows, levels 0..M, with the nerve's faces.

    This is the nondegenerate part of nerve(C) when no identity factors
    through non-identity arrows; otherwise an inner face leaves it and we raise.
    """
    C.validate()
    ids = set(C.identity.values())
    nonid = [f for f in C.morphisms if f not in ids]
    strings = [list(C.objects), [(f,) for f in nonid]]
    for _ in range(2, M + 1):
        strings.append([s + (g,) for s in strings[-1] for g in nonid if C.src(g) == C.tgt(s[-1])])
    levels = [FiniteGroupoid.discrete(strings[n]) for n in range(M + 1)]
    faces = {}
    for n in range(1, M + 1):
        for i in range(n + 1):
            obj = {}
            for s in levels[n].objects:
                t = _string_face(C, s, n, i)
                if n > 1 and 0 < i < n and t[i - 1] in ids:
                    raise CategoryError(f"identity {t[i - 1]!r} factors as {s[i - 1]!r} then "
                                        f"{s[i]!r}: the nerve is not split")
                obj[s] = t
            faces[n, i] = Functor(levels[n], levels[n - 1], obj,
                                  {levels[n].identity[x]: levels[n - 1].identity[y]
                                   for x, y in obj.items()})
    return SemiSimplicialGroupoid(levels, faces, name=f"nd({C.name})")


def split_nerve(C: FiniteCategory, N: int = 5, M: int | None = None) -> SimplicialGroupoid:
    """nerve(C) up to N presented as the Kan extension of its nondegenerate part,
    which is kept up to level M ≥ N so that lengths beyond N stay visible."""
    from .simplicial import kan_extend
    M = N if M is None else M
    if M < N:
        raise ValueError("the nondegenerate part must reach at least level N")
    X = kan_extend(nondegenerate_nerve(C, M), N)
    X.name = f"split-nerve({C.name})"
    return X
