"""Monotone maps [m] → [n] in the simplex category, the generic/free
factorization, and generic-along-free pushouts."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement


class SimplexMapError(ValueError):
    pass


@dataclass(frozen=True)
class SimplexMap:
    """A weakly monotone map [m] → [n], stored by its values."""

    values: tuple
    codomain: int

    def __post_init__(self):
        v = tuple(self.values)
        object.__setattr__(self, "values", v)
        if not v:
            raise SimplexMapError("a simplex map needs at least one value")
        if any(x < 0 or x > self.codomain for x in v):
            raise SimplexMapError(f"values {v} out of range for [{self.codomain}]")
        if any(v[i] > v[i + 1] for i in range(len(v) - 1)):
            raise SimplexMapError(f"values {v} are not monotone")

    @property
    def domain(self) -> int:
        return len(self.values) - 1

    def __call__(self, i):
        return self.values[i]

    def __str__(self):
        return f"[{self.domain}]→[{self.codomain}]:({','.join(map(str, self.values))})"

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n + 1)), n)

    @classmethod
    def coface(cls, n, i):
        """δ_i: [n-1] → [n], skipping i."""
        return cls(tuple(j if j < i else j + 1 for j in range(n)), n)

    @classmethod
    def codegeneracy(cls, n, i):
        """σ_i: [n+1] → [n], hitting i twice."""
        return cls(tuple(j if j <= i else j - 1 for j in range(n + 2)), n)

    def after(self, other: "SimplexMap") -> "SimplexMap":
        """``self ∘ other``."""
        if other.codomain != self.domain:
            raise SimplexMapError(f"cannot compose {self} after {other}")
        return SimplexMap(tuple(self.values[j] for j in other.values), self.codomain)

    def is_generic(self) -> bool:
        return self.values[0] == 0 and self.values[-1] == self.codomain

    def is_free(self) -> bool:
        v = self.values
        return all(v[i + 1] == v[i] + 1 for i in range(len(v) - 1))

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.codomain + 1))

    def epi_mono(self):
        """(surjection s, injection d) with ``self = d ∘ s``."""
        image = sorted(set(self.values))
        pos = {x: k for k, x in enumerate(image)}
        s = SimplexMap(tuple(pos[x] for x in self.values), len(image) - 1)
        d = SimplexMap(tuple(image), self.codomain)
        return s, d

    def operators(self):
        """Face/degeneracy operators realising the induced map X_n → X_m.

        Returns a list of ('d'|'s', level, index) in order of application,
        where ``level`` is the level the operator is applied at.
        """
        s, d = self.epi_mono()
        ops = []
        level = self.codomain
        missing = [j for j in range(self.codomain + 1) if j not in set(d.values)]
        for j in reversed(missing):
            ops.append(("d", level, j))
            level -= 1
        repeats = [i for i in range(s.domain) if s.values[i] == s.values[i + 1]]
        for i in repeats:
            ops.append(("s", level, i))
            level += 1
        return ops


def classify_map(a: SimplexMap) -> dict:
    return {"generic": a.is_generic(), "free": a.is_free()}


def factorize(a: SimplexMap):
    """Unique factorization ``a = f ∘ g`` with g generic and f free."""
    lo, hi = a.values[0], a.values[-1]
    g = SimplexMap(tuple(x - lo for x in a.values), hi - lo)
    f = SimplexMap(tuple(range(lo, hi + 1)), a.codomain)
    return g, f


@dataclass(frozen=True)
class PushoutSquare:
    """Pushout of a generic g: [p] → [q] along a free f: [p] → [p+k]:

        [p]   --f-->  [p+k]
         |g             |g2
         v              v
        [q]   --f2-->  [q+k]

    g2 is generic and f2 is free.
    """

    g: SimplexMap
    f: SimplexMap
    g2: SimplexMap
    f2: SimplexMap

    @property
    def apex(self) -> int:
        return self.f2.codomain

    def commutes(self) -> bool:
        return self.g2.after(self.f) == self.f2.after(self.g)

    def __str__(self):
        return f"g={self.g}, f={self.f} ⇒ g'={self.g2}, f'={self.f2}"


def pushout_generic_free(g: SimplexMap, f: SimplexMap) -> PushoutSquare:
    if not g.is_generic():
        raise SimplexMapError(f"{g} is not generic")
    if not f.is_free():
        raise SimplexMapError(f"{f} is not free")
    if g.domain != f.domain:
        raise SimplexMapError("generic and free maps must share their domain")
    p, q = g.domain, g.codomain
    j = f.values[0]
    k = f.codomain - p
    vals = []
    for i in range(f.codomain + 1):
        if i < j:
            vals.append(i)
        elif i <= j + p:
            vals.append(g.values[i - j] + j)
        else:
            vals.append(i - p + q)
    g2 = SimplexMap(tuple(vals), q + k)
    f2 = SimplexMap(tuple(range(j, j + q + 1)), q + k)
    return PushoutSquare(g, f, g2, f2)


def generic_generators(p: int, degeneracies: bool = True):
    """Codegeneracies σ_i and inner cofaces δ_i with domain [p]."""
    gens = []
    if degeneracies and p >= 1:
        gens += [SimplexMap.codegeneracy(p - 1, i) for i in range(p)]
    gens += [SimplexMap.coface(p + 1, i) for i in range(1, p + 1)]
    return gens


def free_generators(p: int):
    """The two outer cofaces δ_0, δ_{p+1}: [p] → [p+1]."""
    return [SimplexMap.coface(p + 1, 0), SimplexMap.coface(p + 1, p + 1)]


def generator_squares(N: int, degeneracies: bool = True) -> list[PushoutSquare]:
    """All generator-vs-generator generic/free pushouts whose levels fit in [0, N]."""
    out = []
    for p in range(0, N):
        for g in generic_generators(p, degeneracies):
            for f in free_generators(p):
                sq = pushout_generic_free(g, f)
                if sq.apex <= N and f.codomain <= N and g.codomain <= N:
                    out.append(sq)
    return out


def monotone_maps(m: int, n: int):
    """All monotone maps [m] → [n]."""
    for vals in combinations_with_replacement(range(n + 1), m + 1):
        yield SimplexMap(vals, n)
