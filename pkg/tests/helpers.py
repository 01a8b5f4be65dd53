"""Cached corpus spaces and hand-made broken fixtures shared by the tests."""
from __future__ import annotations

from functools import lru_cache

from hypothesis import strategies as st

from dspace import constructors as c
from dspace import corpus
from dspace.grpd import Functor
from dspace.simplicial import SemiSimplicialGroupoid, SimplicialGroupoid

N = 5


@lru_cache(maxsize=None)
def space(name, n=N):
    """Corpus entries are immutable apart from their analysis caches, so share them."""
    return corpus.build(name, n)


def restrict_semi(Z, drop):
    """Z with the simplices in ``drop`` removed (callers keep faces closed)."""
    levels = [L.full_subgroupoid([x for x in L.objects if x not in drop]) for L in Z.levels]
    faces = {}
    for (n, i), F in Z.faces.items():
        faces[n, i] = Functor(levels[n], levels[n - 1],
                              {x: F(x) for x in levels[n].objects},
                              {m: F.mor(m) for m in levels[n].source})
    return SemiSimplicialGroupoid(levels, faces, name=f"{Z.name}-minus")


def missing_composite_semi():
    """Strict chains of 0 < 1 < 2 < 3 without the triangle 0<2<3 (and the
    3-simplex having it as a face): the composite witness for 0<1<2<3 is gone."""
    Z = c.nondegenerate_nerve(c.chain(4), 3)
    return restrict_semi(Z, {((0, 2), (2, 3)), ((0, 1), (1, 2), (2, 3))})


def corrupted_s0():
    """nerve of 0 < 1 < 2 with s_0: X_0 → X_1 sending x to the identity at x+1 (mod 3).

    The functor is valid because the levels are discrete; the identities d_i s_0 = id break.
    """
    X = c.nerve(c.chain(3), 3)
    degens = dict(X.degeneracies)
    L0, L1 = X.levels[0], X.levels[1]
    obj = {x: (((x + 1) % 3, (x + 1) % 3),) for x in L0.objects}
    degens[0, 0] = Functor(L0, L1, obj, {L0.identity[x]: L1.identity[y] for x, y in obj.items()})
    return SimplicialGroupoid(X.levels, X.faces, degens, name="corrupted")


def coskeletal_bz2(N=3):
    """X_n = B(Z/2)^{n+1}: faces delete a coordinate, degeneracies repeat one.

    Strictly simplicial and Segal, but s_0 is the diagonal B(Z/2) → B(Z/2)², which
    is not a monomorphism, so the space is not complete.
    """
    from itertools import product as iproduct
    from dspace.grpd import FiniteGroupoid
    levels = []
    for n in range(N + 1):
        obj = ("*",) * (n + 1)
        mors = {g: (obj, obj) for g in iproduct((0, 1), repeat=n + 1)}
        comp = {(g, h): tuple((a + b) % 2 for a, b in zip(g, h)) for g in mors for h in mors}
        levels.append(FiniteGroupoid.from_tables([obj], mors, {obj: (0,) * (n + 1)}, comp))

    def op(n, m, pick):
        S, T = levels[n], levels[m]
        return Functor(S, T, {S.objects[0]: T.objects[0]},
                       {g: tuple(g[k] for k in pick) for g in S.source})

    faces = {(n, i): op(n, n - 1, [k for k in range(n + 1) if k != i])
             for n in range(1, N + 1) for i in range(n + 1)}
    degens = {(n, i): op(n, n + 1, list(range(i + 1)) + list(range(i, n + 1)))
              for n in range(N) for i in range(n + 1)}
    return SimplicialGroupoid(levels, faces, degens, name="cosk(B(Z/2))")


def closure(elements, pairs):
    """Reflexive-transitive closure of a relation."""
    rel = {(x, x) for x in elements} | set(pairs)
    while True:
        more = {(a, d) for a, b in rel for b2, d in rel if b == b2} - rel
        if not more:
            return rel
        rel |= more


@st.composite
def posets(draw, max_size=5):
    """Random posets on 0..n-1 whose order extends the usual one."""
    n = draw(st.integers(1, max_size))
    pairs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                         .filter(lambda p: p[0] < p[1])))
    return list(range(n)), closure(range(n), pairs)
