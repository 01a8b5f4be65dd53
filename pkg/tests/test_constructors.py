from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from dspace import constructors as c
from dspace.grpd import Functor, cardinality
from dspace.incidence import coalgebra, tightness
from dspace.simplicial import (SimplicialMap, axiom_check, is_complete, is_levelwise_iso,
                               validate, validate_map)

from helpers import space
from oracles import defined_words, divisor_relation, orbits_and_stabilisers


def capped(k):
    """{0..k} under addition, defined while the sum stays ≤ k."""
    els = tuple(range(k + 1))
    return c.PartialMonoid(els, 0, {(a, b): a + b for a in els for b in els if a + b <= k},
                           f"cap{k}")


def iso_pair():
    """Two isomorphic objects with trivial automorphisms."""
    mors = {"1a": ("a", "a"), "1b": ("b", "b"), "u": ("a", "b"), "v": ("b", "a")}
    rules = {("u", "v"): "1a", ("v", "u"): "1b"}
    comp = {}
    for f, (s, t) in mors.items():
        for g, (s2, t2) in mors.items():
            if t != s2:
                continue
            comp[f, g] = g if f in ("1a", "1b") else f if g in ("1a", "1b") else rules[f, g]
    C = c.FiniteCategory(("a", "b"), mors, {"a": "1a", "b": "1b"}, comp, "a≅b")
    C.validate()
    return C


# -- categories and sugar -------------------------------------------------------

def test_divisor_poset_nerve_sizes():
    X = space("d12")
    els, rel = divisor_relation(12)
    assert len(X.levels[0].objects) == len(els) == 6
    assert len(X.levels[1].objects) == len(rel) == 18
    assert X.levels[1].is_discrete()


def test_group_nerve_is_all_tuples():
    X = c.nerve(c.z2(), 4)
    for n in range(1, 5):
        assert set(X.levels[n].objects) == set(product("ex", repeat=n))


def test_trivial_category_gives_constant_point():
    X = c.nerve(c.from_monoid(["e"], "e", {("e", "e"): "e"}), 4)
    assert all(len(L.objects) == 1 for L in X.levels)


def test_category_errors():
    with pytest.raises(c.CategoryError, match="antisymmetry"):
        c.from_poset([0, 1], [(0, 1), (1, 0)])
    with pytest.raises(c.CategoryError, match="transitivity fails"):
        c.from_poset([0, 1, 2], [(0, 1), (1, 2)])
    with pytest.raises(c.CategoryError, match="missing"):
        c.from_monoid(["e", "x"], "e", {("e", "e"): "e", ("e", "x"): "x", ("x", "e"): "x"})
    with pytest.raises(c.CategoryError, match="associativity"):
        # all products of non-units are e: (a·a)·b = b but a·(a·b) = a
        t = {("e", y): y for y in "eab"} | {(y, "e"): y for y in "eab"}
        t |= {(x, y): "e" for x in "ab" for y in "ab"}
        c.from_monoid(["e", "a", "b"], "e", t)


def test_interval_is_full_convex():
    I = c.interval(c.divisor_poset(12), 1, 6)
    assert I.objects == (1, 2, 3, 6)


# -- partial monoids ---------------------------------------------------------------

def test_partial_monoid_level_sizes():
    X = c.nerve_partial(c.partial_ex(), 3)
    M = c.partial_ex()
    assert [len(L.objects) for L in X.levels] == [1, 2, 3, 4]
    for n in range(1, 4):
        assert sorted(X.levels[n].objects) == sorted(defined_words(M.elements, M.unit, M.table, n))


def test_unit_only_partial_monoid_is_a_point():
    M = c.PartialMonoid(("e",), "e", {("e", "e"): "e"})
    assert all(len(L.objects) == 1 for L in c.nerve_partial(M, 3).levels)


def test_strong_associativity_is_checked():
    t = {("e", y): y for y in "eab"} | {(y, "e"): y for y in "eab"}
    t |= {("a", "a"): "b", ("b", "a"): "b"}
    M = c.PartialMonoid(("e", "a", "b"), "e", t)
    with pytest.raises(c.CategoryError, match=r"\('a', 'a', 'a'\)"):
        c.nerve_partial(M, 3)


@given(st.integers(1, 6))
@settings(max_examples=10, deadline=None)
def test_total_monoid_agrees_with_category_nerve(n):
    C = c.cyclic_group(n)
    names = list(C.morphisms)
    table = {(a, b): C.compose[b, a] for a in names for b in names}
    M = c.PartialMonoid(tuple(names), C.identity["*"], table)
    P, X = c.nerve_partial(M, 3), c.nerve(C, 3)
    comps = [Functor(P.levels[k], X.levels[k], {w: w for w in P.levels[k].objects},
                     {P.levels[k].identity[w]: X.levels[k].identity[w]
                      for w in P.levels[k].objects}) for k in range(4)]
    f = SimplicialMap(P, X, comps)
    assert validate_map(f) == [] and is_levelwise_iso(f)


@given(st.integers(0, 4))
@settings(max_examples=5, deadline=None)
def test_capped_addition(k):
    M = capped(k)
    X = c.nerve_partial(M, 3)
    assert validate(X) == []
    for n in range(1, 4):
        assert len(X.levels[n].objects) == len(defined_words(M.elements, 0, M.table, n))
    assert axiom_check(X, "decomposition")
    assert bool(axiom_check(X, "segal")) == (k == 0)


# -- fat nerves ----------------------------------------------------------------------

def test_fat_nerve_of_bz2():
    X = space("fat-z2")
    L1 = X.levels[1]
    # (u0, u1) acts on f by f ↦ u1 f u0⁻¹; Z/2 is abelian, so this is f + u0 + u1
    expected = orbits_and_stabilisers(list(product((0, 1), repeat=2)),
                                      lambda u, f: (f + u[0] + u[1]) % 2, [0, 1])
    assert [(len(x.objects), x.aut_order) for x in L1.components()] == expected == [(2, 2)]
    assert cardinality(L1) == Fraction(1, 2)


def test_fat_nerve_of_poset_is_strict_nerve():
    C = c.divisor_poset(12)
    F, X = c.fat_nerve(C, 3), c.nerve(C, 3)
    for A, B in zip(F.levels, X.levels):
        assert A.is_discrete() and set(A.objects) == set(B.objects)


def test_fat_nerve_of_isomorphic_pair():
    X = c.fat_nerve(iso_pair(), 3)
    assert [x.aut_order for x in X.levels[0].components()] == [1]
    assert cardinality(X.levels[0]) == 1
    assert axiom_check(X, "segal")


@pytest.mark.parametrize("name", ["fat-z2", "fat-two-object"])
def test_fat_nerves_are_segal(name):
    assert axiom_check(space(name), "segal")


def test_fat_and_strict_coalgebras_agree_on_posets():
    C = c.chain(3)
    A, B = coalgebra(c.fat_nerve(C, 3)), coalgebra(c.nerve(C, 3))
    assert A.keys == B.keys and A.tensor == B.tensor and A.counit == B.counit


# -- Rezk behaviour ------------------------------------------------------------------

@pytest.mark.parametrize("C", [c.z2(), iso_pair(), c.retraction_category(), c.cyclic_group(3)],
                         ids=lambda C: C.name)
def test_isomorphisms_and_idempotents_block_tightness(C):
    X = c.nerve(C, 4)
    assert is_complete(X)
    assert tightness(X).status == "NotTight"


def test_split_nerve_is_the_nerve():
    S = c.split_nerve(c.chain(4), 4, 6)
    assert S.base.truncation == 6
    assert [len(L.objects) for L in S.levels] == [len(L.objects) for L in c.nerve(c.chain(4), 4).levels]
    with pytest.raises(ValueError):
        c.split_nerve(c.chain(4), 5, 4)


def test_truncation_must_be_at_least_two():
    with pytest.raises(ValueError):
        c.nerve(c.chain(2), 1)
