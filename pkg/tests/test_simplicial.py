from itertools import product

import pytest
from hypothesis import given, settings

from dspace import constructors as c
from dspace.corpus import SPACES
from dspace.grpd import FiniteGroupoid, Functor, cardinality, homotopy_pullback, is_monomorphism
from dspace.grpd import is_pullback_square
from dspace.simplicial import (NotComplete, SimplicialError, SimplicialMap, Status, axiom_check,
                               effective_components, identity_map,
                               is_complete, is_levelwise_equivalence, is_levelwise_iso, is_semi_decomposition, is_split,
                               is_stiff, kan_counit, kan_extend, kan_unit, map_classify,
                               nondegenerate_components, nondegenerate_part, semi_map_problems,
                               structure_report, validate, validate_map, word_components,
                               word_subgroupoid)

from helpers import coskeletal_bz2, corrupted_s0, missing_composite_semi, posets, space
from oracles import defined_words, divisor_relation, strict_chains

COMPLETE = [n for n in SPACES if is_complete(space(n))]


def words(n, alphabet="0a"):
    return ["".join(w) for w in product(alphabet, repeat=n)]


# -- validate -------------------------------------------------------------------

@pytest.mark.parametrize("name", SPACES)
def test_constructor_outputs_validate(name):
    assert validate(space(name)) == []


def test_corrupted_degeneracy_is_reported_at_level_0():
    problems = validate(corrupted_s0())
    assert "level 0: d_0 s_0 != id" in problems


def test_kan_extension_validates():
    assert validate(kan_extend(c.edge_semi(4))) == []


# -- axioms -----------------------------------------------------------------------

def test_divisor_nerve_axioms():
    X = space("d12")
    assert axiom_check(X, "decomposition").status is Status.HOLDS
    assert axiom_check(X, "segal").status is Status.HOLDS


def test_partial_monoid_is_decomposition_not_segal():
    X = c.nerve_partial(c.partial_ex(), 4)
    assert axiom_check(X, "decomposition")
    v = axiom_check(X, "segal")
    assert v.status is Status.FAILS
    assert v.witness["level"] == 2
    assert (v.witness["corner_components"], v.witness["pullback_components"]) == (3, 4)


def test_constant_bz2_is_decomposition():
    X = c.constant(c.z2().core(), 4)
    assert axiom_check(X, "decomposition")


def test_verdicts_are_relative_to_truncation():
    v = axiom_check(space("d12"), "decomposition")
    assert v.truncation == 5 and v.checked > 0
    assert v.as_dict()["status"] == "HoldsUpToTruncation"
    with pytest.raises(ValueError):
        axiom_check(space("d12"), "2-segal")


def test_axiom_check_refuses_invalid_input():
    with pytest.raises(SimplicialError):
        axiom_check(corrupted_s0(), "decomposition")


@given(posets())
@settings(max_examples=25, deadline=None)
def test_poset_nerves_are_segal_and_split(data):
    C = c.from_poset(*data)
    X = c.nerve(C, 3)
    assert axiom_check(X, "segal") and axiom_check(X, "decomposition")
    r = structure_report(X)
    assert r.complete and r.stiff and r.split


# -- structure report -----------------------------------------------------------

def test_divisor_structure():
    r = structure_report(space("d12"))
    assert r.complete and r.stiff and r.split and r.split_status is Status.HOLDS


def test_retraction_not_split():
    r = structure_report(space("retraction"))
    assert r.complete and not r.split
    w = r.split.witness
    assert (w["simplex"], w["level"], w["face"], w["image"]) == (("s", "r"), 2, 1, ("id_x",))


def test_z2_not_split():
    r = structure_report(space("z2"))
    assert r.complete and not r.split
    w = r.split.witness
    assert (w["simplex"], w["face"], w["image"]) == (("x", "x"), 1, ("e",))


def test_split_requires_complete():
    X = coskeletal_bz2()
    assert validate(X) == [] and axiom_check(X, "segal")
    r = structure_report(X)
    assert not r.complete and r.complete.witness["reason"] == "hom-set size mismatch"
    assert r.split is None and r.split_status is Status.INCONCLUSIVE
    assert r.notes == ["split is only defined for complete spaces"]


@pytest.mark.parametrize("name", COMPLETE)
def test_split_readings_agree_on_corpus(name):
    assert structure_report(space(name)).notes == []


# -- words ------------------------------------------------------------------------

def test_all_ones_word_is_everything():
    X = space("d12")
    assert len(word_components(X, "111")) == len(X.levels[3].components())


def test_z2_effective_pair():
    assert word_components(space("z2"), "aa") == [("x", "x")]


def test_divisor_chains_over_long_edge():
    X = space("d12")
    els, rel = divisor_relation(12)
    long = X.long_edge(3)
    hits = [s for s in word_components(X, "aaa") if long(s) == ((1, 12),)]
    assert len(hits) == strict_chains(els, rel, 1, 12, 3) == 3


def test_word_subgroupoid_inclusion():
    X = space("z2")
    sub, inc = word_subgroupoid(X, "a0")
    assert sub.objects == (("x", "e"),)
    assert inc.target is X.levels[2]


def test_word_errors():
    with pytest.raises(SimplicialError):
        word_components(space("d12"), "a" * 6)
    with pytest.raises(SimplicialError):
        word_components(space("d12"), "ab")


@pytest.mark.parametrize("name", COMPLETE)
def test_words_partition_each_level(name):
    X = space(name)
    for n in range(1, 5):
        parts = [set(word_components(X, w)) for w in words(n)]
        allc = {x.rep for x in X.levels[n].components()}
        assert sum(len(p) for p in parts) == len(allc)
        assert set().union(*parts) == allc


@pytest.mark.parametrize("name", [n for n in COMPLETE if axiom_check(space(n), "decomposition")])
def test_zero_words_are_degeneracy_images(name):
    X = space(name)
    for n in range(1, 5):
        for u in words(n - 1):
            for k in range(n):
                w = u[:k] + "0" + u[k:]
                s = X.s(n - 1, k)
                comp = X.levels[n].component_of
                image = {comp[s(r)] for r in word_components(X, u)} if n > 1 else \
                    {comp[s(x.rep)] for x in X.levels[0].components()}
                assert image == set(word_components(X, w)), (w, k)


@pytest.mark.parametrize("name", COMPLETE)
def test_effective_is_nondegenerate(name):
    X = space(name)
    for n in range(X.truncation + 1):
        assert set(effective_components(X, n)) == set(nondegenerate_components(X, n))


@pytest.mark.parametrize("name", COMPLETE)
def test_all_degeneracies_are_mono(name):
    X = space(name)
    for (n, i), s in X.degeneracies.items():
        assert is_monomorphism(s), (n, i)


@pytest.mark.parametrize("name", ["d12", "chain3", "fence", "b3", "fat-two-object"])
def test_segal_effective_strings(name):
    """Effective n-simplices are strings of n nondegenerate arrows."""
    X = space(name)
    L1 = X.levels[1]
    E1 = L1.component_subgroupoid(effective_components(X, 1))
    d0 = X.d(1, 0).restrict(E1)
    d1 = X.d(1, 1).restrict(E1)
    P, last = E1, d0
    for n in range(2, 4):
        P, pa, pb = homotopy_pullback(last, d1)
        last = pb.then(d0)
        En = X.levels[n].component_subgroupoid(effective_components(X, n))
        assert cardinality(P) == cardinality(En), n


# -- maps -------------------------------------------------------------------------

def test_identity_map_is_culf():
    cls = map_classify(identity_map(space("d12")))
    assert cls["conservative"] and cls["ulf"] and cls["culf"]


def test_interval_inclusion_is_culf():
    cls = map_classify(space("interval-1-6"))
    assert cls["culf"] and cls["reduced_to_s0_d1"]


def test_map_to_point_is_neither():
    f = c.map_to_point_nerve(space("z2"))
    cls = map_classify(f)
    assert not cls["conservative"] and not cls["ulf"] and not cls["culf"]
    assert cls["conservative"].witness["reason"] == "missed component"


def test_map_truncation_mismatch():
    f = c.map_to_point_nerve(space("z2"))
    g = SimplicialMap(f.source, c.nerve(c.z2(), 3), f.components)
    assert validate_map(g) == ["truncation mismatch"]
    with pytest.raises(SimplicialError):
        map_classify(g)


def test_conservative_maps_preserve_words():
    f = space("interval-1-6")
    Y, X = f.source, f.target
    for n in range(1, 4):
        for w in words(n, "01a"):
            ys = set(word_components(Y, w))
            xs = set(word_components(X, w))
            comp = X.levels[n].component_of
            assert ys == {y.rep for y in Y.levels[n].components() if comp[f[n](y.rep)] in xs}
            sy, iy = word_subgroupoid(Y, w)
            sx, ix = word_subgroupoid(X, w)
            fw = Functor(sy, sx, {y: f[n](y) for y in sy.objects},
                         {m: f[n].mor(m) for m in sy.source})
            assert is_pullback_square(iy, fw, f[n], ix)


def test_conservative_iff_nondegenerate_preserving():
    for f in (space("interval-1-6"), c.map_to_point_nerve(space("chain3"))):
        Y, X = f.source, f.target
        assert is_stiff(Y) and is_stiff(X)
        comp = X.levels[1].component_of
        nd_x = set(nondegenerate_components(X, 1))
        preserves = all(comp[f[1](y)] in nd_x for y in nondegenerate_components(Y, 1))
        assert bool(map_classify(f)["conservative"]) == preserves


# -- Kan extension and nondegenerate part ---------------------------------------------

def _to_partial_words(K):
    """(w, z) ↦ the tuple with e for 0-letters and x for a-letters."""
    P = c.nerve_partial(c.partial_ex(), K.truncation)
    comps = []
    for n, L in enumerate(K.levels):
        T = P.levels[n]
        obj = {(w, z): ("*" if n == 0 else tuple("e" if ch == "0" else "x" for ch in w))
               for (w, z) in L.objects}
        comps.append(Functor(L, T, obj, {L.identity[o]: T.identity[t] for o, t in obj.items()}))
    return SimplicialMap(K, P, comps)


def test_kan_extension_of_edge_is_partial_monoid_nerve():
    K = kan_extend(c.edge_semi(3))
    assert [len(L.objects) for L in K.levels] == [1, 2, 3, 4]
    assert [len(defined_words(("e", "x"), "e", c.partial_ex().table, n)) for n in range(1, 4)] \
        == [2, 3, 4]
    f = _to_partial_words(K)
    assert validate_map(f) == [] and is_levelwise_iso(f)


def test_fat_nerve_round_trip_is_an_equivalence_not_an_iso():
    f = kan_counit(space("fat-z2"))
    assert not is_levelwise_iso(f)
    assert is_levelwise_equivalence(f)


def test_divisor_round_trip():
    X = space("d12")
    f = kan_counit(X)
    assert validate_map(f) == [] and is_levelwise_iso(f)


def test_kan_extension_of_level_zero_only_is_constant():
    G = c.z2().core()
    E = FiniteGroupoid.empty()
    L = [G, E, E]
    faces = {(n, i): Functor(L[n], L[n - 1], {}, {}) for n in (1, 2) for i in range(n + 1)}
    Z = c.semi_simplicial(L, faces, "g")
    assert is_semi_decomposition(Z)
    K = kan_extend(Z)
    assert [len(x.objects) for x in K.levels] == [1, 1, 1]
    assert all(cardinality(x) == cardinality(G) for x in K.levels)
    # every structure functor is the identity on the single summand 0…0
    for F in list(K.faces.values()) + list(K.degeneracies.values()):
        assert {m[1]: n[1] for m, n in F.on_morphisms.items()} == {g: g for g in G.source}


def test_nondegenerate_part_of_divisor_nerve():
    X = space("d12")
    els, rel = divisor_relation(12)
    Z = nondegenerate_part(X)
    for n in range(X.truncation + 1):
        total = sum(strict_chains(els, rel, x, y, n) for x in els for y in els)
        assert len(Z.levels[n].objects) == total


def test_nondegenerate_part_of_constant():
    G = c.z2().core()
    Z = nondegenerate_part(c.constant(G, 3))
    assert cardinality(Z.levels[0]) == cardinality(G)
    assert all(not L.objects for L in Z.levels[1:])


def test_nondegenerate_part_refuses_non_split():
    with pytest.raises(SimplicialError):
        nondegenerate_part(space("retraction"))


@pytest.mark.parametrize("name", [n for n in COMPLETE if is_split(space(n))])
def test_round_trips_on_split_corpus(name):
    X = space(name)
    f = kan_counit(X)
    assert validate_map(f) == [] and is_levelwise_equivalence(f)
    Z = nondegenerate_part(X)
    maps, ND = kan_unit(Z)
    assert semi_map_problems(Z, ND, maps) == []
    assert is_levelwise_iso(SimplicialMap(Z, ND, maps))
    assert is_split(kan_extend(Z))


@given(posets(max_size=4))
@settings(max_examples=20, deadline=None)
def test_random_poset_round_trip(data):
    X = c.nerve(c.from_poset(*data), 3)
    f = kan_counit(X)
    assert validate_map(f) == [] and is_levelwise_iso(f)


def test_split_nerve_matches_strict_nerve():
    for C in (c.chain(5), c.divisor_poset(12), c.fence()):
        S, X = c.split_nerve(C, 5), c.nerve(C, 5)
        assert [len(L.objects) for L in S.levels] == [len(L.objects) for L in X.levels]
        assert is_levelwise_iso(kan_counit(X))
        assert axiom_check(S, "segal") and is_split(S)


def test_nondegenerate_nerve_refuses_non_split_categories():
    with pytest.raises(c.CategoryError):
        c.nondegenerate_nerve(c.z2(), 3)


# -- semi-decomposition ------------------------------------------------------------

def test_semi_decomposition_of_nondegenerate_part():
    assert is_semi_decomposition(nondegenerate_part(space("d12")))


def test_semi_decomposition_fails_without_composite():
    v = is_semi_decomposition(missing_composite_semi())
    assert v.status is Status.FAILS
    assert v.witness["reason"] == "missed component"
    assert "square" in v.witness


def test_semi_decomposition_of_edge():
    assert is_semi_decomposition(c.edge_semi(4))


def test_incomplete_space_has_no_words():
    with pytest.raises(NotComplete):
        word_components(coskeletal_bz2(), "a")
