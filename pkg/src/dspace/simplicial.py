"""Truncated simplicial groupoids and their structural axioms.

Every verdict here is relative to the truncation N: a check that passes
says the axiom holds for all squares that fit inside levels 0..N, nothing more.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import product as iproduct

from .deltacat import SimplexMap, generator_squares
from .grpd import (Check, FiniteGroupoid, Functor, GroupoidError, canonical,
                   is_equivalence, is_monomorphism, is_pullback_square)

DEFAULT_TRUNCATION = 5


class SimplicialError(ValueError):
    pass


class NotComplete(SimplicialError):
    pass


class Status(str, Enum):
    HOLDS = "HoldsUpToTruncation"
    FAILS = "Fails"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class AxiomVerdict:
    axiom: str
    status: Status
    truncation: int
    witness: dict | None = None
    checked: int = 0
    reason: str | None = None

    def __post_init__(self):
        if self.status is Status.FAILS and self.witness is None:
            raise ValueError("a failing verdict needs a witness")

    def __bool__(self):
        return self.status is Status.HOLDS

    def as_dict(self):
        d = {"axiom": self.axiom, "status": self.status.value, "truncation": self.truncation,
             "squares_checked": self.checked}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.reason:
            d["reason"] = self.reason
        return d


def _compose_ops(space, ops, start_level):
    F = Functor.identity(space.levels[start_level])
    for kind, n, i in ops:
        step = space.d(n, i) if kind == "d" else space.s(n, i)
        F = F.then(step)
    return F


class _Levels:
    """Shared plumbing for simplicial and semi-simplicial groupoids."""

    levels: list
    faces: dict

    @property
    def truncation(self) -> int:
        return len(self.levels) - 1

    def d(self, n, i) -> Functor:
        return self.faces[n, i]

    def act(self, a: SimplexMap) -> Functor:
        """The functor X_n → X_m induced by a: [m] → [n]."""
        cache = self._cache.setdefault("act", {})
        if a not in cache:
            if a.codomain > self.truncation or a.domain > self.truncation:
                raise SimplicialError(f"{a} leaves the truncation")
            ops = a.operators()
            if any(k == "s" for k, _, _ in ops) and not hasattr(self, "degeneracies"):
                raise SimplicialError(f"{a} needs degeneracies")
            cache[a] = _compose_ops(self, ops, a.codomain)
        return cache[a]

    def edge(self, n, i, j) -> Functor:
        return self.act(SimplexMap((i, j), n))

    def vertex(self, n, i) -> Functor:
        return self.act(SimplexMap((i,), n))

    def long_edge(self, n) -> Functor:
        """The unique generic map X_n → X_1 (s_0 when n = 0)."""
        return self.act(SimplexMap((0, n), n))


@dataclass(eq=False)
class SimplicialGroupoid(_Levels):
    """Levels X_0..X_N with strict face functors ``faces[n, i]: X_n → X_{n-1}``
    and degeneracies ``degeneracies[n, i]: X_n → X_{n+1}``.

    ``base`` is set on Kan extensions: the semi-simplicial groupoid Z with
    X = Σ_w Z_{|w|_a}.  It may be truncated higher than X itself, and then
    carries the effective part of X beyond level N.
    """

    levels: list
    faces: dict
    degeneracies: dict
    name: str = ""
    base: object = None
    _cache: dict = field(default_factory=dict, repr=False)

    def s(self, n, i) -> Functor:
        return self.degeneracies[n, i]

    def __repr__(self):
        sizes = ", ".join(str(len(L.objects)) for L in self.levels)
        return f"SimplicialGroupoid({self.name or '?'}, N={self.truncation}, sizes=[{sizes}])"


@dataclass(eq=False)
class SemiSimplicialGroupoid(_Levels):
    levels: list
    faces: dict
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __repr__(self):
        sizes = ", ".join(str(len(L.objects)) for L in self.levels)
        return f"SemiSimplicialGroupoid({self.name or '?'}, N={self.truncation}, sizes=[{sizes}])"


@dataclass(eq=False)
class SimplicialMap:
    source: SimplicialGroupoid
    target: SimplicialGroupoid
    components: list

    def __getitem__(self, n) -> Functor:
        return self.components[n]


# -- validation -------------------------------------------------------------

def validate(X) -> list[str]:
    """List every violated functor or simplicial identity (empty when valid)."""
    problems = []
    N = X.truncation
    has_s = hasattr(X, "degeneracies")
    if N < 0:
        return ["no levels"]
    for n, L in enumerate(X.levels):
        try:
            L.validate()
        except GroupoidError as e:
            problems.append(f"level {n}: {e}")
    if problems:
        return problems

    def check_functor(name, F, n_src, n_tgt):
        if F is None:
            problems.append(f"{name} is missing")
            return False
        if F.source is not X.levels[n_src] or F.target is not X.levels[n_tgt]:
            problems.append(f"{name} has wrong endpoints")
            return False
        try:
            F.validate()
        except GroupoidError as e:
            problems.append(f"{name}: {e}")
            return False
        return True

    ok = True
    for n in range(1, N + 1):
        for i in range(n + 1):
            ok &= check_functor(f"d_{i} at level {n}", X.faces.get((n, i)), n, n - 1)
    if has_s:
        for n in range(N):
            for i in range(n + 1):
                ok &= check_functor(f"s_{i} at level {n}", X.degeneracies.get((n, i)), n, n + 1)
    if not ok:
        return problems

    def same(F, G):
        return F.agrees_with(G)

    for n in range(2, N + 1):
        for j in range(n + 1):
            for i in range(j):
                if not same(X.d(n, j).then(X.d(n - 1, i)), X.d(n, i).then(X.d(n - 1, j - 1))):
                    problems.append(f"level {n}: d_{i} d_{j} != d_{j - 1} d_{i}")
    if has_s:
        for n in range(N - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if not same(X.s(n, j).then(X.s(n + 1, i)), X.s(n, i).then(X.s(n + 1, j + 1))):
                        problems.append(f"level {n}: s_{i} s_{j} != s_{j + 1} s_{i}")
        for n in range(N):
            for j in range(n + 1):
                up = X.s(n, j)
                for i in range(n + 2):
                    lhs = up.then(X.d(n + 1, i))
                    if i < j:
                        rhs = X.d(n, i).then(X.s(n - 1, j - 1))
                        label = f"d_{i} s_{j} != s_{j - 1} d_{i}"
                    elif i in (j, j + 1):
                        rhs = Functor.identity(X.levels[n])
                        label = f"d_{i} s_{j} != id"
                    else:
                        rhs = X.d(n, i - 1).then(X.s(n - 1, j))
                        label = f"d_{i} s_{j} != s_{j} d_{i - 1}"
                    if not same(lhs, rhs):
                        problems.append(f"level {n}: {label}")
    return problems


def _require_valid(X):
    key = "valid"
    if key not in X._cache:
        X._cache[key] = validate(X)
    if X._cache[key]:
        raise SimplicialError("invalid simplicial data: " + "; ".join(X._cache[key]))


# -- axiom checks -----------------------------------------------------------

def _pushout_witness(sq, res):
    w = {"square": str(sq)}
    w.update(res.witness)
    return w


def _check_pushouts(X, squares, axiom):
    checked = 0
    for sq in squares:
        # corner X_apex; legs to X_{cod g} and X_{cod f}; both down to X_p
        res = is_pullback_square(X.act(sq.f2), X.act(sq.g2), X.act(sq.g), X.act(sq.f))
        checked += 1
        if not res:
            return AxiomVerdict(axiom, Status.FAILS, X.truncation, _pushout_witness(sq, res), checked)
    return AxiomVerdict(axiom, Status.HOLDS, X.truncation, checked=checked)


def segal_square(X, n):
    """X_n over X_{n-1} ×_{X_0} X_1 (front part and last edge)."""
    return (X.d(n, n), X.edge(n, n - 1, n), X.vertex(n - 1, n - 1), X.d(1, 1))


def axiom_check(X: SimplicialGroupoid, axiom: str) -> AxiomVerdict:
    """Decide 'decomposition' or 'segal' up to the truncation."""
    cache = X._cache.setdefault("axioms", {})
    if axiom in cache:
        return cache[axiom]
    _require_valid(X)
    N = X.truncation
    if axiom == "decomposition":
        verdict = _check_pushouts(X, generator_squares(N), axiom)
    elif axiom == "segal":
        verdict = AxiomVerdict(axiom, Status.HOLDS, N)
        for n in range(2, N + 1):
            res = is_pullback_square(*segal_square(X, n))
            verdict.checked += 1
            if not res:
                w = {"level": n, "square": f"X_{n} -> X_{n - 1} x_X0 X_1"}
                w.update(res.witness)
                verdict = AxiomVerdict(axiom, Status.FAILS, N, w, verdict.checked)
                break
    else:
        raise ValueError(f"unknown axiom {axiom!r}")
    cache[axiom] = verdict
    return verdict


def is_semi_decomposition(Z: SemiSimplicialGroupoid) -> AxiomVerdict:
    """Inner-versus-outer coface squares only."""
    problems = validate(Z)
    if problems:
        raise SimplicialError("invalid semi-simplicial data: " + "; ".join(problems))
    return _check_pushouts(Z, generator_squares(Z.truncation, degeneracies=False),
                           "semi-decomposition")


# -- degeneracy, completeness, words ----------------------------------------

def is_complete(X) -> Check:
    cache = X._cache
    if "complete" not in cache:
        cache["complete"] = is_monomorphism(X.s(0, 0))
    return cache["complete"]


def degenerate_components(X, n) -> frozenset:
    """π0 of the union of the essential images of s_i: X_{n-1} → X_n."""
    cache = X._cache.setdefault("degenerate", {})
    if n not in cache:
        if n == 0:
            cache[n] = frozenset()
        else:
            L = X.levels[n]
            cache[n] = frozenset(L.component_of[X.s(n - 1, i)(c.rep)]
                                 for i in range(n) for c in X.levels[n - 1].components())
    return cache[n]


def nondegenerate_components(X, n) -> list:
    deg = degenerate_components(X, n)
    return [c.rep for c in X.levels[n].components() if c.rep not in deg]


def _require_complete(X):
    if not is_complete(X):
        raise NotComplete("s_0: X_0 → X_1 is not a monomorphism")


def principal_edges(X, n):
    return [X.edge(n, i - 1, i) for i in range(1, n + 1)]


def word_components(X, w: str) -> list:
    """Component representatives of X_w ⊆ X_{|w|}."""
    _require_complete(X)
    n = len(w)
    if n > X.truncation:
        raise SimplicialError(f"word {w!r} is longer than the truncation")
    if any(ch not in "01a" for ch in w):
        raise SimplicialError(f"word {w!r} is not over the alphabet {{0, 1, a}}")
    cache = X._cache.setdefault("words", {})
    if w not in cache:
        deg1 = degenerate_components(X, 1)
        C1 = X.levels[1].component_of
        edges = principal_edges(X, n)
        keep = []
        for c in X.levels[n].components():
            for letter, e in zip(w, edges):
                if letter == "1":
                    continue
                if (C1[e(c.rep)] in deg1) != (letter == "0"):
                    break
            else:
                keep.append(c.rep)
        cache[w] = keep
    return cache[w]


def word_subgroupoid(X, w: str):
    """Full subgroupoid X_w of X_{|w|} and its inclusion functor."""
    reps = word_components(X, w)
    L = X.levels[len(w)]
    sub = L.component_subgroupoid(reps)
    return sub, Functor.inclusion(sub, L)


def effective_components(X, n) -> list:
    if n == 0:
        return [c.rep for c in X.levels[0].components()]
    return word_components(X, "a" * n)


def degeneracy_image(X, n, i) -> frozenset:
    """π0 of the essential image of s_i: X_{n-1} → X_n."""
    L = X.levels[n]
    return frozenset(L.component_of[X.s(n - 1, i)(c.rep)] for c in X.levels[n - 1].components())


# -- structure report -------------------------------------------------------

def stiff_squares(X):
    N = X.truncation
    for n in range(N):
        for i in range(n + 1):
            yield (n, i), (X.vertex(n, i), X.s(n, i), X.s(0, 0), X.edge(n + 1, i, i + 1))


def is_stiff(X) -> Check:
    for (n, i), sq in stiff_squares(X):
        res = is_pullback_square(*sq)
        if not res:
            w = {"square": f"s_{i}: X_{n} -> X_{n + 1} over s_0: X_0 -> X_1"}
            w.update(res.witness)
            return Check(False, w)
    return Check(True)


def _faces_preserve(X, good):
    for n in range(1, X.truncation + 1):
        C = X.levels[n - 1].component_of
        below = set(good(n - 1))
        for sigma in good(n):
            for i in range(n + 1):
                img = C[X.d(n, i)(sigma)]
                if img not in below:
                    return Check(False, {"simplex": sigma, "level": n, "face": i, "image": img})
    return Check(True)


def is_split(X) -> Check:
    """Complete, and face maps send nondegenerate simplices to nondegenerate ones."""
    if not is_complete(X):
        return Check(False, {"reason": "not complete"})
    return _faces_preserve(X, lambda n: nondegenerate_components(X, n))


@dataclass
class StructureReport:
    truncation: int
    complete: Check
    stiff: Check
    split: Check | None
    split_status: Status
    notes: list = field(default_factory=list)

    def as_dict(self):
        def enc(c):
            d = {"holds": bool(c)}
            if c is not None and not c.ok:
                d["witness"] = c.witness
            return d
        out = {"truncation": self.truncation, "complete": enc(self.complete),
               "stiff": enc(self.stiff), "split_status": self.split_status.value}
        if self.split is not None:
            out["split"] = enc(self.split)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def structure_report(X: SimplicialGroupoid) -> StructureReport:
    _require_valid(X)
    complete = is_complete(X)
    stiff = is_stiff(X)
    notes = []
    if not complete:
        return StructureReport(X.truncation, complete, stiff, None, Status.INCONCLUSIVE,
                               ["split is only defined for complete spaces"])
    split = is_split(X)
    eff = _faces_preserve(X, lambda n: effective_components(X, n))
    if bool(eff) != bool(split):
        notes.append("split (nondegenerate simplices) and the effective-simplex reading disagree")
    status = Status.HOLDS if split else Status.FAILS
    return StructureReport(X.truncation, complete, stiff, split, status, notes)


# -- simplicial maps ----------------------------------------------------------

def validate_map(f: SimplicialMap) -> list[str]:
    Y, X = f.source, f.target
    problems = []
    if Y.truncation != X.truncation:
        return ["truncation mismatch"]
    if len(f.components) != Y.truncation + 1:
        return ["wrong number of levelwise functors"]
    for n, F in enumerate(f.components):
        if F.source is not Y.levels[n] or F.target is not X.levels[n]:
            problems.append(f"level {n} functor has wrong endpoints")
            continue
        try:
            F.validate()
        except GroupoidError as e:
            problems.append(f"level {n}: {e}")
    if problems:
        return problems
    for (n, i), dY in Y.faces.items():
        if not dY.then(f[n - 1]).agrees_with(f[n].then(X.d(n, i))):
            problems.append(f"does not commute with d_{i} at level {n}")
    for (n, i), sY in Y.degeneracies.items():
        if not sY.then(f[n + 1]).agrees_with(f[n].then(X.s(n, i))):
            problems.append(f"does not commute with s_{i} at level {n}")
    return problems


def is_cartesian_on(f: SimplicialMap, a: SimplexMap) -> Check:
    """Is the naturality square of f at a: [m] → [k] a pullback?"""
    Y, X = f.source, f.target
    k, m = a.codomain, a.domain
    return is_pullback_square(f[k], Y.act(a), X.act(a), f[m])


def map_classify(f: SimplicialMap) -> dict:
    """Conservative / ULF / cULF flags with witnesses."""
    problems = validate_map(f)
    if problems:
        raise SimplicialError("; ".join(problems))
    Y, X = f.source, f.target
    N = X.truncation
    decomp = axiom_check(Y, "decomposition") and axiom_check(X, "decomposition")
    if decomp:
        cons_maps = [SimplexMap.codegeneracy(0, 0)]
        ulf_maps = [SimplexMap.coface(2, 1)]
    else:
        cons_maps = [SimplexMap.codegeneracy(n, i) for n in range(N) for i in range(n + 1)]
        ulf_maps = [SimplexMap.coface(n, i) for n in range(2, N + 1) for i in range(1, n)]

    def run(maps):
        for a in maps:
            res = is_cartesian_on(f, a)
            if not res:
                w = {"map": str(a)}
                w.update(res.witness)
                return Check(False, w)
        return Check(True)

    cons = run(cons_maps)
    ulf = run(ulf_maps)
    return {"conservative": cons, "ulf": ulf,
            "culf": Check(cons.ok and ulf.ok, None if cons.ok and ulf.ok else
                          (cons.witness if not cons.ok else ulf.witness)),
            "reduced_to_s0_d1": bool(decomp)}


def identity_map(X) -> SimplicialMap:
    return SimplicialMap(X, X, [Functor.identity(L) for L in X.levels])


def is_levelwise_iso(f) -> Check:
    for n, F in enumerate(f.components):
        S, T = F.source, F.target
        if len(set(F.on_objects.values())) != len(S.objects) or len(S.objects) != len(T.objects):
            return Check(False, {"level": n, "reason": "not bijective on objects"})
        if len(set(F.on_morphisms.values())) != len(S.source) or len(S.source) != len(T.source):
            return Check(False, {"level": n, "reason": "not bijective on morphisms"})
    return Check(True)


def is_levelwise_equivalence(f) -> Check:
    for n, F in enumerate(f.components):
        res = is_equivalence(F)
        if not res:
            return Check(False, {"level": n, **res.witness})
    return Check(True)


# -- split spaces: Kan extension and nondegenerate part -----------------------

def _word_of(s: SimplexMap) -> str:
    return "".join("0" if s.values[i] == s.values[i + 1] else "a" for i in range(s.domain))


def _surjection_of(w: str) -> SimplexMap:
    vals = [0]
    for ch in w:
        vals.append(vals[-1] + (ch == "a"))
    return SimplexMap(tuple(vals), vals[-1])


def _kan_action(Z, w, theta: SimplexMap):
    """Where θ^* sends the summand indexed by w: (new word, injective part)."""
    s2, d = _surjection_of(w).after(theta).epi_mono()
    return _word_of(s2), d


def kan_extend(Z: SemiSimplicialGroupoid, N: int | None = None) -> SimplicialGroupoid:
    """Left Kan extension along Δ_inj ⊆ Δ: level k is Σ_{w ∈ {0,a}^k} Z_{|w|_a}."""
    problems = validate(Z)
    if problems:
        raise SimplicialError("invalid semi-simplicial data: " + "; ".join(problems))
    N = Z.truncation if N is None else N
    if N > Z.truncation:
        raise SimplicialError("cannot extend beyond the semi-simplicial truncation")
    levels = []
    for k in range(N + 1):
        objects, src, tgt, ident, comp = [], {}, {}, {}, {}
        for letters in iproduct("0a", repeat=k):
            w = "".join(letters)
            L = Z.levels[w.count("a")]
            objects += [(w, z) for z in L.objects]
            for m in L.source:
                src[w, m] = (w, L.source[m])
                tgt[w, m] = (w, L.target[m])
            for z, i in L.identity.items():
                ident[w, z] = (w, i)
            for (f, g), h in L.compose.items():
                comp[(w, f), (w, g)] = (w, h)
        levels.append(FiniteGroupoid(tuple(canonical(objects)), src, tgt, ident, comp))

    def induced(k_from, theta):
        obj, mor = {}, {}
        by_word = {}
        for (w, z) in levels[k_from].objects:
            by_word.setdefault(w, []).append(z)
        for w in by_word:
            w2, d = _kan_action(Z, w, theta)
            F = Z.act(d)
            L = Z.levels[w.count("a")]
            for z in by_word[w]:
                obj[w, z] = (w2, F(z))
            for m in L.source:
                mor[w, m] = (w2, F.mor(m))
        return Functor(levels[k_from], levels[theta.domain], obj, mor)

    faces = {(k, i): induced(k, SimplexMap.coface(k, i)) for k in range(1, N + 1) for i in range(k + 1)}
    degens = {(k, i): induced(k, SimplexMap.codegeneracy(k, i)) for k in range(N) for i in range(k + 1)}
    return SimplicialGroupoid(levels, faces, degens, name=f"kan({Z.name})", base=Z)


def nondegenerate_part(X: SimplicialGroupoid) -> SemiSimplicialGroupoid:
    split = is_split(X)
    if not split:
        raise SimplicialError(f"not split: {split.witness}")
    levels = [X.levels[n].component_subgroupoid(nondegenerate_components(X, n))
              for n in range(X.truncation + 1)]
    faces = {}
    for (n, i), F in X.faces.items():
        r = F.restrict(levels[n])
        faces[n, i] = Functor(levels[n], levels[n - 1], r.on_objects, r.on_morphisms)
    return SemiSimplicialGroupoid(levels, faces, name=f"nd({X.name})")


def kan_extend_map(Z: SemiSimplicialGroupoid, X: SimplicialGroupoid, phi: list) -> SimplicialMap:
    """Extend levelwise functors φ_n: Z_n → X_n (natural in faces) to
    kan_extend(Z) → X by (w, z) ↦ X(s_w)(φ(z))."""
    K = kan_extend(Z, X.truncation)
    comps = []
    for k, L in enumerate(K.levels):
        obj, mor = {}, {}
        words = {w for w, _ in L.objects}
        for w in words:
            j = w.count("a")
            A = X.act(_surjection_of(w))
            for z in Z.levels[j].objects:
                obj[w, z] = A(phi[j](z))
            for m in Z.levels[j].source:
                mor[w, m] = A.mor(phi[j].mor(m))
        comps.append(Functor(L, X.levels[k], obj, mor))
    return SimplicialMap(K, X, comps)


def kan_counit(X: SimplicialGroupoid) -> SimplicialMap:
    """kan_extend(nondegenerate_part(X)) → X."""
    Z = nondegenerate_part(X)
    phi = [Functor.inclusion(Z.levels[n], X.levels[n]) for n in range(X.truncation + 1)]
    return kan_extend_map(Z, X, phi)


def kan_unit(Z: SemiSimplicialGroupoid):
    """Levelwise functors Z_n → nondegenerate_part(kan_extend(Z))_n, z ↦ (a…a, z),
    together with that nondegenerate part."""
    K = kan_extend(Z)
    ND = nondegenerate_part(K)
    maps = []
    for n, L in enumerate(Z.levels):
        w = "a" * n
        maps.append(Functor(L, ND.levels[n], {z: (w, z) for z in L.objects},
                            {m: (w, m) for m in L.source}))
    return maps, ND


def semi_map_problems(Z, W, maps) -> list[str]:
    """Check that levelwise functors Z_n → W_n commute with all faces."""
    problems = []
    for (n, i), dZ in Z.faces.items():
        if not dZ.then(maps[n - 1]).agrees_with(maps[n].then(W.d(n, i))):
            problems.append(f"does not commute with d_{i} at level {n}")
    return problems
