"""Named example spaces used by the scripts, the CLI and the test-suite."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import constructors as c


@dataclass(frozen=True)
class Entry:
    name: str
    build: Callable           # N -> simplicial groupoid (or map / semi-simplicial)
    kind: str = "simplicial"  # "simplicial" | "map" | "semi-simplicial"
    moebius: bool | None = None
    note: str = ""


def _interval_map(N):
    C = c.divisor_poset(12)
    return c.nerve_inclusion(c.interval(C, 1, 6), C, N)


CORPUS = {e.name: e for e in [
    Entry("d12", lambda N: c.nerve(c.divisor_poset(12), N), moebius=True,
          note="divisor poset of 12"),
    Entry("d60", lambda N: c.nerve(c.divisor_poset(60), N), moebius=True,
          note="divisor poset of 60"),
    Entry("b3", lambda N: c.nerve(c.boolean_lattice(3), N), moebius=True,
          note="subsets of a 3-set"),
    Entry("b4", lambda N: c.nerve(c.boolean_lattice(4), N), moebius=True,
          note="subsets of a 4-set"),
    Entry("chain11", lambda N: c.split_nerve(c.chain(11), N, max(N, 11)), moebius=True,
          note="chain 0 < 1 < ... < 10, split presentation carrying levels up to 11"),
    Entry("chain3", lambda N: c.nerve(c.chain(3), N), moebius=True, note="chain 0 < 1 < 2"),
    Entry("fence", lambda N: c.nerve(c.fence(), N), moebius=True,
          note="two maximal chains of different lengths"),
    Entry("partial-ex", lambda N: c.nerve_partial(c.partial_ex(), N), moebius=True,
          note="{e, x} with x·x undefined: decomposition but not Segal"),
    Entry("z2", lambda N: c.nerve(c.z2(), N), moebius=False, note="group Z/2"),
    Entry("retraction", lambda N: c.nerve(c.retraction_category(), N), moebius=False,
          note="section-retraction pair r∘s = id"),
    Entry("fat-z2", lambda N: c.fat_nerve(c.z2(), N), moebius=True,
          note="fat nerve of the one-object groupoid Z/2"),
    Entry("fat-two-object", lambda N: c.fat_nerve(c.two_object_aut(), N), moebius=True,
          note="fat nerve of x → y with Aut(x) = Z/2"),
    Entry("interval-1-6", _interval_map, kind="map",
          note="nerve of [1,6] included in nerve of D(12)"),
    Entry("edge", lambda N: c.edge_semi(N), kind="semi-simplicial",
          note="a point and one edge, empty above"),
]}

SPACES = [n for n, e in CORPUS.items() if e.kind == "simplicial"]


def build(name, N=5):
    try:
        entry = CORPUS[name]
    except KeyError:
        raise KeyError(f"unknown corpus entry {name!r}; known: {', '.join(CORPUS)}") from None
    return entry.build(N)
