"""Print the Möbius verdict and, where it exists, the μ table of each corpus space.

    python3 scripts/moebius_tables.py d12 partial-ex z2
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from dspace import corpus
from dspace.cli import fmt_id, table
from dspace.incidence import is_moebius_space, keys_of, lengths, moebius


@dataclass
class TableConfig:
    truncation: int = 5
    names: list = field(default_factory=lambda: list(corpus.SPACES))


def report(name, N):
    X = corpus.build(name, N)
    v = is_moebius_space(X)
    print(f"== {name} (N={N}): {'Möbius' if v else 'not Möbius'}"
          + (f", {v.reason}" if v.reason else ""))
    if not v:
        return
    mu, T = moebius(X), lengths(X)
    print(table(("component", "mu", "length"),
                [(fmt_id(f), str(mu[f]), T[f]) for f in keys_of(X)]))


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("-N", "--truncation", type=int, default=TableConfig.truncation)
    p.add_argument("names", nargs="*", help="corpus spaces (default: all)")
    a = p.parse_args()
    cfg = TableConfig(a.truncation, a.names or list(corpus.SPACES))
    for name in cfg.names:
        report(name, cfg.truncation)
        print()


if __name__ == "__main__":
    main()
