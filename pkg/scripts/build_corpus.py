"""Write every corpus entry as a JSON document, so expensive spaces are built once.

    python3 scripts/build_corpus.py --out corpus_docs -N 4
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from pathlib import Path

from dspace import corpus
from dspace.documents import save


@dataclass
class BuildConfig:
    out: Path = Path("corpus_docs")
    truncation: int = 4
    names: list = field(default_factory=lambda: list(corpus.CORPUS))


def build_all(cfg: BuildConfig):
    cfg.out.mkdir(parents=True, exist_ok=True)
    for name in cfg.names:
        entry = corpus.CORPUS[name]
        t0 = time.perf_counter()
        obj = entry.build(cfg.truncation)
        path = cfg.out / f"{name}.json"
        path.write_text(save(entry.kind, obj), encoding="utf-8")
        print(f"{name:16s} {entry.kind:16s} {time.perf_counter() - t0:6.2f}s  {path}")


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=BuildConfig.out)
    p.add_argument("-N", "--truncation", type=int, default=BuildConfig.truncation)
    p.add_argument("names", nargs="*", help="corpus entries (default: all)")
    a = p.parse_args()
    build_all(BuildConfig(a.out, a.truncation, a.names or list(corpus.CORPUS)))


if __name__ == "__main__":
    main()
