"""Command-line front end: ``dspace <command> ...``.

Exit codes: 0 all requested checks pass, 1 a check failed (witness printed),
2 invalid input, 3 inconclusive at the truncation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import constructors as cons
from . import corpus
from . import incidence as inc
from . import simplicial as simp
from .constructors import CategoryError
from .documents import Document, DocumentError, as_space, load, save
from .grpd import Check, GroupoidError

OK, FAILED, INVALID, INCONCLUSIVE = 0, 1, 2, 3
AXIOMS = ("decomposition", "segal", "complete", "stiff", "split")


# -- formatting -----------------------------------------------------------------

def fmt_id(x) -> str:
    if isinstance(x, tuple):
        if len(x) == 1:
            return fmt_id(x[0])
        return "(" + ",".join(fmt_id(y) for y in x) + ")"
    return str(x)


def jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Check):
        d = {"holds": x.ok}
        if not x.ok and x.witness is not None:
            d["witness"] = jsonable(x.witness)
        return d
    if isinstance(x, dict):
        return {(k if isinstance(k, str) else fmt_id(k)): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [jsonable(y) for y in x]
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if hasattr(x, "value"):
        return x.value
    return str(x)


def table(headers, rows) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _witness_text(w) -> str:
    return json.dumps(jsonable(w), ensure_ascii=False, sort_keys=True)


class Report:
    def __init__(self, command, truncation):
        self.data = {"command": command, "truncation": truncation}
        self.text = [f"{command}  (truncation N={truncation})"]
        self.code = OK

    def fail(self, code):
        # invalid > inconclusive > failed > ok for the final exit code
        rank = {OK: 0, FAILED: 1, INCONCLUSIVE: 2, INVALID: 3}
        if rank[code] > rank[self.code]:
            self.code = code

    def emit(self, as_json, out):
        if as_json:
            self.data["exit_code"] = self.code
            out.write(json.dumps(jsonable(self.data), ensure_ascii=False, sort_keys=True,
                                 indent=1) + "\n")
        else:
            out.write("\n".join(self.text) + "\n")


# -- loading ----------------------------------------------------------------------

def default_truncation():
    env = os.environ.get("DSPACE_TRUNCATION")
    if env:
        try:
            return int(env)
        except ValueError:
            raise DocumentError(f"DSPACE_TRUNCATION={env!r} is not an integer") from None
    return simp.DEFAULT_TRUNCATION


def _open(path, N):
    """A document from a file, or ``corpus:NAME`` for a built-in example."""
    if path.startswith("corpus:"):
        name = path.split(":", 1)[1]
        try:
            entry = corpus.CORPUS[name]
        except KeyError:
            raise DocumentError(f"unknown corpus entry {name!r}", path) from None
        obj = entry.build(N)
        return Document(entry.kind, obj, {})
    return load(path)


def _space(args):
    N = args.truncation
    doc = _open(args.file, N)
    X = as_space(doc, N)
    return X


# -- commands -----------------------------------------------------------------

def cmd_construct(args, out):
    N = args.truncation
    kind = args.kind
    if kind == "corpus":
        if not args.corpus:
            raise DocumentError("construct corpus needs --corpus NAME")
        doc = _open("corpus:" + args.corpus, N)
        obj = doc.obj
        text = save(doc.kind, obj)
    else:
        if not args.input:
            raise DocumentError(f"construct {kind} needs -i INPUT")
        doc = load(args.input)
        if kind == "nerve":
            if doc.kind not in ("category", "poset", "monoid", "group"):
                raise DocumentError(f"cannot take the nerve of a {doc.kind}", args.input)
            obj, out_kind = cons.nerve(doc.obj, N), "simplicial"
        elif kind == "fat-nerve":
            if doc.kind not in ("category", "poset", "monoid", "group"):
                raise DocumentError(f"cannot take the fat nerve of a {doc.kind}", args.input)
            obj, out_kind = cons.fat_nerve(doc.obj, N), "simplicial"
        elif kind == "nerve-partial":
            if doc.kind != "partial-monoid":
                raise DocumentError("nerve-partial needs a partial-monoid document", args.input)
            obj, out_kind = cons.nerve_partial(doc.obj, N), "simplicial"
        elif kind == "kan-extend":
            if doc.kind != "semi-simplicial":
                raise DocumentError("kan-extend needs a semi-simplicial document", args.input)
            obj, out_kind = simp.kan_extend(doc.obj), "simplicial"
        else:  # nondegenerate-part
            X = as_space(doc, N)
            obj, out_kind = simp.nondegenerate_part(X), "semi-simplicial"
        text = save(out_kind, obj)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        trunc = obj.target.truncation if hasattr(obj, "target") else obj.truncation
        rep = Report(f"construct {kind}", trunc)
        rep.data["output"] = args.output
        rep.text.append(f"wrote {args.output}")
        return rep
    out.write(text)
    return None


def cmd_check(args, out):
    X = _space(args)
    rep = Report("check", X.truncation)
    axioms = [a.strip() for a in args.axioms.split(",") if a.strip()]
    for a in axioms:
        if a not in AXIOMS:
            raise DocumentError(f"unknown axiom {a!r}; choose from {', '.join(AXIOMS)}", "--axioms")
    rows, results = [], {}
    for a in axioms:
        if a in ("decomposition", "segal"):
            v = simp.axiom_check(X, a)
            status, witness = v.status.value, v.witness
            if v.status is simp.Status.INCONCLUSIVE:
                rep.fail(INCONCLUSIVE)
        elif a == "split":
            r = simp.structure_report(X)
            status = r.split_status.value
            witness = r.split.witness if r.split is not None and not r.split else None
            if r.split is None:
                witness = {"reason": r.notes[0]}
                rep.fail(INCONCLUSIVE)
        else:
            c = simp.is_complete(X) if a == "complete" else simp.is_stiff(X)
            status = simp.Status.HOLDS.value if c else simp.Status.FAILS.value
            witness = c.witness
        if status == simp.Status.FAILS.value:
            rep.fail(FAILED)
        results[a] = {"status": status, **({"witness": witness} if witness else {})}
        rows.append((a, status, _witness_text(witness) if witness else ""))
    rep.data["axioms"] = results
    rep.text.append(table(("axiom", "status", "witness"), rows))
    return rep


def _length_str(v):
    return str(v)


def cmd_analyze(args, out):
    X = _space(args)
    rep = Report("analyze", X.truncation)
    s = simp.structure_report(X)
    rep.data["structure"] = s.as_dict()
    rows = [("complete", bool(s.complete), _witness_text(s.complete.witness) if not s.complete else ""),
            ("stiff", bool(s.stiff), _witness_text(s.stiff.witness) if not s.stiff else ""),
            ("split", s.split_status.value,
             _witness_text(s.split.witness) if s.split is not None and not s.split else "")]
    for note in s.notes:
        rep.text.append("note: " + note)
    if not s.complete:
        rep.text.append(table(("property", "value", "witness"), rows))
        rep.text.append("lengths, tightness and Möbius analysis need a complete space")
        rep.data["moebius"] = {"moebius": False, "reason": "not complete"}
        rep.fail(FAILED)
        return rep
    t = inc.tightness(X)
    m = inc.is_moebius_space(X)
    rows.append(("locally finite", True, ""))
    tight = t.status + (f"({t.max_length})" if t.max_length is not None else "")
    rows.append(("tightness", tight, _witness_text(t.witness) if t.witness else ""))
    rows.append(("Möbius", bool(m), m.reason or ""))
    rep.text.append(table(("property", "value", "witness"), rows))
    lt = inc.lengths(X)
    rep.data["tightness"] = t.as_dict()
    rep.data["moebius"] = m.as_dict()
    rep.data["lengths"] = [{"component": f, "length": str(lt[f]) if lt[f] is inc.TruncationExceeded
                            else lt[f]} for f in inc.keys_of(X)]
    rep.text.append("")
    rep.text.append(table(("component", "length"), [(fmt_id(f), _length_str(lt[f]))
                                                     for f in inc.keys_of(X)]))
    if t.status == "Inconclusive":
        rep.fail(INCONCLUSIVE)
        rep.text.append(f"tightness undecided at N={X.truncation}; try a larger --truncation")
    elif not m:
        rep.fail(FAILED)
    return rep


def cmd_coalgebra(args, out):
    X = _space(args)
    rep = Report("coalgebra", X.truncation)
    C = inc.coalgebra(X)
    show_tensor = args.tensor or not args.counit
    show_counit = args.counit or not args.tensor
    if show_tensor:
        trip = [[f, a, b, v] for f, a, b, v in C.triples()]
        rep.data["tensor"] = trip
        rep.text.append(table(("f", "a", "b", "c"), [(fmt_id(f), fmt_id(a), fmt_id(b), str(v))
                                                      for f, a, b, v in trip]))
    if show_counit:
        rep.data["counit"] = [{"component": f, "counit": C.counit[f]} for f in C.keys]
        if show_tensor:
            rep.text.append("")
        rep.text.append(table(("component", "counit"), [(fmt_id(f), str(C.counit[f]))
                                                        for f in C.keys]))
    return rep


def cmd_mobius(args, out):
    X = _space(args)
    rep = Report("mobius", X.truncation)
    try:
        mu = inc.moebius(X)
    except (inc.NotMoebius, simp.NotComplete) as exc:
        t = inc.tightness(X) if simp.is_complete(X) else None
        rep.data["refused"] = str(exc)
        rep.text.append(f"refused: {exc}")
        if t is not None and t.witness:
            rep.data["witness"] = t.witness
            rep.text.append("witness: " + _witness_text(t.witness))
        if t is not None and t.status == "Inconclusive":
            rep.text.append(f"tightness undecided at N={X.truncation}; try a larger --truncation")
            rep.fail(INCONCLUSIVE)
        else:
            rep.fail(FAILED)
        return rep
    lt = inc.lengths(X)
    rows = [{"component": f, "zeta": 1, "mu": mu[f], "length": lt[f]} for f in inc.keys_of(X)]
    rep.data["max_length"] = inc.tightness(X).max_length
    rep.data["table"] = rows
    rep.text.append(table(("component", "zeta", "mu", "length"),
                          [(fmt_id(r["component"]), 1, str(r["mu"]), r["length"]) for r in rows]))
    return rep


def cmd_verify(args, out):
    N = args.truncation
    if args.identity == "culf_hom":
        doc = _open(args.file, N)
        if doc.kind != "map":
            raise DocumentError("culf_hom needs a map document", args.file)
        res = inc.verify(None, "culf_hom", f=doc.obj)
        trunc = doc.obj.target.truncation
    else:
        X = _space(args)
        res = inc.verify(X, args.identity, s=args.s)
        trunc = X.truncation
    rep = Report(f"verify {args.identity}", trunc)
    rep.data["result"] = res.as_dict()
    line = f"{args.identity}: {res.status} ({res.checked} checks)"
    rep.text.append(line)
    if res.failure:
        rep.text.append("first failure: " + _witness_text(res.failure))
    if res.reason:
        rep.text.append("precondition: " + res.reason)
    if res.status != "pass":
        rep.fail(FAILED)
    return rep


def cmd_map(args, out):
    doc = _open(args.file, args.truncation)
    if doc.kind != "map":
        raise DocumentError("expected a map document", args.file)
    f = doc.obj
    rep = Report("map", f.target.truncation)
    if args.classify or not args.verify_hom:
        cls = simp.map_classify(f)
        rep.data["classification"] = cls
        rep.text.append(table(("property", "holds", "witness"),
                              [(k, bool(cls[k]), _witness_text(cls[k].witness) if not cls[k] else "")
                               for k in ("conservative", "ulf", "culf")]))
    if args.verify_hom:
        res = inc.verify(None, "culf_hom", f=f)
        rep.data["homomorphism"] = res.as_dict()
        rep.text.append(f"culf_hom: {res.status} ({res.checked} checks)")
        if res.failure:
            rep.text.append("first failure: " + _witness_text(res.failure))
        if res.reason:
            rep.text.append("precondition: " + res.reason)
        if res.status != "pass":
            rep.fail(FAILED)
    return rep


# -- parser -------------------------------------------------------------------

def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from None


def build_parser():
    p = argparse.ArgumentParser(prog="dspace", description="Finite decomposition spaces: "
                                "axiom checks, incidence coalgebras and Möbius inversion.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-N", "--truncation", type=int, default=None,
                        help="truncation level (default: $DSPACE_TRUNCATION or 5)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a simplicial groupoid document")
    c.add_argument("kind", choices=["nerve", "fat-nerve", "nerve-partial", "kan-extend",
                                    "nondegenerate-part", "corpus"])
    c.add_argument("-i", "--input")
    c.add_argument("-o", "--output")
    c.add_argument("--corpus", choices=sorted(corpus.CORPUS))

    c = sub.add_parser("check", parents=[common], help="decide structural axioms")
    c.add_argument("file", help="document path or corpus:NAME")
    c.add_argument("--axioms", default="decomposition,segal,complete")

    for name, helptext in [("analyze", "structure, lengths, tightness and Möbius verdict"),
                           ("mobius", "Möbius function table")]:
        c = sub.add_parser(name, parents=[common], help=helptext)
        c.add_argument("file")

    c = sub.add_parser("coalgebra", parents=[common], help="section coefficients and counit")
    c.add_argument("file")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--tensor", action="store_true")
    g.add_argument("--counit", action="store_true")

    c = sub.add_parser("verify", parents=[common], help="check an algebraic identity exactly")
    c.add_argument("file")
    c.add_argument("--identity", required=True, choices=inc.IDENTITIES)
    c.add_argument("--s", type=_fraction, default=Fraction(1, 2),
                   help="exponent s of the coboundary cochain (t = 1 - s)")

    c = sub.add_parser("map", parents=[common], help="classify a simplicial map")
    c.add_argument("file")
    c.add_argument("--classify", action="store_true")
    c.add_argument("--verify-hom", action="store_true")
    return p


COMMANDS = {"construct": cmd_construct, "check": cmd_check, "analyze": cmd_analyze,
            "coalgebra": cmd_coalgebra, "mobius": cmd_mobius, "verify": cmd_verify,
            "map": cmd_map}


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    try:
        if args.truncation is None:
            args.truncation = default_truncation()
        if args.truncation < 2:
            raise DocumentError("truncation must be at least 2", "--truncation")
        rep = COMMANDS[args.command](args, out)
    except (DocumentError, CategoryError, GroupoidError, simp.SimplicialError,
            inc.IncidenceError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        if getattr(args, "json", False):
            out.write(json.dumps({"error": str(msg), "exit_code": INVALID}, ensure_ascii=False) + "\n")
        else:
            err.write(f"dspace: error: {msg}\n")
        return INVALID
    if rep is not None:
        rep.emit(args.json, out)
        return rep.code
    return OK


if __name__ == "__main__":
    sys.exit(main())
