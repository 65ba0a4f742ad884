"""``endo`` command line: ``endo end|operad|verify``.

Exit codes: 0 success, 1 bad input (JSON, schema, invalid category or
functor), 2 a verification failed, 3 an enumeration guard was exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import io as jio
from .endcalc import DEFAULT_GUARD, endomorphism_monoid, endomorphism_operad, whisker_map
from .errors import (BaseMismatch, EndoError, GuardExceeded, Report, SchemaError, ShapeError,
                     VerificationError)
from .exactla import ONE, ZERO, Matrix, format_rat
from .fincat import validate_category, validate_functor
from .operadkit import composition_keys, operad_to_json, validate_operad
from .vbase import FINSET, QVECT

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_GUARD = 0, 1, 2, 3
SUITES = ("axioms", "adjunction", "oracle", "whisker", "faithfulness")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class RunConfig:
    base: str | None
    category: str | None
    functor: str | None
    monoid: str | None
    whisker: str | None
    arity_cap: int
    guard: int
    fmt: str
    co: bool
    arity_cap_given: bool = False


@dataclass
class Outcome:
    doc: dict
    text: list
    code: int = EXIT_OK


# -- input ------------------------------------------------------------------------


def _guard(flag):
    if flag is not None:
        g = flag
    else:
        env = os.environ.get("ENDO_GUARD")
        if env is None:
            return DEFAULT_GUARD
        try:
            g = int(env)
        except ValueError:
            raise SchemaError(f"ENDO_GUARD={env!r} is not an integer") from None
    if g < 1:
        raise SchemaError("guard must be at least 1")
    return g


def _need(path, flag):
    if path is None:
        raise SchemaError(f"{flag} is required here")
    return path


def _load_category(cfg, strict=True):
    c = jio.category_from_json(jio.read_json(_need(cfg.category, "--category")))
    rep = validate_category(c)
    if strict and not rep.ok:
        raise SchemaError(f"invalid category: {rep.first}")
    return c, rep


def _load_functor(cfg, c, strict=True):
    f = jio.functor_from_json(jio.read_json(_need(cfg.functor, "--functor")), c, cfg.base)
    rep = f.validate()
    if strict and not rep.ok:
        raise SchemaError(f"invalid functor: {rep.first}")
    return f, rep


def _load_monoid(cfg):
    m = jio.monoid_from_json(jio.read_json(_need(cfg.monoid, "--monoid")))
    if cfg.base is not None and m.base != cfg.base:
        raise SchemaError(f"monoid lives over {m.base}, not {cfg.base}")
    return m


# -- formatting ---------------------------------------------------------------------


def _count(n, noun):
    return f"{n} {noun}" if n == 1 else f"{n} {noun}s"


def _fmt_vec(v):
    return "[" + " ".join(format_rat(x) for x in v) + "]"


def _fmt_mat(m: Matrix):
    if m.rows == 0 or m.cols == 0:
        return f"0 ({m.rows}x{m.cols})"
    return "[" + "; ".join(" ".join(format_rat(x) for x in r) for r in m.data) + "]"


def _fmt_fn(fn, dom, cod):
    return "{" + ", ".join(f"{a}->{cod.elements[fn[i]]}" for i, a in enumerate(dom.elements)) + "}"


def _report_doc(rep: Report):
    doc = {"subject": rep.subject, "ok": rep.ok, "failures": len(rep.failures)}
    if rep.first is not None:
        doc["first"] = {"axiom": rep.first.axiom, "witness": [str(w) for w in rep.first.witness],
                        "detail": rep.first.detail}
    if rep.info:
        doc["info"] = {k: v for k, v in rep.info.items()}
    return doc


def _report_line(rep: Report):
    line = str(rep)
    if rep.info:
        line += "  " + ", ".join(f"{k}={v}" for k, v in rep.info.items())
    return line


# -- end ----------------------------------------------------------------------------


def _end_outcome(e, f):
    objs = list(f.source.objects)
    if e.base == FINSET:
        elems = e.nat.elements
        doc = {
            "command": "end", "base": FINSET, "objects": objs,
            "carrier": {"size": e.size},
            "projections": {x: [[f.fobj(x).elements[i] for i in s[k]] for s in elems]
                            for k, x in enumerate(objs)},
            "unit": e.unit,
            "table": [list(r) for r in e.mult],
        }
        text = [f"end over {FINSET}: {_count(len(objs), 'object')}",
                f"carrier: {_count(e.size, 'element')}"]
        for i, s in enumerate(elems):
            comps = "  ".join(f"{x}: {_fmt_fn(s[k], f.fobj(x), f.fobj(x))}" for k, x in enumerate(objs))
            text.append(f"  e{i}  {comps}" if comps else f"  e{i}")
        text.append(f"unit: e{e.unit}")
        text.append("multiplication (row * column):")
        w = len(str(max(e.size - 1, 0))) + 1
        text.append(" " * (w + 3) + " ".join(f"e{j}".rjust(w) for j in range(e.size)))
        for i, row in enumerate(e.mult):
            text.append(f"  {('e' + str(i)).rjust(w)} " + " ".join(f"e{k}".rjust(w) for k in row))
        return Outcome(doc, text)
    k = e.size
    consts = [[list(e.mult.column(i * k + j)) for j in range(k)] for i in range(k)]
    basis = [{x: e.component(x, _unit_vec(k, i)) for x in objs} for i in range(k)]
    doc = {
        "command": "end", "base": QVECT, "objects": objs,
        "carrier": {"dim": k, "basis": [{x: b[x].tolist() for x in objs} for b in basis]},
        "projections": {x: e.projection(x).tolist() for x in objs},
        "unit": [format_rat(c) for c in e.unit],
        "structure_constants": [[[format_rat(c) for c in v] for v in row] for row in consts],
    }
    text = [f"end over {QVECT}: {_count(len(objs), 'object')}", f"carrier: dim {k}"]
    for i, b in enumerate(basis):
        comps = "  ".join(f"{x}: {_fmt_mat(b[x])}" for x in objs)
        text.append(f"  b{i}  {comps}" if comps else f"  b{i}")
    text.append(f"unit: {_fmt_vec(e.unit)}")
    text.append("structure constants:")
    for i in range(k):
        for j in range(k):
            text.append(f"  b{i}*b{j} = {_fmt_vec(consts[i][j])}")
    text.append("projections:")
    for x in objs:
        text.append(f"  {x}: {_fmt_mat(e.projection(x))}")
    return Outcome(doc, text)


def _unit_vec(n, i):
    return tuple(ONE if j == i else ZERO for j in range(n))


def cmd_end(cfg: RunConfig) -> Outcome:
    c, _ = _load_category(cfg)
    f, _ = _load_functor(cfg, c)
    return _end_outcome(endomorphism_monoid(f, cfg.guard), f)


# -- operad -------------------------------------------------------------------------


def cmd_operad(cfg: RunConfig) -> Outcome:
    c, _ = _load_category(cfg)
    f, _ = _load_functor(cfg, c)
    if f.base != QVECT:
        raise BaseMismatch("operads of functors need the qvect base")
    fo = endomorphism_operad(f, cfg.arity_cap, co=cfg.co)
    p = fo.operad
    kind = "coendomorphism" if cfg.co else "endomorphism"
    doc = {"command": "operad", "kind": kind, "dims": list(p.dims)}
    doc.update(operad_to_json(p))
    text = [f"{kind} operad, arity cap {p.cap}", "dims: " + " ".join(map(str, p.dims))]
    for n in range(p.cap + 1):
        text.append(f"arity {n}: dim {p.dims[n]}")
        for k, g in enumerate(p.seq.gens[n]):
            text.append(f"  s{k + 1}: {_fmt_mat(g)}")
    text.append(f"unit: {_fmt_vec(p.unit)}")
    text.append("partial compositions (m, n, i):")
    for m, n, i in composition_keys(p.cap):
        text.append(f"  ({m}, {n}, {i}): {_fmt_mat(p.comps[(m, n, i)])}")
    return Outcome(doc, text)


# -- verify -------------------------------------------------------------------------


def _verdict(suite, reports, extra=None):
    ok = all(r.ok for r in reports)
    doc = {"command": "verify", "suite": suite, "pass": ok,
           "reports": [_report_doc(r) for r in reports]}
    if extra:
        doc.update(extra)
    text = [f"verify {suite}: {'PASS' if ok else 'FAIL'}"] + ["  " + _report_line(r) for r in reports]
    return Outcome(doc, text, EXIT_OK if ok else EXIT_VERIFY)


def _verify_axioms(cfg):
    reports = []
    if cfg.category is None and cfg.monoid is None:
        raise SchemaError("axioms suite needs --category or --monoid")
    if cfg.monoid is not None:
        reports.append(_load_monoid(cfg).check_axioms())
    if cfg.category is not None:
        c, crep = _load_category(cfg, strict=False)
        crep.info["objects"] = len(c.objects)
        crep.info["morphisms"] = len(c.morphisms)
        reports.append(crep)
        if crep.ok and cfg.functor is not None:
            f, frep = _load_functor(cfg, c, strict=False)
            reports.append(frep)
            if frep.ok:
                e = endomorphism_monoid(f, cfg.guard)
                mrep = e.check_axioms()
                mrep.subject = "end monoid"
                mrep.info["size" if f.base == FINSET else "dim"] = e.size
                reports.append(mrep)
                if f.base == QVECT and cfg.arity_cap_given:
                    fo = endomorphism_operad(f, cfg.arity_cap, co=cfg.co)
                    orep = validate_operad(fo.operad)
                    orep.subject = "coendomorphism operad" if cfg.co else "endomorphism operad"
                    orep.info["dims"] = " ".join(map(str, fo.dims))
                    reports.append(orep)
    return _verdict("axioms", reports)


def _verify_adjunction(cfg):
    from .oracle import exhaustive_adjunction_check
    c, _ = _load_category(cfg)
    f, _ = _load_functor(cfg, c)
    m = _load_monoid(cfg)
    if m.base != FINSET or f.base != FINSET:
        raise BaseMismatch("the adjunction suite enumerates finite-set instances only")
    rep = exhaustive_adjunction_check(m, f, cfg.guard)
    out = _verdict("adjunction", [rep], {"monoid_maps": rep.info["monoid maps"],
                                         "families": rep.info["families"]})
    out.text.insert(1, f"  monoid maps = families: {rep.info['monoid maps']} = {rep.info['families']}")
    return out


def _verify_oracle(cfg):
    from . import oracle
    c, _ = _load_category(cfg)
    f, _ = _load_functor(cfg, c)
    rep = Report("oracle")
    e = endomorphism_monoid(f, cfg.guard)
    if f.base == FINSET:
        fams, table, unit = oracle.enumerate_end_monoid(f, cfg.guard)
        rep.info["engine"] = e.size
        rep.info["oracle"] = len(fams)
        engine = list(e.nat.elements)
        brute = [s.as_indices(f, f) for s in fams]
        if engine != brute:
            diff = next((i for i in range(max(len(engine), len(brute)))
                         if i >= len(engine) or i >= len(brute) or engine[i] != brute[i]))
            rep.fail("carrier", (diff,), "engine and enumeration disagree")
        elif [list(r) for r in e.mult] != table or e.unit != unit:
            rep.fail("monoid", (), "multiplication or unit differs")
    else:
        sub = oracle.linear_nat_oracle(f, f)
        rep.info["engine"] = e.size
        rep.info["oracle"] = sub.dim
        if sub != e.nat.subspace:
            rep.fail("carrier", (), "kernel and fraction-free kernel differ")
    return _verdict("oracle", [rep])


def _verify_whisker(cfg):
    c, _ = _load_category(cfg)
    f, _ = _load_functor(cfg, c)
    phi = jio.catfunctor_from_json(jio.read_json(_need(cfg.whisker, "--whisker")), c)
    srep = validate_category(phi.source)
    if not srep.ok:
        raise SchemaError(f"invalid source category: {srep.first}")
    prep = validate_functor(phi)
    if not prep.ok:
        raise SchemaError(f"invalid whiskering functor: {prep.first}")
    e = endomorphism_monoid(f, cfg.guard)
    w = whisker_map(e, phi, cfg.guard)
    rep = w.report
    rep.info.update({"source": e.size, "target": w.target.size,
                     "injective": w.injective, "surjective": w.surjective, "iso": w.iso})
    extra = {}
    if w.table is not None:
        extra["map"] = list(w.table)
    else:
        extra["matrix"] = w.matrix.tolist()
    out = _verdict("whisker", [rep], extra)
    out.text.append("  map: " + (" ".join(f"e{i}->e{k}" for i, k in enumerate(w.table))
                                 if w.table is not None else _fmt_mat(w.matrix)))
    return out


def _verify_faithfulness(cfg):
    from .repcat import faithfulness_probe
    m = _load_monoid(cfg)
    if m.base != QVECT:
        raise BaseMismatch("the faithfulness probe takes an algebra")
    ax = m.check_axioms()
    if not ax.ok:
        raise SchemaError(f"not a unital associative algebra: {ax.first}")
    pr = faithfulness_probe(m)
    rep = Report("faithfulness")
    rep.info.update({"dim": pr.dim, "rank": pr.rank})
    if not pr.passed:
        rep.fail("injectivity", (pr.rank, pr.dim), "regular representation is not faithful")
    return _verdict("faithfulness", [rep], {"dim": pr.dim, "rank": pr.rank})


VERIFY = {
    "axioms": _verify_axioms,
    "adjunction": _verify_adjunction,
    "oracle": _verify_oracle,
    "whisker": _verify_whisker,
    "faithfulness": _verify_faithfulness,
}


def cmd_verify(cfg: RunConfig, suite: str) -> Outcome:
    if suite not in VERIFY:
        raise SchemaError(f"unknown suite {suite!r}")
    return VERIFY[suite](cfg)


# -- driver -------------------------------------------------------------------------


def _parser():
    common = _Parser(add_help=False)
    common.add_argument("--base", choices=(FINSET, QVECT))
    common.add_argument("--category", metavar="JSON")
    common.add_argument("--functor", metavar="JSON")
    common.add_argument("--monoid", metavar="JSON")
    common.add_argument("--arity-cap", type=int, metavar="N")
    common.add_argument("--guard", type=int, metavar="N",
                        help=f"enumeration bound (default $ENDO_GUARD or {DEFAULT_GUARD})")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--co", action="store_true", help="use the coendomorphism operad")
    p = _Parser(prog="endo", description="Ends, endomorphism monoids and operads of functors.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("end", parents=[common], help="endomorphism monoid of a functor")
    sub.add_parser("operad", parents=[common], help="truncated (co)endomorphism operad")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--whisker", metavar="JSON", help="functor into the category (whisker suite)")
    return p


def _render(out: Outcome, fmt):
    if fmt == "json":
        return jio.dumps(out.doc)
    return "\n".join(out.text) + "\n"


def run(argv=None):
    """Return ``(exit code, stdout text, stderr text)``."""
    try:
        args = _parser().parse_args(argv)
    except UsageError as exc:
        return EXIT_INPUT, "", f"{exc}\n"
    try:
        cap_given = args.arity_cap is not None
        cap = args.arity_cap if cap_given else 3
        if cap < 1:
            raise SchemaError("arity cap must be at least 1")
        cfg = RunConfig(args.base, args.category, args.functor, args.monoid,
                        getattr(args, "whisker", None), cap, _guard(args.guard), args.format,
                        args.co, cap_given)
        if args.command == "end":
            out = cmd_end(cfg)
        elif args.command == "operad":
            out = cmd_operad(cfg)
        else:
            out = cmd_verify(cfg, args.suite)
    except GuardExceeded as exc:
        return EXIT_GUARD, "", f"endo: guard exceeded: {exc}\n"
    except (SchemaError, ShapeError, BaseMismatch) as exc:
        return EXIT_INPUT, "", f"endo: error: {exc}\n"
    except VerificationError as exc:
        return EXIT_VERIFY, "", f"endo: verification failed: {exc}\n"
    except EndoError as exc:
        return EXIT_INPUT, "", f"endo: error: {exc}\n"
    return out.code, _render(out, cfg.fmt), ""


def main(argv=None):
    code, out, err = run(argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
