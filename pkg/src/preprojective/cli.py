"""Command-line interface.

Exit codes: 0 pass, 1 check failure, 2 configuration error, 3 window insufficient.
"""

import argparse
import itertools
import json
import re
import sys
from dataclasses import dataclass

from . import __version__
from .acceptance import FAIL, PASS, WINDOW, run_suite
from .algebra import Gamma
from .braids import BraidWord, WordError, bounded_equal, positive_class
from .complexes import ComplexError, FiniteModule, TwistedComplex, build_simple_resolution
from .export import dumps, export_dot, export_json, report_header
from .field import Field
from .homs import hom_cohomology
from .ideals import IdealError, braid_relation_check, verify_simple_resolution
from .quiver import QuiverError, parse_quiver
from .silting import (braid_to_silting, enumerate_interval, gamma_object, mutate_sequence,
                      word_equality)
from .tensor import WindowInsufficient

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG, EXIT_WINDOW = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    quiver_name: str = "A2"
    field: str = "Q"
    weight_bound: int = 10
    degree_window: tuple = (-4, 4)
    jobs: int = 1
    fmt: str = "text"
    explicit_w: bool = False

    def validate(self):
        if self.weight_bound < 0:
            raise ConfigError("weight bound must be non-negative")
        lo, hi = self.degree_window
        if lo > -2 or hi < 2:
            raise ConfigError("degree window must contain [-2, 2]")
        if self.jobs < 1:
            raise ConfigError("parallelism must be at least 1")
        try:
            Field.parse(self.field)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        return self

    def gamma(self):
        try:
            return Gamma(parse_quiver(self.quiver_name), Field.parse(self.field))
        except QuiverError as e:
            raise ConfigError(f"quiver: {e}") from None


def _window(text):
    m = re.fullmatch(r"\s*(-?\d+)\s*[:,]\s*(-?\d+)\s*", text)
    if not m:
        raise argparse.ArgumentTypeError("expected LO:HI, e.g. -4:4")
    return int(m.group(1)), int(m.group(2))


def _common(p, top):
    """Global options; subcommands accept them too so they may follow the verb."""
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--quiver", default=d("A2"), help="built-in name, arrow list or JSON (file)")
    p.add_argument("--weight-bound", "-W", type=int, default=d(None),
                   help="weight window (default 10)")
    p.add_argument("--field", default=d("Q"), help="Q or Fp:<prime>")
    p.add_argument("--degree-window", type=_window, default=d((-4, 4)), help="LO:HI (default -4:4)")
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes for Hom cells")
    p.add_argument("--report", default=d(None), help="also write the JSON report to this path")
    if top:
        p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser():
    p = argparse.ArgumentParser(prog="preprojective",
                                description="Computations over derived preprojective algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _common(p, top=True)
    sub = p.add_subparsers(dest="verb", required=True)

    _sub(sub, "gamma", help="letters, differential and path counts of Gamma")
    c = _sub(sub, "cohomology", help="dim H^p Hom(M, N) per (degree, weight)")
    c.add_argument("source", help="Gamma, P<i>, pS<i>, I:<word> or a complex JSON file")
    c.add_argument("target", help="as source, or S<i> for a simple module")
    s = _sub(sub, "spherical-check", help="Hom(S_i, S_i[p]) via pS_i")
    s.add_argument("vertex")
    r = _sub(sub, "resolve-simple", help="the resolution pS_i")
    r.add_argument("vertex")
    b = _sub(sub, "braid-map", help="the silting object I_a of a braid word")
    b.add_argument("word", nargs="+")
    e = _sub(sub, "braid-eq", help="compare two braid words through I_a")
    e.add_argument("w1")
    e.add_argument("w2")
    m = _sub(sub, "mutate", help="mutate Gamma along a sequence (i left, i' right)")
    m.add_argument("seq", nargs="*")
    v = _sub(sub, "verify", help="ideal-level checks")
    v.add_argument("what", choices=["braid-relations", "resolution"])
    v.add_argument("--all-pairs", action="store_true", help="every pair of vertices (default)")
    v.add_argument("--pair", nargs=2, metavar=("I", "J"))
    v.add_argument("--vertex")
    n = _sub(sub, "enumerate", help="silting objects between Gamma and Gamma[n]")
    n.add_argument("--interval", type=int, required=True)
    x = _sub(sub, "export", help="export an interval")
    fmt = x.add_mutually_exclusive_group(required=True)
    fmt.add_argument("--dot", action="store_true")
    fmt.add_argument("--json", dest="as_json", action="store_true")
    x.add_argument("--interval", type=int, default=1)
    x.add_argument("--output", "-o", help="file to write (default stdout)")
    k = _sub(sub, "check", help="run a check suite")
    k.add_argument("--suite", choices=["acceptance"], default="acceptance")
    k.add_argument("--only", type=int, nargs="*", help="run only these check ids")
    return p


def _sub(sub, name, **kw):
    q = sub.add_parser(name, **kw)
    _common(q, top=False)
    if name != "export":
        q.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                       help="machine-readable output")
    return q


def _vertex(G, token):
    for v in G.vertices:
        if str(v) == str(token):
            return v
    raise ConfigError(f"unknown vertex {token!r}")


def _object(G, spec, target=False):
    spec = spec.strip()
    if spec in ("Gamma", "G", "Γ"):
        return TwistedComplex.algebra(G)
    if spec.startswith("I:"):
        return braid_to_silting(G, spec[2:]).complex
    m = re.fullmatch(r"(pS|P|S)(\S+)", spec)
    if m:
        kind, v = m.group(1), _vertex(G, m.group(2))
        if kind == "P":
            return TwistedComplex.free(G, v)
        if kind == "pS":
            return build_simple_resolution(G, v)
        if not target:
            raise ConfigError("a simple module is only allowed as the target")
        return FiniteModule.simple(G, v)
    try:
        with open(spec) as fh:
            return TwistedComplex.from_json(G, json.load(fh))
    except FileNotFoundError:
        raise ConfigError(f"cannot read object {spec!r}") from None


def _complex_text(T):
    G = T.gamma
    lines = [f"generators ({len(T.gens)}):"]
    for k, g in enumerate(T.gens):
        lab = f"  label {g.label}" if g.label is not None else ""
        lines.append(f"  [{k}] e{g.vertex}Γ[{g.shift}]  weight {g.weight}{lab}")
    lines.append("delta:")
    for (r, c), x in sorted(T.delta.items()):
        lines.append(f"  {c} -> {r}: {x}")
    lines.append(f"g-vector: {T.g_vector()}")
    return "\n".join(lines)


class Output:
    def __init__(self, args, config):
        self.args, self.config = args, config
        self.data = report_header(config)
        self.text = []

    def say(self, line=""):
        self.text.append(str(line))

    def finish(self, code):
        self.data["exit_code"] = code
        if self.args.json:
            sys.stdout.write(dumps(self.data))
        else:
            if self.text:
                print("\n".join(self.text))
        if self.args.report:
            with open(self.args.report, "w") as fh:
                fh.write(dumps(self.data))
        return code


def cmd_gamma(G, cfg, out):
    out.say(f"Gamma({G.quiver.name or G.quiver}) over {G.field.name}")
    for l in G.letters:
        out.say(f"  {l.name:>6}: {l.source} -> {l.target}  degree {l.degree}  weight {l.weight}")
    for v in G.vertices:
        out.say(f"  d(t{v}) = {G.d_loop(v)}")
    W = cfg.weight_bound
    counts = {}
    for w in range(W + 1):
        for p in range(-(w // 2), 1):
            counts[(p, w)] = sum(len(G.weight_slice(p, w, s, t)) for s in G.vertices
                                 for t in G.vertices)
    out.say(f"paths by (degree, weight) up to weight {W}:")
    for w in range(W + 1):
        out.say(f"  w={w:>2}: " + "  ".join(f"p={p}:{counts[(p, w)]}" for p in range(-(w // 2), 1)))
    out.data["letters"] = [l.name for l in G.letters]
    out.data["path_counts"] = [{"p": p, "w": w, "n": n} for (p, w), n in sorted(counts.items())]
    return EXIT_PASS


def cmd_cohomology(G, cfg, out, args):
    M = _object(G, args.source)
    N = _object(G, args.target, target=True)
    t = hom_cohomology(M, N, cfg.weight_bound, cfg.degree_window, cfg.jobs)
    out.say(f"H^p Hom({args.source}, {args.target})")
    out.say(t.to_text())
    out.say("by degree: " + ", ".join(f"{p}:{d}" for p, d in sorted(t.by_degree().items()) if d))
    out.data["table"] = t.to_json()
    return EXIT_PASS


def cmd_spherical(G, cfg, out, args):
    i = _vertex(G, args.vertex)
    t = hom_cohomology(build_simple_resolution(G, i), FiniteModule.simple(G, i),
                       cfg.weight_bound, cfg.degree_window)
    dims = {p: t.get(p) or 0 for p in range(cfg.degree_window[0], cfg.degree_window[1] + 1)}
    ok = all(d == (1 if p in (0, 2) else 0) for p, d in dims.items())
    out.say(f"Hom(S_{i}, S_{i}[p]): " + ", ".join(f"{p}:{d}" for p, d in dims.items()))
    out.say(f"2-spherical: {'yes' if ok else 'NO'}")
    out.data.update({"check": "spherical", "vertex": i, "dims": dims, "verdict": ok})
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_resolve(G, cfg, out, args):
    i = _vertex(G, args.vertex)
    P = build_simple_resolution(G, i)
    out.say(f"pS_{i}")
    out.say(_complex_text(P))
    out.data["complex"] = P.to_json()
    return EXIT_PASS


def cmd_braid_map(G, cfg, out, args):
    w = BraidWord.parse(" ".join(args.word), G.vertices)
    M = braid_to_silting(G, w)
    ok, cell = M.certificate(cfg.weight_bound)
    out.say(f"I_a for a = {w}")
    out.say(_complex_text(M.complex))
    out.say(f"presilting in window W={cfg.weight_bound}: {'yes' if ok else f'NO, witness {cell}'}")
    out.data.update({"word": str(w), "object": M.to_json(), "presilting": ok,
                     "witness": cell})
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_braid_eq(G, cfg, out, args):
    w1 = BraidWord.parse(args.w1, G.vertices)
    w2 = BraidWord.parse(args.w2, G.vertices)
    verdict, why = word_equality(G, w1, w2)
    if w1.is_positive() and w2.is_positive():
        oracle = "EqualInBQ" if positive_class(w1, G.quiver) == positive_class(w2, G.quiver) \
            else "DistinctInBQ"
    else:
        oracle = "EqualInBQ" if bounded_equal(w1, w2, G.quiver) else "not found"
    out.say(f"{w1}  vs  {w2}: {verdict}" + (f" ({why})" if why else ""))
    out.say(f"rewriting oracle: {oracle}")
    out.data.update({"w1": str(w1), "w2": str(w2), "verdict": verdict, "oracle": oracle})
    return EXIT_PASS if verdict != "Unknown" else EXIT_FAIL


def cmd_mutate(G, cfg, out, args):
    seq = " ".join(args.seq)
    M = mutate_sequence(gamma_object(G), seq, cfg.weight_bound)
    out.say(f"{M.provenance}")
    out.say(_complex_text(M.complex))
    out.data["object"] = M.to_json()
    return EXIT_PASS


def cmd_verify(G, cfg, out, args):
    W = cfg.weight_bound if cfg.explicit_w else 8
    reports = []
    if args.what == "braid-relations":
        if args.pair:
            pairs = [(_vertex(G, args.pair[0]), _vertex(G, args.pair[1]))]
        else:
            pairs = list(itertools.combinations(G.vertices, 2))
        for i, j in pairs:
            if G.quiver.edges_between(i, j) > 1:
                out.say(f"  ({i},{j}): skipped, {G.quiver.edges_between(i, j)} arrows")
                continue
            reports.append(braid_relation_check(G, i, j, W))
    else:
        W = cfg.weight_bound
        vs = [_vertex(G, args.vertex)] if args.vertex else list(G.vertices)
        reports = [verify_simple_resolution(G, i, W) for i in vs]
    ok = all(reports)
    for r in reports:
        mark = "pass" if r else "FAIL"
        at = ",".join(str(r.params[k]) for k in ("i", "j") if k in r.params)
        out.say(f"  {r.check} ({at}): {mark}"
                + ("" if r else f"  first bad cell {r.cells[0]}"))
    out.say(f"verdict: {'pass' if ok else 'FAIL'} (W={W})")
    out.data.update({"check": args.what, "W": W, "reports": [r.to_json() for r in reports],
                     "verdict": "pass" if ok else "fail"})
    return EXIT_PASS if ok else EXIT_FAIL


def _interval(G, cfg, n):
    if not G.quiver.is_dynkin():
        raise ConfigError("interval enumeration needs a Dynkin quiver")
    return enumerate_interval(G, n, cfg.weight_bound)


def cmd_enumerate(G, cfg, out, args):
    slc = _interval(G, cfg, args.interval)
    out.say(f"silting objects M with Γ >= M >= Γ[{args.interval}]: {slc.count}")
    for k, M in enumerate(slc.nodes):
        out.say(f"  n{k}: g={M.g_vector()}  {M.provenance}")
    for a, b, lab in slc.edges:
        out.say(f"  n{a} -> n{b}  (mutation at {lab})")
    out.data["slice"] = slc.to_json()
    return EXIT_PASS


def cmd_export(G, cfg, out, args):
    slc = _interval(G, cfg, args.interval)
    text = export_dot(slc) if args.dot else export_json(slc, report_header(cfg))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS


def cmd_check(G, cfg, out, args):
    W = cfg.weight_bound if cfg.explicit_w else None
    results = run_suite(W, cfg.field, set(args.only) if args.only else None)
    for r in results:
        out.say(r.line())
    statuses = {r.status for r in results}
    code = EXIT_FAIL if FAIL in statuses else EXIT_WINDOW if WINDOW in statuses else EXIT_PASS
    out.say(f"{sum(r.status == PASS for r in results)}/{len(results)} passed")
    out.data.update({"suite": args.suite, "checks": [r.to_json() for r in results]})
    return code


COMMANDS = {
    "cohomology": cmd_cohomology, "spherical-check": cmd_spherical,
    "resolve-simple": cmd_resolve, "braid-map": cmd_braid_map, "braid-eq": cmd_braid_eq,
    "mutate": cmd_mutate, "verify": cmd_verify, "enumerate": cmd_enumerate,
    "export": cmd_export, "check": cmd_check,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_PASS
    cfg = RunConfig(args.quiver, args.field,
                    10 if args.weight_bound is None else args.weight_bound,
                    args.degree_window, args.jobs, "json" if args.json else "text",
                    args.weight_bound is not None)
    out = Output(args, cfg)
    try:
        cfg.validate()
        G = cfg.gamma()
        if args.verb == "gamma":
            code = cmd_gamma(G, cfg, out)
        else:
            code = COMMANDS[args.verb](G, cfg, out, args)
    except (ConfigError, WordError, IdealError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except WindowInsufficient as e:
        print(f"window insufficient: {e}", file=sys.stderr)
        out.data["error"] = str(e)
        return out.finish(EXIT_WINDOW)
    except ComplexError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    if args.verb == "export":
        return code
    return out.finish(code)
