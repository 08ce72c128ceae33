"""Command line interface: ``capforge <command> ...``.

Exit status is 0 on success, 1 when a verification fails, and 2 for bad
arguments or inputs that miss a construction's hypotheses.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .errors import (
    BadParameters,
    CapforgeError,
    DimensionMismatch,
    HypothesisViolated,
    NoValidW,
    NotAnArc,
    PreconditionViolated,
    TooLarge,
    TooSmall,
    VerificationFailed,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Out:
    """Collects a report; prints text lines or one JSON document."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.data: dict = {}

    def line(self, text: str) -> None:
        if not self.as_json:
            print(text)

    def put(self, **kw) -> None:
        self.data.update(kw)

    def flush(self) -> None:
        if self.as_json:
            print(json.dumps(self.data, indent=2, sort_keys=True, default=str))


# field-info


def cmd_field_info(args, out: _Out) -> int:
    from .gf2e import FieldCtx, modulus_table

    F = FieldCtx(args.h)
    tab = modulus_table()
    out.put(h=F.h, q=F.q, modulus=hex(F.modulus), primitive=F.primitive, table_version=tab["version"])
    out.line(f"GF(2^{F.h}) q={F.q} modulus={F.modulus:#x} primitive element={F.primitive}")
    out.line(f"pinned modulus table version {tab['version']}")
    return EXIT_OK


# arcs


def _write_or_print(text: str, path: str | None, out: _Out) -> None:
    if path:
        Path(path).write_text(text)
        out.put(output=path)
        out.line(f"wrote {path}")
    elif out.as_json:
        out.put(file=text)
    else:
        sys.stdout.write(text)


def _arc_summary(K, out: _Out, with_profile: bool = True) -> None:
    from .arcs.core import profile

    out.put(q=K.q, k=len(K), complete=K.is_complete())
    out.line(f"arc q={K.q} k={len(K)} complete={K.is_complete()}")
    if with_profile:
        prof = profile(K)
        out.put(beta=prof.beta, p=prof.p, sum_points=[p.coords for p in prof.sum_points],
                affinely_complete=prof.affinely_complete, uncovered=len(prof.uncovered))
        sp = ", ".join(str(p.coords) for p in prof.sum_points[:8])
        more = " ..." if prof.beta > 8 else ""
        out.line(f"beta={prof.beta} p={prof.p} sum-points: {sp}{more}")
        out.line(f"affinely complete={prof.affinely_complete} uncovered={len(prof.uncovered)}")


def cmd_arc(args, out: _Out) -> int:
    from .io import dumps_arc, read_arc

    kind = args.arc_cmd
    if kind == "greedy":
        from .arcs.greedy import greedy_complete
        from .gf2e import field

        res = greedy_complete(None, field(args.q), rng_seed=args.seed, iterations=args.iterations,
                              affine=args.affine, n_random=args.n_random, target_size=args.target,
                              slack=args.slack)
        out.put(runs=res.runs, best=len(res.arc))
        out.line(f"{res.runs} runs, smallest {'affinely ' if args.affine else ''}complete arc: {len(res.arc)}")
        _write_or_print(dumps_arc(res.arc), args.out, out)
        return EXIT_OK
    if kind in ("kw", "kwprime", "abatangelo"):
        from .arcs import families

        if kind == "kw":
            K = families.construct_kw(args.q, args.d)
        elif kind == "kwprime":
            K = families.construct_kw_prime(args.q)
        else:
            K = families.construct_abatangelo(args.q)
        _arc_summary(K, out, with_profile=args.profile)
        _write_or_print(dumps_arc(K), args.out, out)
        return EXIT_OK
    K = read_arc(args.file)
    if kind == "profile":
        from .arcs.core import profile

        _arc_summary(K, out)
        prof = profile(K)
        out.put(cov_infty=sorted(prof.cov_infty), s_infty=sorted(prof.s_infty),
                s_m={str(m): sorted(v) for m, v in prof.s_m.items()})
        out.line(f"Cov_inf = {sorted(prof.cov_infty)}")
        out.line(f"S_inf = {sorted(prof.s_infty)}")
        return EXIT_OK
    if kind == "normalize":
        from .arcs.normalize import normalize_arc

        psi, K2 = normalize_arc(K, args.target)
        out.put(projectivity=[list(r) for r in psi.matrix])
        out.line(f"projectivity rows: {[list(r) for r in psi.matrix]}")
        _write_or_print(dumps_arc(K2), args.out, out)
        return EXIT_OK
    if kind == "verify":
        complete = K.is_complete()
        out.put(q=K.q, k=len(K), arc=True, complete=complete)
        out.line(f"arc of {len(K)} points in PG(2,{K.q}); complete={complete}")
        return EXIT_OK if complete or not args.require_complete else EXIT_FAIL
    raise AssertionError(kind)


# caps


def _report(C, rep, out: _Out, t_build: float) -> None:
    out.put(N=C.N, q=C.q, n=len(C), provenance=C.provenance.format(), verification=rep.as_dict() if rep else None,
            build_seconds=round(t_build, 3))
    out.line(f"cap N={C.N} q={C.q} n={len(C)} provenance={C.provenance.format()}")
    if rep is None:
        out.line("verification: none")
    else:
        out.line(f"verification ({rep.level}): cap={rep.is_cap} complete={rep.complete} "
                 f"uncovered={rep.n_uncovered} [{rep.seconds:.2f}s]")


def cmd_cap(args, out: _Out) -> int:
    from .caps.core import verify
    from .io import dumps_cap, read_arc, read_cap

    if args.cap_cmd == "build":
        from .caps.builders import BUILDERS, dimension_to_s
        from .caps.pipeline import arc_for_case

        s = dimension_to_s(args.case, args.dim)
        t0 = time.perf_counter()
        if args.arc:
            K = read_arc(args.arc)
            if args.normalize:
                K = arc_for_case(args.case, K.q, args.seed, K=K)
        else:
            if args.q is None:
                raise BadParameters("give --arc FILE or --q Q")
            K = arc_for_case(args.case, args.q, args.seed)
        out.put(arc_k=len(K))
        C = BUILDERS[args.case](K, s, check=not args.no_check, verify_level="none", workers=args.workers)
        t_build = time.perf_counter() - t0
        rep = verify(C, level=args.verify, workers=args.workers, rng_seed=args.seed) if args.verify != "none" else None
        _report(C, rep, out, t_build)
        path = args.out or f"cap-{args.case}-q{K.q}-M{args.dim}.txt"
        Path(path).write_text(dumps_cap(C))
        out.put(output=path)
        out.line(f"wrote {path}")
        if rep is not None and not (rep.is_cap and (rep.complete or args.no_check)):
            return EXIT_FAIL
        return EXIT_OK
    if args.cap_cmd == "verify":
        C = read_cap(args.file)
        rep = verify(C, level=args.level, workers=args.workers, rng_seed=args.seed)
        _report(C, rep, out, 0.0)
        if rep.uncovered and args.show_uncovered:
            for p in rep.uncovered[: args.show_uncovered]:
                out.line("  uncovered " + ",".join(map(str, p.coords)))
        out.put(uncovered_points=[p.coords for p in rep.uncovered[:1000]])
        return EXIT_OK if rep.is_cap and rep.complete is not False else EXIT_FAIL
    raise AssertionError(args.cap_cmd)


# codes


def _load_cap_like(path: str):
    from .io import arc_as_cap, read_any
    from .arcs.core import PlaneArc

    obj = read_any(path)
    return arc_as_cap(obj) if isinstance(obj, PlaneArc) else obj


def cmd_code(args, out: _Out) -> int:
    from .codes import cap_to_code, covering_radius_is_2, min_distance_at_least_4

    spec = cap_to_code(_load_cap_like(args.file))
    if args.code_cmd == "export":
        _write_or_print(spec.columns_text(), args.out, out)
        return EXIT_OK
    out.put(n=spec.n, k=spec.k, q=spec.q, r=spec.r)
    out.line(f"code {spec!r} (redundancy {spec.r})")
    ok = True
    do_all = not args.d4 and not args.cr2
    if args.d4 or do_all:
        d4 = min_distance_at_least_4(spec)
        out.put(d4=d4)
        out.line(f"minimum distance >= 4: {d4}")
        ok &= d4
    if args.cr2 or do_all:
        cr2 = covering_radius_is_2(spec)
        out.put(cr2=cr2, syndromes=spec.q**spec.r)
        out.line(f"covering radius 2 over {spec.q ** spec.r} syndromes: {cr2}")
        ok &= cr2
    return EXIT_OK if ok else EXIT_FAIL


# bounds, small-q arc rows, conjecture scan


def cmd_bounds(args, out: _Out) -> int:
    from .caps.bounds import bounds_report

    row = bounds_report(args.N, args.q, t2=args.t2, t2A=args.t2A, t2S=args.t2S, t2Splus=args.t2Splus)
    d = row.as_dict()
    out.put(**d)
    out.line(f"N={args.N} q={args.q} inputs={d['inputs']}")
    for k, v in d["bounds"].items():
        out.line(f"  {k:16s} {v}")
    name, val = row.best()
    out.put(best=[name, str(val)])
    out.line(f"smallest: {name} = {val}")
    return EXIT_OK


def cmd_table1(args, out: _Out) -> int:
    from .arcs.search import TABLE1_TARGETS, table1_row

    qs = args.q or sorted(TABLE1_TARGETS)
    rows = []
    ok = True
    for q in qs:
        r = table1_row(q, rng_seed=args.seed, iterations=args.iterations)
        rows.append(dict(q=q, k=r.k, p=r.p, beta=r.beta, lhs=r.lhs, ok=r.ok, greedy_runs=r.greedy_runs))
        out.line(r.format())
        ok &= r.ok and r.arc.is_complete()
    out.put(rows=rows)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_conjecture(args, out: _Out) -> int:
    from .arcs.search import conjecture_scan

    rep = conjecture_scan(args.q, args.trials, rng_seed=args.seed)
    out.put(q=rep.q, trials=rep.trials, successes=rep.successes, failures=rep.failures, sizes=rep.sizes,
            projectivities_tried=rep.projectivities_tried)
    out.line(f"q={rep.q}: {rep.successes}/{rep.trials} random complete arcs have a one-sum-point image")
    return EXIT_OK if rep.failures == 0 else EXIT_FAIL


# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--workers", type=int, default=1, help="threads for coverage checks")

    p = argparse.ArgumentParser(prog="capforge", description="Complete caps in PG(N, q), q even.",
                                parents=[common])
    p.add_argument("--version", action="version", version=f"capforge {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    f = sub.add_parser("field-info", parents=[common], help="pinned field parameters")
    f.add_argument("--h", type=int, required=True)

    a = sub.add_parser("arc", parents=[common], help="plane arcs")
    asub = a.add_subparsers(dest="arc_cmd", required=True)
    g = asub.add_parser("greedy", parents=[common])
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--iterations", type=int, default=100)
    g.add_argument("--affine", action="store_true")
    g.add_argument("--n-random", type=int, default=0)
    g.add_argument("--slack", type=int, default=0)
    g.add_argument("--target", type=int)
    g.add_argument("-o", "--out")
    for name in ("kw", "kwprime", "abatangelo"):
        x = asub.add_parser(name, parents=[common])
        x.add_argument("--q", type=int, required=True)
        x.add_argument("--profile", action="store_true", help="also report sum-points")
        x.add_argument("-o", "--out")
        if name == "kw":
            x.add_argument("--d", type=int)
    x = asub.add_parser("profile", parents=[common])
    x.add_argument("file")
    x = asub.add_parser("normalize", parents=[common])
    x.add_argument("file")
    x.add_argument("--target", required=True, choices=["001", "011", "sinf", "parabola-free", "star", "affine-sinf"])
    x.add_argument("-o", "--out")
    x = asub.add_parser("verify", parents=[common])
    x.add_argument("file")
    x.add_argument("--require-complete", action="store_true")

    c = sub.add_parser("cap", parents=[common], help="cap constructions")
    csub = c.add_subparsers(dest="cap_cmd", required=True)
    b = csub.add_parser("build", parents=[common])
    b.add_argument("--case", required=True, choices=["1e", "2e", "3e", "1o", "3o"])
    b.add_argument("--arc", help="arc file (already normalized unless --normalize)")
    b.add_argument("--normalize", action="store_true", help="normalize the --arc input for the case")
    b.add_argument("--q", type=int)
    b.add_argument("--dim", type=int, required=True)
    b.add_argument("--seed", type=int, default=1)
    b.add_argument("--verify", default="auto", choices=["auto", "none", "sampled", "exhaustive"])
    b.add_argument("--no-check", action="store_true", help="skip hypothesis checks")
    b.add_argument("-o", "--out")
    v = csub.add_parser("verify", parents=[common])
    v.add_argument("file")
    v.add_argument("--level", default="auto", choices=["auto", "sampled", "exhaustive"])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--show-uncovered", type=int, default=0, metavar="N")

    d = sub.add_parser("code", parents=[common], help="parity-check codes of caps")
    dsub = d.add_subparsers(dest="code_cmd", required=True)
    e = dsub.add_parser("export", parents=[common])
    e.add_argument("file")
    e.add_argument("--format", default="columns-text", choices=["columns-text"])
    e.add_argument("-o", "--out")
    k = dsub.add_parser("check", parents=[common])
    k.add_argument("file")
    k.add_argument("--d4", action="store_true")
    k.add_argument("--cr2", action="store_true")

    bd = sub.add_parser("bounds", parents=[common], help="upper bounds on t_2(N, q)")
    bd.add_argument("--N", type=int, required=True)
    bd.add_argument("--q", type=int, required=True)
    bd.add_argument("--t2", type=int)
    bd.add_argument("--t2A", type=int)
    bd.add_argument("--t2S", type=int)
    bd.add_argument("--t2Splus", type=int)

    t = sub.add_parser("table1", parents=[common], help="small-q arc parameters")
    t.add_argument("--q", type=int, action="append", choices=[8, 16, 32, 64])
    t.add_argument("--seed", type=int, default=1)
    t.add_argument("--iterations", type=int)

    cs = sub.add_parser("conjecture-scan", parents=[common], help="one-sum-point images of random arcs")
    cs.add_argument("--q", type=int, required=True)
    cs.add_argument("--trials", type=int, default=20)
    cs.add_argument("--seed", type=int, default=0)
    return p


COMMANDS = {
    "field-info": cmd_field_info,
    "arc": cmd_arc,
    "cap": cmd_cap,
    "code": cmd_code,
    "bounds": cmd_bounds,
    "table1": cmd_table1,
    "conjecture-scan": cmd_conjecture,
}

_USAGE_ERRORS = (BadParameters, HypothesisViolated, PreconditionViolated, NoValidW, NotAnArc, DimensionMismatch,
                 TooLarge, TooSmall, ValueError, FileNotFoundError)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    out = _Out(args.json)
    try:
        code = COMMANDS[args.cmd](args, out)
    except VerificationFailed as e:
        out.put(error=str(e), error_type=type(e).__name__)
        print(f"capforge: verification failed: {e}", file=sys.stderr)
        code = EXIT_FAIL
    except HypothesisViolated as e:
        out.put(error=str(e), error_type=type(e).__name__, hypothesis=e.hypothesis)
        print(f"capforge: hypothesis not met: {e}", file=sys.stderr)
        code = EXIT_USAGE
    except _USAGE_ERRORS as e:
        out.put(error=str(e), error_type=type(e).__name__)
        print(f"capforge: {type(e).__name__}: {e}", file=sys.stderr)
        code = EXIT_USAGE
    except CapforgeError as e:
        out.put(error=str(e), error_type=type(e).__name__)
        print(f"capforge: {type(e).__name__}: {e}", file=sys.stderr)
        code = EXIT_FAIL
    out.put(exit_code=code)
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
