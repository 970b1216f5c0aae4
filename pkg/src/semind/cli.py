"""Command-line front end.

Subcommands: count, enumerate, search, profile, verify, figure, oracle.
Configuration comes from an optional key=value file plus flags (flags win);
the SEMIND_CACHE environment variable selects the cache directory.  Exit
codes: 0 success / verification PASS, 1 verification FAIL, 2 usage or parse
errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .counting import (
    ap4_pattern,
    ac4_pattern,
    blowup_injections,
    count_injections,
    double_star_pattern,
    fast_count,
    induced_profile,
    normalized_density,
    peenn_pattern,
    star_pattern,
    tree_pattern,
)
from .certificates import (
    REGIME_RATIONAL,
    REGIME_SQRT2,
    stability_family_check,
    verify_ap4_certificate,
    verify_peenn_certificate,
)
from .exactalg import Q2, SQRT2
from .figures import emit_figure
from .graphs import (
    ConstructionSpec,
    ConstructionError,
    GraphFormatError,
    UnsupportedSizeError,
    circulant,
    clique_plus_isolated,
    complement_of,
    construction_parts,
    disjoint_cliques,
    enumerate_colored_graphs,
    make_construction,
    parse_host,
    parse_pattern,
    three_part,
)
from .profiles import BracketError, CurveSpecError, curve, eval_curve
from .search import brute_force_profile, exact_max, full_profile, hill_climb


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    cache_dir: Path
    beta_grid_step: float = 0.001
    tolerance: float = 1e-10
    threads: int = 1
    seed: int = 0


def load_config(args) -> RunConfig:
    values = {
        "cache_dir": os.environ.get("SEMIND_CACHE", ".semind-cache"),
        "beta_grid_step": 0.001,
        "tolerance": 1e-10,
        "threads": 1,
        "seed": 0,
    }
    cfg_file = getattr(args, "config", None)
    if cfg_file:
        for lineno, line in enumerate(Path(cfg_file).read_text().splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise UsageError(f"{cfg_file}:{lineno}: expected key=value")
            key = key.strip()
            val = val.strip()
            if key not in values:
                raise UsageError(f"{cfg_file}:{lineno}: unknown key {key!r}")
            if key == "cache_dir":
                values[key] = val
            elif key in ("threads", "seed"):
                values[key] = int(val)
            else:
                values[key] = float(val)
    for key in ("beta_grid_step", "tolerance", "threads", "seed"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if getattr(args, "cache_dir", None):
        values["cache_dir"] = args.cache_dir
    cfg = RunConfig(
        cache_dir=Path(values["cache_dir"]),
        beta_grid_step=float(values["beta_grid_step"]),
        tolerance=float(values["tolerance"]),
        threads=int(values["threads"]),
        seed=int(values["seed"]),
    )
    if not 0 < cfg.beta_grid_step <= 0.1:
        raise UsageError("beta_grid_step must lie in (0, 0.1]")
    if cfg.tolerance <= 0:
        raise UsageError("tolerance must be positive")
    return cfg


# ---------------------------------------------------------------------------
# argument parsing helpers


def pattern_from_arg(text: str):
    """Builtin names (ap4, ac4, ds:<s>, peenn, s:<a>,<b>, tree:<edges>),
    @file, or literal pattern text."""
    if text.startswith("@"):
        return parse_pattern(Path(text[1:]).read_text())
    name, _, rest = text.partition(":")
    if name == "ap4":
        return ap4_pattern()
    if name == "ac4":
        return ac4_pattern()
    if name == "peenn":
        return peenn_pattern()
    if name == "ds":
        return double_star_pattern(int(rest))
    if name == "s":
        a_str, b_str = rest.split(",")
        return star_pattern(int(a_str), int(b_str))
    if name == "tree":
        edges = []
        for part in rest.split(","):
            u, v = part.split("-")
            edges.append((int(u), int(v)))
        return tree_pattern(edges)
    if " " in text:
        return parse_pattern(text)
    raise UsageError(f"unknown pattern {text!r}")


def construct_from_arg(text: str) -> ConstructionSpec:
    kind, _, rest = text.partition(":")
    if kind == "complement":
        return complement_of(construct_from_arg(rest))
    if kind == "clique_iso":
        return clique_plus_isolated(float(rest))
    if kind == "cliques":
        return disjoint_cliques([float(x) for x in rest.split(",")])
    if kind == "circulant":
        return circulant(float(rest))
    if kind == "three_part":
        x_str, y_str = rest.split(",")
        return three_part(float(x_str), float(y_str))
    raise UsageError(f"unknown construction {text!r}")


def exact_from_arg(text: str) -> Q2:
    """Exact values: 'sqrt2-1', '1/sqrt2', 'sqrt2/2', fractions, decimals."""
    t = text.strip().replace(" ", "")
    if t == "sqrt2":
        return SQRT2
    if t == "sqrt2-1":
        return SQRT2 - Q2.of(1)
    if t == "1-sqrt2":
        return Q2.of(1) - SQRT2
    if t == "1/sqrt2" or t == "sqrt2/2":
        return Q2(Fraction(0), Fraction(1, 2))
    try:
        return Q2.of(Fraction(t))
    except ValueError as exc:
        raise UsageError(f"cannot parse exact value {text!r}") from exc


_CURVE_FOR_PATTERN = {
    "ap4": "ap4",
    "ac4": "ac4",
    "peenn": "peenn",
    "s:2,1": "s21",
}


# ---------------------------------------------------------------------------
# commands


def cmd_count(args, cfg: RunConfig) -> int:
    h = pattern_from_arg(args.pattern)
    if args.host and args.construct:
        raise UsageError("give either --host or --construct, not both")
    if args.construct:
        if not args.n:
            raise UsageError("--construct requires --n")
        spec = construct_from_arg(args.construct)
        parts = construction_parts(spec, args.n)
        host_desc = f"{spec.describe()}:n={args.n}"
        if parts is not None:
            count = blowup_injections(h, parts)
            npairs = args.n * (args.n - 1) // 2
            red = sum(s * (s - 1) // 2 for s, r in zip(parts.sizes, parts.internal_red) if r)
            for i in range(len(parts.sizes)):
                for j in range(i + 1, len(parts.sizes)):
                    if parts.cross_red[i][j]:
                        red += parts.sizes[i] * parts.sizes[j]
            beta = red / npairs
            n = args.n
        else:
            host = make_construction(spec, args.n)
            n = host.n
            beta = host.red_density()
            count = fast_count(h, host)
            if count is None:
                if n**h.h > 5e7:
                    raise UsageError(
                        "no fast counter for this pattern on a circulant host "
                        "this large; reduce n"
                    )
                count = count_injections(h, host)
    elif args.host:
        text = args.host
        if text.startswith("@"):
            text = Path(text[1:]).read_text()
        host = parse_host(text)
        host_desc = host.to_text()
        n = host.n
        beta = host.red_density()
        count = fast_count(h, host)
        if count is None or n <= 30:
            count = count_injections(h, host)
    else:
        raise UsageError("count needs --host or --construct")
    rho = normalized_density(count, n, h.h) if n >= h.h else 0.0
    print(f"pattern={h.to_text()!r} host={host_desc!r} count={count} rho={rho:.12g}")
    if args.profile_k:
        if args.construct:
            host = make_construction(construct_from_arg(args.construct), args.n)
        prof = induced_profile(host, args.profile_k)
        print("class_code,count")
        for code in sorted(prof.counts):
            print(f"{code.decode()},{prof.counts[code]}")
    curve_tag = _CURVE_FOR_PATTERN.get(args.pattern)
    if args.pattern.startswith("ds:"):
        curve_tag = args.pattern
    if curve_tag:
        cv = eval_curve(curve(curve_tag), beta)
        print(
            f"curve={curve_tag} beta={beta:.12g} value={cv.value:.12g} "
            f"in_range={int(cv.in_range)}"
        )
    return 0


def cmd_enumerate(args, cfg: RunConfig) -> int:
    k = args.k
    classes = enumerate_colored_graphs(k)
    lines = [f"# semind-basis k={k} count={len(classes)}"]
    lines.extend(g.to_text() for g in classes)
    body = "\n".join(lines) + "\n"
    out = Path(args.out) if args.out else cfg.cache_dir / f"basis-k{k}.txt"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(body)
    print(f"k={k} count={len(classes)} file={out}")
    return 0


def cmd_search(args, cfg: RunConfig) -> int:
    h = pattern_from_arg(args.pattern)
    if args.hill:
        seeds = []
        if args.seed_construct:
            seeds.append(construct_from_arg(args.seed_construct))
        res = hill_climb(
            h,
            args.n,
            target_density=args.beta,
            restarts=args.restarts,
            seed=args.seed if args.seed is not None else cfg.seed,
            seeds=seeds,
        )
        rho = normalized_density(res.best_count, args.n, h.h)
        wit = res.witnesses[0].decode()
        m = parse_host(wit).red_count()
        print(f"n={args.n} m={m} best={res.best_count} rho={rho:.12g} witness={wit!r}")
        return 0
    if args.profile:
        res = full_profile(h, args.n)
        print("m,best,rho")
        for m in sorted(res.per_edge_count):
            best = res.per_edge_count[m]
            rho = normalized_density(best, args.n, h.h)
            print(f"{m},{best},{rho:.12g}")
        return 0
    res = exact_max(h, args.n, args.m)
    rho = normalized_density(res.best_count, args.n, h.h)
    for wit_bytes in res.witnesses:
        wit = wit_bytes.decode()
        m = parse_host(wit).red_count()
        print(f"n={args.n} m={m} best={res.best_count} rho={rho:.12g} witness={wit!r}")
    return 0


def cmd_profile(args, cfg: RunConfig) -> int:
    step = args.beta_grid_step if args.beta_grid_step else cfg.beta_grid_step
    cids = [curve(c) for c in args.curve.split("+")]
    lo = args.beta_min
    hi = args.beta_max
    rows = []
    npts = round((hi - lo) / step)
    betas = [min(lo + i * step, hi) for i in range(npts + 1)]

    def evaluate(cid):
        return [(b, eval_curve(cid, b)) for b in betas]

    if cfg.threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(evaluate, cids))
    else:
        results = [evaluate(cid) for cid in cids]
    for cid, result in zip(cids, results):
        for b, cv in result:
            rows.append(f"{b:.12g},{cv.value:.12g},{cid.label()},{int(cv.in_range)}")
    body = "beta,value,curve,flag\n" + "\n".join(rows) + "\n"
    if args.out:
        Path(args.out).write_text(body)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(body)
    return 0


def _archive_report(cfg: RunConfig, cmd: str, text: str) -> None:
    reports = cfg.cache_dir / "reports"
    reports.mkdir(parents=True, exist_ok=True)
    stamp = time.strftime("%Y%m%d-%H%M%S")
    (reports / f"{stamp}-{cmd}.txt").write_text(text + "\n")


def cmd_verify(args, cfg: RunConfig) -> int:
    if args.which == "ap4":
        hi = exact_from_arg(args.alpha_max) if args.alpha_max else Q2.of(Fraction(1, 2))
        report = verify_ap4_certificate(alpha_interval=(Fraction(0), hi))
        reports = [report]
    elif args.which == "stability":
        reports = [stability_family_check()]
    elif args.which == "peenn":
        if args.B or args.C or args.interval:
            if not (args.B and args.C and args.interval):
                raise UsageError("peenn overrides need --B, --C and --interval")
            lo_s, hi_s = args.interval.split(",")
            reports = [
                verify_peenn_certificate(
                    B=exact_from_arg(args.B),
                    C=exact_from_arg(args.C),
                    interval=(exact_from_arg(lo_s), exact_from_arg(hi_s)),
                    include_lo=not args.open_lo,
                )
            ]
        else:
            reports = [
                verify_peenn_certificate(
                    B=R["B"],
                    C=R["C"],
                    interval=(R["lo"], R["hi"]),
                    include_lo=R["include_lo"],
                    include_hi=R["include_hi"],
                )
                for R in (REGIME_SQRT2, REGIME_RATIONAL)
            ]
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown certificate {args.which!r}")
    text = "\n".join(r.render() for r in reports)
    print(text)
    _archive_report(cfg, f"verify-{args.which}", text)
    return 0 if all(r.passed for r in reports) else 1


def cmd_figure(args, cfg: RunConfig) -> int:
    step = args.beta_grid_step if args.beta_grid_step else cfg.beta_grid_step
    paths = emit_figure(args.id, Path(args.out), step=step)
    for p in paths:
        print(p)
    return 0


def cmd_oracle(args, cfg: RunConfig) -> int:
    h = pattern_from_arg(args.pattern)
    per_m = brute_force_profile(h, args.n)
    print("m,best,rho")
    for m in sorted(per_m):
        rho = normalized_density(per_m[m], args.n, h.h)
        print(f"{m},{per_m[m]},{rho:.12g}")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="semind",
        description="semi-inducibility workbench for red/blue colored complete graphs",
    )
    p.add_argument("--config", help="key=value configuration file")
    p.add_argument("--cache-dir", help="cache directory (or SEMIND_CACHE)")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--tolerance", type=float, default=None)
    sub = p.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("count", help="count semi-induced pattern copies")
    c.add_argument("--pattern", required=True)
    c.add_argument("--host")
    c.add_argument("--construct")
    c.add_argument("--n", type=int)
    c.add_argument("--profile-k", type=int,
                   help="also print the host's induced k-profile as CSV")
    c.set_defaults(func=cmd_count)

    e = sub.add_parser("enumerate", help="enumerate colorings up to isomorphism")
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--out")
    e.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("search", help="extremal search over colorings")
    s.add_argument("--pattern", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--profile", action="store_true", help="full per-m profile CSV")
    s.add_argument("--hill", action="store_true", help="hill climb instead of exact")
    s.add_argument("--beta", type=float, help="pinned red density for --hill")
    s.add_argument("--restarts", type=int, default=2)
    s.add_argument("--seed-construct", help="construction spec used as climb seed")
    s.set_defaults(func=cmd_search)

    pr = sub.add_parser("profile", help="curve values on a beta grid (CSV)")
    pr.add_argument("--curve", required=True, help="curve id, '+'-separated for several")
    pr.add_argument("--beta-min", type=float, default=0.0)
    pr.add_argument("--beta-max", type=float, default=1.0)
    pr.add_argument("--beta-grid-step", type=float, default=None)
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_profile)

    v = sub.add_parser("verify", help="re-verify a certificate")
    v.add_argument("which", choices=("ap4", "peenn", "stability"))
    v.add_argument("--B")
    v.add_argument("--C")
    v.add_argument("--interval", help="lo,hi with exact endpoints (e.g. 1/sqrt2,4/5)")
    v.add_argument("--open-lo", action="store_true", help="exclude the left endpoint")
    v.add_argument("--alpha-max", help="upper endpoint for the ap4 multiplier check")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("figure", help="emit a figure as CSV + SVG")
    f.add_argument("--id", type=int, required=True, choices=(4, 5, 6, 7))
    f.add_argument("--out", default="figures")
    f.add_argument("--beta-grid-step", type=float, default=None)
    f.set_defaults(func=cmd_figure)

    o = sub.add_parser("oracle", help="raw brute-force per-m maxima (n <= 6)")
    o.add_argument("--pattern", required=True)
    o.add_argument("--n", type=int, required=True)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = load_config(args)
        return args.func(args, cfg)
    except (
        UsageError,
        GraphFormatError,
        ConstructionError,
        UnsupportedSizeError,
        CurveSpecError,
        BracketError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
