"""Command-line front end: ``alpha``, ``solve``, ``verify-polytope`` and ``bench``.

Exit codes: 0 success, 2 parse or input error, 3 infeasible instance,
4 time limit reached, 5 internal assertion failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from .connectivity import alpha_table
from .errors import GuardError, ParseError, VspError
from .graph import Graph, meta, parse_costs, read_graph, validate_partition
from .model import build_ab_model, build_full_model
from .solver import CUT_FAMILIES, ORACLE_GUARD, SolverConfig, brute_force, solve

log = logging.getLogger("vsp")

EXIT_OK, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_TIME_LIMIT, EXIT_ASSERT = 0, 2, 3, 4, 5
RECORD_FIELDS = (
    "instance", "n", "e", "d", "beta", "alpha_min", "objective", "separator_size",
    "bound", "nodes", "cuts", "time", "status", "config_hash",
)


@dataclass
class RunRecord:
    instance: str
    n: int
    e: int
    d: float
    beta: int
    alpha_min: int | None
    objective: float | None
    separator_size: int | None
    bound: float | None
    nodes: int | None
    cuts: dict[str, int] = field(default_factory=dict)
    time: float = 0.0
    status: str = "optimal"
    config_hash: str = ""

    def as_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=False)

    def csv_row(self) -> list:
        row = []
        for k in RECORD_FIELDS:
            v = getattr(self, k)
            if k == "cuts":
                v = ";".join(f"{f}={v.get(f, 0)}" for f in CUT_FAMILIES)
            row.append("" if v is None else v)
        return row


def _num(v):
    """JSON-friendly number: integral values as int."""
    if v is None:
        return None
    f = float(v)
    return int(f) if f.is_integer() else round(f, 6)


def run_hash(cfg: SolverConfig, beta: int, extra: str = "") -> str:
    """Hash of everything that determines a run's result (wall time excluded)."""
    blob = json.dumps({"cfg": asdict(cfg), "beta": beta, "extra": extra}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _parse_beta(text: str) -> int | None:
    if text == "auto":
        return None
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("beta must be 'auto' or an integer") from None
    if k < 1:
        raise argparse.ArgumentTypeError("beta must be at least 1")
    return k


def _parse_cuts(text: str) -> tuple[str, ...]:
    if text == "none":
        return ()
    fams = tuple(f.strip() for f in text.split(",") if f.strip())
    bad = [f for f in fams if f not in CUT_FAMILIES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown cut families: {', '.join(bad)}")
    return fams


def _load(path: str, fmt: str | None, costs: str | None = None) -> Graph:
    g = read_graph(path, fmt)
    if costs:
        g = g.with_costs(parse_costs(Path(costs).read_bytes(), g.n))
    return g


# ---------------------------------------------------------------- alpha


def cmd_alpha(args) -> int:
    g = _load(args.input, args.format)
    table = alpha_table(g, jobs=args.jobs)
    out = args.stdout
    if args.output == "json":
        json.dump({
            "instance": Path(args.input).name,
            "n": g.n,
            "alpha": [[i + 1, j + 1, a] for (i, j), a in table.alpha.items()],
            "alpha_min": table.alpha_min,
        }, out)
        out.write("\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["i", "j", "alpha"])
        for (i, j), a in table.alpha.items():
            w.writerow([i + 1, j + 1, a])
        w.writerow(["alpha_min", table.alpha_min])
    return EXIT_OK


# ---------------------------------------------------------------- solve


def _solver_config(args) -> SolverConfig:
    return SolverConfig(
        time_limit=args.time_limit,
        cuts=args.cuts,
        seed=args.seed,
        strategy=getattr(args, "strategy", "fictitious"),
    )


def solve_record(path: str, fmt: str | None, beta: int | None, cfg: SolverConfig,
                 oracle: bool = False, costs: str | None = None, export_lp: str | None = None
                 ) -> RunRecord:
    g = _load(path, fmt, costs)
    info = meta(g, beta)
    res = solve(g, info.beta, cfg)
    if res.partition is not None:
        assert validate_partition(g, res.partition, info.beta), "solver returned an infeasible partition"
    if oracle:
        if g.n > ORACLE_GUARD:
            log.warning("oracle skipped: n=%d exceeds the guard of %d", g.n, ORACLE_GUARD)
        else:
            ref = brute_force(g, info.beta)
            assert ref.status == res.status or res.status == "time_limit", (
                f"oracle status {ref.status} != solver status {res.status}")
            if res.status == "optimal":
                assert abs(float(ref.objective) - float(res.objective)) <= 1e-6, (
                    f"oracle objective {ref.objective} != solver objective {res.objective}")
    if export_lp:
        if res.alpha_min is not None:
            model = build_full_model(g, info.beta, res.alpha_min)
            if cfg.strategy == "fictitious":
                model.cuts.add(res.cut_log)
            Path(export_lp).write_text(model.to_lp_text())
        else:
            log.warning("no model to export for a graph without non-adjacent pairs")
    return RunRecord(
        instance=Path(path).name,
        n=info.n, e=info.e, d=round(info.d, 4), beta=info.beta,
        alpha_min=res.alpha_min,
        objective=_num(res.objective),
        separator_size=res.separator_size,
        bound=_num(res.bound),
        nodes=res.nodes,
        cuts={f: res.cuts.get(f, 0) for f in CUT_FAMILIES},
        time=round(res.time, 3),
        status=res.status,
        config_hash=run_hash(cfg, info.beta, costs or ""),
    )


def _emit(records: Sequence[RunRecord], fmt: str, out, header: bool = True) -> None:
    if fmt == "json":
        for r in records:
            out.write(r.as_json() + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        if header:
            w.writerow(RECORD_FIELDS)
        for r in records:
            w.writerow(r.csv_row())


def _status_code(status: str) -> int:
    return {"optimal": EXIT_OK, "infeasible": EXIT_INFEASIBLE, "time_limit": EXIT_TIME_LIMIT}[status]


def cmd_solve(args) -> int:
    cfg = _solver_config(args)
    code = EXIT_OK
    first = True
    for path in args.input:
        rec = solve_record(path, args.format, args.beta, cfg, args.oracle, args.costs, args.export_lp)
        _emit([rec], args.output, args.stdout, header=first)
        first = False
        code = max(code, _status_code(rec.status))
    return code


# ---------------------------------------------------------------- verify-polytope


def verify_polytope(g: Graph, pairs, beta: int | None = None) -> dict:
    """Per-claim pass/fail over the given (a, b) pairs."""
    from . import polytope as lab

    beta = meta(g, beta).beta
    claims = {k: {"checked": 0, "failed": 0} for k in (
        "dimension", "base", "chain", "alpha_pair", "subgraph", "edge_system", "correspondence")}
    table = alpha_table(g)
    details = []
    for a, b in pairs:
        ps = lab.enumerate_ab_separators(g, a, b, beta)
        dim = lab.affine_dimension(ps) if len(ps) else None
        want = lab.expected_dimension(g, a, b)
        claims["dimension"]["checked"] += 1
        if dim != want:
            claims["dimension"]["failed"] += 1
        model = build_ab_model(g, a, b, beta)
        for ineq in lab.all_inequalities(model, table):
            key = ineq.origin if ineq.origin in claims else "base"
            for x in ps.points:
                claims[key]["checked"] += 1
                if not ineq.satisfied_exact(x):
                    claims[key]["failed"] += 1
        row = {"a": a + 1, "b": b + 1, "points": len(ps), "dimension": dim, "expected": want}
        if g.n <= lab.EDGE_GUARD:
            system = lab.EdgeSystem(g, a, b)
            for p in ps.partitions():
                claims["edge_system"]["checked"] += 1
                if not system.check(lab.vertex_to_edge(g, p)).ok:
                    claims["edge_system"]["failed"] += 1
            rep = lab.correspondence_report(g, a, b, beta)
            claims["correspondence"]["checked"] += 1
            if not rep.ok:
                claims["correspondence"]["failed"] += 1
            row["correspondence"] = rep.as_dict()
        details.append(row)
    for c in claims.values():
        c["pass"] = c["failed"] == 0
    return {"n": g.n, "beta": beta, "claims": claims, "pairs": details,
            "pass": all(c["pass"] for c in claims.values())}


def cmd_verify_polytope(args) -> int:
    g = _load(args.input, args.format)
    if args.a is not None and args.b is not None:
        pairs = [(args.a - 1, args.b - 1)]
    elif args.a is None and args.b is None:
        pairs = g.non_adjacent_pairs()
    else:
        raise ParseError("give both --a and --b or neither")
    report = verify_polytope(g, pairs, args.beta)
    report["instance"] = Path(args.input).name
    out = args.stdout
    if args.output == "json":
        json.dump(report, out, sort_keys=True)
        out.write("\n")
    else:
        out.write(f"{'claim':<16}{'checked':>10}{'failed':>8}  result\n")
        for name, c in report["claims"].items():
            verdict = "pass" if c["pass"] else "FAIL"
            if not c["checked"]:
                verdict = "skipped"
            out.write(f"{name:<16}{c['checked']:>10}{c['failed']:>8}  {verdict}\n")
    if args.report:
        Path(args.report).write_text(json.dumps(report, sort_keys=True, indent=1) + "\n")
    return EXIT_OK if report["pass"] else EXIT_ASSERT


# ---------------------------------------------------------------- bench


def read_manifest(path: str) -> list[tuple[str, str | None]]:
    """``path [format]`` per line; ``#`` starts a comment; paths relative to the manifest."""
    base = Path(path).parent
    out = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) > 2 or (len(parts) == 2 and parts[1] not in ("dimacs", "mm")):
            raise ParseError(f"{path}:{lineno}: expected 'path [dimacs|mm]'")
        p = Path(parts[0])
        out.append((str(p if p.is_absolute() else base / p), parts[1] if len(parts) == 2 else None))
    return out


def _bench_one(job):
    path, fmt, beta, cfg, alpha_only = job
    try:
        if alpha_only:
            g = _load(path, fmt)
            info = meta(g, beta)
            table = alpha_table(g)
            return RunRecord(Path(path).name, info.n, info.e, round(info.d, 4), info.beta,
                             table.alpha_min, None, None, None, None, {}, 0.0, "alpha_only",
                             run_hash(cfg, info.beta, "alpha"))
        return solve_record(path, fmt, beta, cfg)
    except (OSError, VspError, ValueError) as exc:
        return f"{path}: {exc}"


def mean_record(records: Sequence[RunRecord]) -> RunRecord:
    def avg(key):
        vals = [getattr(r, key) for r in records if getattr(r, key) is not None]
        return round(sum(vals) / len(vals), 4) if vals else None

    cuts = {f: round(sum(r.cuts.get(f, 0) for r in records) / len(records), 4) for f in CUT_FAMILIES}
    return RunRecord("mean", avg("n"), avg("e"), avg("d"), avg("beta"), avg("alpha_min"),
                     avg("objective"), avg("separator_size"), avg("bound"), avg("nodes"),
                     cuts, avg("time"), "-", "")


def cmd_bench(args) -> int:
    cfg = _solver_config(args)
    jobs = [(p, f or args.format, args.beta, cfg, args.alpha_only) for p, f in read_manifest(args.manifest)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_bench_one, jobs))
    else:
        results = [_bench_one(j) for j in jobs]
    records = []
    for r in results:
        if isinstance(r, str):
            print(f"error: {r}", file=args.stderr)
        else:
            records.append(r)
    if records:
        records.append(mean_record(records))
    if args.alpha_only and args.output == "csv":
        w = csv.writer(args.stdout, lineterminator="\n")
        w.writerow(["instance", "n", "e", "d", "beta", "alpha_min"])
        for r in records:
            w.writerow([r.instance, r.n, r.e, r.d, r.beta, r.alpha_min])
    else:
        _emit(records, args.output, args.stdout)
    return EXIT_OK if len(records) == len(results) + 1 else EXIT_PARSE


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vsp", description="Exact vertex separator toolkit.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, multiple=False):
        if multiple:
            sp.add_argument("input", nargs="+")
        else:
            sp.add_argument("input")
        sp.add_argument("--format", choices=("dimacs", "mm"), default=None,
                        help="input format (default: by suffix, .mtx is mm)")

    def solver_flags(sp):
        sp.add_argument("--beta", type=_parse_beta, default=None, metavar="auto|K")
        sp.add_argument("--cuts", type=_parse_cuts, default=CUT_FAMILIES, metavar="LIST|none")
        sp.add_argument("--time-limit", type=float, default=1800.0, metavar="S")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--strategy", choices=("fictitious", "pairs"), default="fictitious")
        sp.add_argument("--output", choices=("json", "csv"), default="json")

    a = sub.add_parser("alpha", help="vertex-disjoint path counts of all non-adjacent pairs")
    common(a)
    a.add_argument("--jobs", type=int, default=1)
    a.add_argument("--output", choices=("json", "csv"), default="csv")
    a.set_defaults(func=cmd_alpha)

    s = sub.add_parser("solve", help="minimum vertex separator by branch-and-cut")
    common(s, multiple=True)
    solver_flags(s)
    s.add_argument("--oracle", action="store_true", help="cross-check with brute force (n <= 22)")
    s.add_argument("--costs", default=None, help="file of 'vertex cost' lines")
    s.add_argument("--export-lp", default=None, metavar="FILE")
    s.add_argument("--jobs", type=int, default=1, help="accepted for symmetry; solves are single-worker")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify-polytope", help="exhaustive polyhedral checks on a tiny graph")
    common(v)
    v.add_argument("--a", type=int, default=None, help="1-based vertex fixed in A")
    v.add_argument("--b", type=int, default=None, help="1-based vertex fixed in B")
    v.add_argument("--beta", type=_parse_beta, default=None, metavar="auto|K")
    v.add_argument("--output", choices=("table", "json"), default="table")
    v.add_argument("--report", default=None, metavar="FILE", help="also write the JSON report here")
    v.set_defaults(func=cmd_verify_polytope)

    b = sub.add_parser("bench", help="run every instance of a manifest")
    b.add_argument("manifest")
    b.add_argument("--format", choices=("dimacs", "mm"), default=None)
    solver_flags(b)
    b.add_argument("--alpha-only", action="store_true")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    args.stdout, args.stderr = stdout, stderr
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=stderr)
    try:
        return args.func(args)
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=stderr)
        return EXIT_ASSERT
    except GuardError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE
    except (ParseError, OSError, VspError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_PARSE


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
