"""``modcolor`` command line.

Exit codes: 0 = Yes / pass, 1 = No / verification failure, 2 = error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import io as mio
from .bench import SOLVERS, fit_base, rows_to_csv, run_bench, theoretical_base
from .errors import ModColorError, InvalidInputError
from .graph import ClassTag, Graph, Modulator, is_member, remove_vertices, verify_modulator
from .nocert import build_certificate_set, default_g, solve_nocert
from .oracle import (ListAssignment, brute_force_list_color, chromatic_number_ie,
                     coloring_violation, is_list_colorable)
from .reductions import (add_palette_clique, build_clause_path, join_paths, reduce_3sat,
                         reduce_ssat)
from .treedepth import (EXACT_CAP, dfs_treedepth, exact_treedepth, mark_no_certificate,
                        marking_bound)
from .vc import solve_vc

FORMAT_VERSION = 1
EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


@dataclass
class RunReport:
    command: list
    decision: bool | None = None
    outputs: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)
    wall_time: float = 0.0
    checks: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    def to_text(self) -> str:
        lines = [f"decision: {_word(self.decision)}"] if self.decision is not None else []
        for section in ("outputs", "stats", "checks"):
            for k, v in sorted(getattr(self, section).items()):
                lines.append(f"{k}: {v}")
        return "\n".join(lines)


def _word(decision) -> str:
    return "yes" if decision else "no"


# -- loading ------------------------------------------------------------------------------

def _load_lists(args, g: Graph) -> ListAssignment:
    if getattr(args, "lists", None):
        lam = mio.read_lists(args.lists)
        if len(lam) != g.n:
            raise InvalidInputError(f"{args.lists}: {len(lam)} lists for {g.n} vertices")
        if args.q is not None and args.q != lam.q:
            raise InvalidInputError(f"--q {args.q} disagrees with q={lam.q} in {args.lists}")
        return lam
    if args.q is None:
        raise InvalidInputError("--q is required when no list file is given")
    return ListAssignment.full(g.n, args.q)


def _load_modulator(path, g: Graph) -> Modulator:
    mod, n = mio.read_modulator(path)
    if n != g.n:
        raise InvalidInputError(f"{path}: modulator declared for {n} vertices, graph has {g.n}")
    return mod


# -- solve ------------------------------------------------------------------------------------

def cmd_solve(args) -> tuple[RunReport, int]:
    g = mio.read_graph(args.graph)
    report = RunReport(command=["solve", args.solver])
    start = time.perf_counter()
    coloring = lam = None
    if args.solver == "chromatic":
        chi = chromatic_number_ie(g)
        report.outputs["chromatic_number"] = chi
        decision = True if args.q is None else chi <= args.q
    elif args.solver == "brute":
        lam = _load_lists(args, g)
        coloring = brute_force_list_color(g, lam)
        decision = coloring is not None
    elif args.solver == "vc":
        if args.modulator is None:
            raise InvalidInputError("solve vc needs --modulator")
        lam = _load_lists(args, g)
        if not lam.is_full():
            raise InvalidInputError("solve vc decides plain q-coloring; lists must be full")
        mod = _load_modulator(args.modulator, g)
        decision, coloring, stats = solve_vc(g, mod.vertices, lam.q)
        report.stats = stats.as_dict()
    else:
        if args.modulator is None:
            raise InvalidInputError("solve nocert needs --modulator")
        lam = _load_lists(args, g)
        mod = _load_modulator(args.modulator, g)
        tag = ClassTag.parse(args.cls) if args.cls else mod.target
        if args.zeta:
            zeta = mio.read_certificate_set(args.zeta)
            if zeta.tag != tag or zeta.q != lam.q:
                raise InvalidInputError(f"{args.zeta}: certificate set is for {zeta.tag.value}, q={zeta.q}")
        else:
            zeta = build_certificate_set(tag, lam.q, args.g or default_g(tag))
        decision, coloring, stats = solve_nocert(g, lam, mod.vertices, zeta)
        report.stats = stats.as_dict()
        report.outputs["certificate_set_size"] = len(zeta)
    report.wall_time = round(time.perf_counter() - start, 6)
    report.decision = bool(decision)
    if coloring is not None:
        report.checks["witness_valid"] = coloring_violation(g, coloring, lam) is None
        if args.witness:
            mio.write_text(args.witness, mio.format_coloring(coloring, lam.q))
            report.outputs["witness"] = str(args.witness)
        else:
            report.outputs["coloring"] = " ".join(map(str, coloring))
    if not args.stats:
        report.stats = {}
    return report, EXIT_YES if decision else EXIT_NO


# -- gen ----------------------------------------------------------------------------------------

def cmd_gen(args) -> tuple[RunReport, int]:
    report = RunReport(command=["gen", args.kind])
    out_dir = Path(args.output)
    if args.kind == "path-gadget":
        try:
            c = [int(t) for t in args.c.split(",") if t.strip()]
        except ValueError:
            raise InvalidInputError(f"--c expects comma-separated colors, got {args.c!r}") from None
        gadget = build_clause_path(c, args.q)
        out_dir.mkdir(parents=True, exist_ok=True)
        mio.write_text(out_dir / "path.col", mio.format_graph(gadget.path))
        mio.write_text(out_dir / "path.lists", mio.format_lists(gadget.lists))
        report.outputs = {"vertices": gadget.path.n,
                          "distinguished": " ".join(str(v + 1) for v in gadget.distinguished),
                          "graph": str(out_dir / "path.col"), "lists": str(out_dir / "path.lists")}
        return report, EXIT_YES
    if args.kind == "zeta":
        tag = ClassTag.parse(args.cls)
        zeta = build_certificate_set(tag, args.q, args.g or default_g(tag))
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / f"zeta-{tag.value}-q{args.q}-g{zeta.g}.txt"
        mio.write_text(path, mio.format_certificate_set(zeta))
        report.outputs = {"members": len(zeta), "file": str(path)}
        return report, EXIT_YES
    phi = mio.read_cnf(args.cnf)
    if args.kind == "reduce3sat":
        out = reduce_3sat(phi, args.q, palette_clique=not args.no_palette_clique)
    else:
        out = reduce_ssat(phi, args.q, args.p)
        if args.join_paths:
            out = join_paths(out)
        if args.palette_clique:
            out = add_palette_clique(out)
    paths = mio.write_reduction(out, out_dir)
    report.outputs = {k: str(v) for k, v in paths.items()}
    report.outputs.update(vertices=out.graph.n, edges=out.graph.m,
                          modulator_size=len(out.modulator), target=out.modulator.target.value)
    report.checks["modulator_valid"] = verify_modulator(out.graph, out.modulator.vertices,
                                                        out.modulator.target)
    return report, EXIT_YES


# -- verify --------------------------------------------------------------------------------------

def cmd_verify(args) -> tuple[RunReport, int]:
    g = mio.read_graph(args.graph)
    report = RunReport(command=["verify", args.what])
    failure = None
    if args.what == "coloring":
        coloring, q = mio.read_coloring(args.coloring)
        lam = mio.read_lists(args.lists) if args.lists else None
        if lam is not None and len(lam) != g.n:
            raise InvalidInputError(f"{args.lists}: {len(lam)} lists for {g.n} vertices")
        failure = coloring_violation(g, coloring, lam)
        if failure is None and lam is None and any(not 1 <= c <= q for c in coloring):
            failure = f"color outside 1..{q}"
    elif args.what == "modulator":
        mod = _load_modulator(args.modulator, g)
        tag = ClassTag.parse(args.cls) if args.cls else mod.target
        if not verify_modulator(g, mod.vertices, tag):
            failure = f"graph minus the modulator is not {tag.value}"
    elif args.what == "class":
        tag = ClassTag.parse(args.cls)
        h = g
        if args.modulator:
            h, _ = remove_vertices(g, _load_modulator(args.modulator, g).vertices)
        if not is_member(h, tag):
            failure = f"graph is not {tag.value}"
    elif args.what == "certificate":
        lam = mio.read_lists(args.lists)
        marked, _ = mio.read_modulator(args.marked)
        verts = sorted(marked.vertices)
        sub, _ = remove_vertices(g, [v for v in range(g.n) if v not in marked.vertices])
        if is_list_colorable(sub, lam.restrict(verts)):
            failure = "marked subinstance is list-colorable"
        report.outputs["marked_size"] = len(verts)
    else:
        d = mio.read_decomposition(args.decomposition)
        failure = d.violation(g)
        report.outputs["depth"] = d.depth
    report.decision = failure is None
    if failure:
        report.outputs["violation"] = failure
    return report, EXIT_YES if failure is None else EXIT_NO


# -- certify -------------------------------------------------------------------------------------

def cmd_certify(args) -> tuple[RunReport, int]:
    g = mio.read_graph(args.graph)
    lam = _load_lists(args, g)
    report = RunReport(command=["certify", "treedepth"])
    start = time.perf_counter()
    if args.decomposition:
        d = mio.read_decomposition(args.decomposition)
        if d.n != g.n:
            raise InvalidInputError(f"{args.decomposition}: decomposition has {d.n} vertices")
    elif max((len(c) for c in g.components()), default=0) <= EXACT_CAP:
        d = exact_treedepth(g)[1]
    else:
        d = dfs_treedepth(g)
    err = d.violation(g)
    if err:
        raise InvalidInputError(f"invalid decomposition: {err}")
    if is_list_colorable(g, lam):
        report.decision = False
        report.outputs["reason"] = "instance is list-colorable; no No-certificate exists"
        return report, EXIT_NO
    marked = mark_no_certificate(g, lam, d)
    verts = sorted(marked)
    sub, _ = remove_vertices(g, [v for v in range(g.n) if v not in marked])
    bound = marking_bound(lam.q, d.depth)
    report.decision = True
    report.outputs = {"depth": d.depth, "marked": " ".join(str(v + 1) for v in verts),
                      "marked_size": len(verts), "bound": bound}
    report.checks = {"within_bound": len(verts) <= bound,
                     "marked_is_no": not is_list_colorable(sub, lam.restrict(verts))}
    if args.output:
        mio.write_text(args.output, mio.format_modulator(Modulator(verts, ClassTag.INDEPENDENT), g.n))
        report.outputs["file"] = str(args.output)
    report.wall_time = round(time.perf_counter() - start, 6)
    ok = all(report.checks.values())
    return report, EXIT_YES if ok else EXIT_NO


# -- bench ---------------------------------------------------------------------------------------

def cmd_bench(args) -> tuple[RunReport, int]:
    ks = range(args.k_min, args.k_max + 1)
    seeds = range(args.seed, args.seed + args.seeds)
    rows = run_bench(args.solver, args.q, ks, seeds, args.workers, args.cls)
    text = rows_to_csv(rows)
    if args.csv:
        mio.write_text(args.csv, text)
    else:
        sys.stdout.write(text)
    fit = fit_base([r.k for r in rows], [r.nodes for r in rows])
    g = default_g(ClassTag.parse(args.cls)) if args.solver == "nocert" else 1
    report = RunReport(command=["bench", args.solver])
    report.outputs = {"fitted_base": round(fit.base, 4), "r2": round(fit.r2, 4),
                      "theoretical_base": round(theoretical_base(args.solver, args.q, g), 4),
                      "rows": len(rows)}
    return report, EXIT_YES


# -- parser ---------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modcolor", description="List coloring on graphs near a simple class.")
    p.add_argument("--json", action="store_true", help="print the run report as JSON")
    p.add_argument("--seed", type=int, default=0, help="base seed for randomized commands")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("solve", help="decide (list-)colorability")
    s.add_argument("solver", choices=["vc", "nocert", "brute", "chromatic"])
    s.add_argument("--graph", required=True)
    s.add_argument("--lists")
    s.add_argument("--modulator")
    s.add_argument("--q", type=int)
    s.add_argument("--class", dest="cls")
    s.add_argument("--g", type=int)
    s.add_argument("--zeta", help="certificate-set file written by 'gen zeta'")
    s.add_argument("--witness", help="write the coloring here on Yes")
    s.add_argument("--stats", action="store_true")
    s.set_defaults(func=cmd_solve)

    gp = sub.add_parser("gen", help="generate instances")
    gp.add_argument("kind", choices=["reduce3sat", "reducessat", "path-gadget", "zeta"])
    gp.add_argument("--cnf")
    gp.add_argument("--q", type=int, required=True)
    gp.add_argument("--p", type=int, default=1)
    gp.add_argument("--c", default="")
    gp.add_argument("--class", dest="cls", default="independent")
    gp.add_argument("--g", type=int)
    gp.add_argument("--join-paths", action="store_true")
    gp.add_argument("--palette-clique", action="store_true")
    gp.add_argument("--no-palette-clique", action="store_true",
                    help="reduce3sat: keep the list instance")
    gp.add_argument("-o", "--output", default=".")
    gp.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check an artifact")
    v.add_argument("what", choices=["coloring", "modulator", "class", "certificate", "decomposition"])
    v.add_argument("--graph", required=True)
    v.add_argument("--coloring")
    v.add_argument("--lists")
    v.add_argument("--modulator")
    v.add_argument("--marked", help="vertex set in modulator format")
    v.add_argument("--decomposition")
    v.add_argument("--class", dest="cls")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("certify", help="small No-certificate along a treedepth decomposition")
    c.add_argument("what", choices=["treedepth"])
    c.add_argument("--graph", required=True)
    c.add_argument("--lists")
    c.add_argument("--q", type=int)
    c.add_argument("--decomposition")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_certify)

    b = sub.add_parser("bench", help="measure search-tree growth")
    b.add_argument("solver", choices=SOLVERS)
    b.add_argument("--q", type=int, default=3)
    b.add_argument("--k-min", type=int, default=6)
    b.add_argument("--k-max", type=int, default=14)
    b.add_argument("--seeds", type=int, default=3)
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--class", dest="cls", default="independent")
    b.add_argument("--csv")
    b.set_defaults(func=cmd_bench)
    return p


def _check_args(args):
    if args.cmd == "gen" and args.kind in ("reduce3sat", "reducessat") and not args.cnf:
        raise InvalidInputError(f"gen {args.kind} needs --cnf")
    if args.cmd == "verify":
        need = {"coloring": "coloring", "modulator": "modulator", "certificate": "marked",
                "decomposition": "decomposition", "class": "cls"}[args.what]
        if getattr(args, need) is None:
            raise InvalidInputError(f"verify {args.what} needs --{need.replace('cls', 'class')}")
        if args.what == "certificate" and not args.lists:
            raise InvalidInputError("verify certificate needs --lists")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    random.seed(args.seed)
    try:
        _check_args(args)
        report, code = args.func(args)
    except (ModColorError, ValueError) as exc:
        msg = str(exc)
        if args.json:
            print(json.dumps({"error": msg, "format_version": FORMAT_VERSION}, sort_keys=True))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR
    print(report.to_json() if args.json else report.to_text())
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
