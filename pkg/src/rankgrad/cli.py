"""Command-line front end.

Subcommands: witt, schur, verify, gradient, bounds, present.  All
output is deterministic: identical configuration and inputs produce
byte-identical files.  Exit codes: 0 all checks pass, 1 check failure,
2 usage or parse error, 3 cap or enumeration overflow.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT_CAPS
from .errors import (
    CapExceeded,
    EnumerationOverflow,
    RankgradError,
    SpecFileError,
    UnknownSuite,
)

log = logging.getLogger("rankgrad")

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


@dataclass(frozen=True)
class RunConfig:
    """Resolved run parameters; identical configs give identical bytes."""

    command: str
    output: str | None
    fmt: str
    figures: str | None
    max_cosets: int
    brute_cap: int
    homology_cap: int
    seed: int

    def stamp(self):
        return {
            "command": self.command,
            "format_version": 1,
            "seed": self.seed,
        }


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _jsonl(rows):
    return "".join(json.dumps(row, sort_keys=True) + "\n" for row in rows)


def _ensure_figdir(cfg):
    if cfg.figures:
        os.makedirs(cfg.figures, exist_ok=True)
    return cfg.figures


# ---------------------------------------------------------------------------
# subcommands


def cmd_witt(args, cfg):
    from .plots import save_figure, witt_growth_figure
    from .witt import build_witt_table, check_lasteq, witt_csv_rows

    epsilon = Fraction(args.epsilon) if args.epsilon else None
    table = build_witt_table(args.p, args.n_max, epsilon=epsilon)
    lines = [f"# format: witt-table v1 p={args.p} n-max={args.n_max}"]
    lines.append("n,r,a,b,index_exponent,ratio_num,ratio_den")
    for row in witt_csv_rows(table):
        lines.append(",".join(str(v) for v in row))
    _write_text(args.output, "\n".join(lines) + "\n")
    if epsilon is not None and args.n_max >= 2:
        report = check_lasteq(table, epsilon)
        summary = {
            "check": "ratio-threshold",
            "epsilon": str(report.epsilon),
            "witnesses": list(report.witnesses),
            "max_ratio": str(report.max_ratio),
            "max_growth": str(report.max_growth),
        }
        sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")
    figdir = _ensure_figdir(cfg)
    if figdir:
        path = os.path.join(figdir, "witt_growth.png")
        save_figure(witt_growth_figure(table, epsilon=epsilon), path)
        log.info("wrote %s", path)
    return EXIT_OK


def cmd_schur(args, cfg):
    from .suites import suite_schur

    report = suite_schur(args.max_order, cap=max(args.max_order, cfg.homology_cap))
    header = {"format": "schur-report", "version": 1, "universe": report.universe}
    _write_text(args.output, _jsonl([header] + report.rows))
    return EXIT_OK if report.passed else EXIT_CHECK_FAILURE


def cmd_verify(args, cfg):
    from .suites import run_suite

    report = run_suite(args.suite, max_order=args.max_order)
    header = {
        "format": "verify-report",
        "version": 1,
        "suite": report.suite,
        "universe": report.universe,
        "enumeration_mode": report.mode,
        "passed": report.passed,
    }
    _write_text(args.output, _jsonl([header] + report.rows))
    return EXIT_OK if report.passed else EXIT_CHECK_FAILURE


def cmd_gradient(args, cfg):
    from .harness import (
        GRADIENT_COLUMNS,
        rank_gradient_estimate,
        record_row,
        run_sequence,
        spec_from_json,
        torsion_gradient_estimate,
    )

    with open(args.spec) as fh:
        spec = spec_from_json(fh.read())
    records = run_sequence(spec, max_cosets=cfg.max_cosets)
    if cfg.fmt == "csv":
        lines = [f"# format: gradient-records v1 spec={spec.name}"]
        lines.append(",".join(GRADIENT_COLUMNS))
        for rec in records:
            lines.append(",".join(str(v) for v in record_row(rec)))
        _write_text(args.output, "\n".join(lines) + "\n")
    else:
        header = {"format": "gradient-records", "version": 1, "spec": spec.name}
        rows = [dict(zip(GRADIENT_COLUMNS, record_row(r))) for r in records]
        _write_text(args.output, _jsonl([header] + rows))
    rank_est = rank_gradient_estimate(records)
    torsion_est = torsion_gradient_estimate(records)
    violated = [r.n for r in records if r.hypothesis_flag == "violated"]
    summary = {
        "rank_gradient_estimate_upper_bound": f"{rank_est.numerator}/{rank_est.denominator}",
        "torsion_gradient_estimate": repr(torsion_est),
        "estimates_are_minima_over_computed_range": True,
    }
    if violated:
        summary["index_growth_hypothesis"] = (
            "not met at n = " + ",".join(str(n) for n in violated)
        )
    sys.stdout.write(json.dumps(summary, sort_keys=True) + "\n")
    figdir = _ensure_figdir(cfg)
    if figdir:
        from .plots import gradient_trend_figure, save_figure

        path = os.path.join(figdir, "gradient_trends.png")
        save_figure(gradient_trend_figure(records), path)
        log.info("wrote %s", path)
    return EXIT_OK


def cmd_bounds(args, cfg):
    from .bounds import construct_generators, evaluate_bounds, goursat_data
    from .groups import SubgroupLattice, direct_product, full_handle
    from .smallgroups import lookup_group

    a = lookup_group(args.a)
    b = lookup_group(args.b)
    g = direct_product(a, b, cap=cfg.brute_cap**2)
    lattice = SubgroupLattice(g, cap=cfg.brute_cap)
    d_g = lattice.d_min_of(full_handle(g).elements)
    rows = []
    all_pass = True
    for h in lattice.subgroups():
        gd = goursat_data(a, b, h)
        gc = construct_generators(gd)
        rep = evaluate_bounds(gd, d_g, d_h=lattice.d_min_of(h), construction=gc)
        ok = rep.all_pass and gc.combined.elements == h.elements
        all_pass = all_pass and ok
        rows.append(
            {
                "A": a.name,
                "B": b.name,
                "H_index": gd.index_g_h,
                "H_order": h.order,
                "dH": rep.d_h,
                "bounds": [rep.bound1, rep.bound2, rep.bound3],
                "pass": [rep.pass1, rep.pass2, rep.pass3],
                "construction_size": gc.size,
            }
        )
    header = {
        "format": "bounds-report",
        "version": 1,
        "A": a.name,
        "B": b.name,
        "product_order": g.order,
        "d_G": d_g,
        "subgroups": len(rows),
        "enumeration_mode": "closure-bfs-complete",
    }
    _write_text(args.output, _jsonl([header] + rows))
    figdir = _ensure_figdir(cfg)
    if figdir:
        from .plots import bounds_scatter_figure, save_figure

        path = os.path.join(figdir, "bounds_scatter.png")
        save_figure(bounds_scatter_figure(rows), path)
        log.info("wrote %s", path)
    return EXIT_OK if all_pass else EXIT_CHECK_FAILURE


def cmd_present(args, cfg):
    from .coset import coset_enumerate
    from .presentations import (
        presentation_from_text,
        subgroup_words_from_text,
    )
    from .rewriting import reidemeister_schreier, tietze_simplify
    from .smith import abelian_invariants
    from .words import format_word

    with open(args.pres) as fh:
        pres = presentation_from_text(fh.read(), name=args.pres)
    words = ()
    if args.subgroup:
        with open(args.subgroup) as fh:
            words = subgroup_words_from_text(fh.read(), rank=pres.rank)
    table = coset_enumerate(pres, words, max_cosets=cfg.max_cosets)
    out = [f"index: {table.index}"]
    if args.rewrite or args.simplify or args.abelian:
        sub = reidemeister_schreier(table)
        out.append(f"schreier generators: {len(sub.schreier_generators)}")
        out.append(f"relators: {len(sub.relators)}")
        if args.rewrite:
            for w in sub.schreier_generators:
                out.append(f"gen: {format_word(w)}")
        if args.simplify:
            simplified = tietze_simplify(sub, effort=args.effort)
            out.append(
                "simplified: "
                f"{len(simplified.schreier_generators)} generators, "
                f"{len(simplified.relators)} relators"
            )
            sub = simplified
        if args.abelian:
            inv = abelian_invariants(sub.presentation())
            out.append(f"abelianization: {inv}")
    _write_text(args.output, "\n".join(out) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rankgrad",
        description=(
            "Exact workbench for generator and torsion bounds on "
            "finite-index subgroups of direct products"
        ),
    )
    parser.add_argument("--log-level", default="WARNING")
    parser.add_argument("--seed", type=int, default=0, help="recorded in reports")
    parser.add_argument(
        "--max-cosets", type=int, default=DEFAULT_CAPS.max_cosets
    )
    parser.add_argument(
        "--brute-cap", type=int, default=DEFAULT_CAPS.brute_force_cap
    )
    parser.add_argument(
        "--homology-cap", type=int, default=DEFAULT_CAPS.homology_cap
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_witt = sub.add_parser("witt", help="Witt-number table and ratio checks")
    p_witt.add_argument("--p", type=int, default=2)
    p_witt.add_argument("--n-max", type=int, required=True)
    p_witt.add_argument("--epsilon", default=None)
    p_witt.add_argument("--output", "-o", default=None)
    p_witt.add_argument("--figures", default=None)
    p_witt.set_defaults(func=cmd_witt)

    p_schur = sub.add_parser("schur", help="multiplier report for the catalog")
    p_schur.add_argument("--max-order", type=int, default=16)
    p_schur.add_argument("--output", "-o", default=None)
    p_schur.set_defaults(func=cmd_schur)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("--suite", required=True)
    p_verify.add_argument("--max-order", type=int, default=None)
    p_verify.add_argument("--output", "-o", default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_grad = sub.add_parser("gradient", help="subgroup-sequence experiment")
    p_grad.add_argument("--spec", required=True)
    p_grad.add_argument("--format", dest="fmt", choices=("csv", "json"),
                        default="csv")
    p_grad.add_argument("--output", "-o", default=None)
    p_grad.add_argument("--figures", default=None)
    p_grad.set_defaults(func=cmd_gradient)

    p_bounds = sub.add_parser("bounds", help="per-subgroup bound report for A x B")
    p_bounds.add_argument("--a", required=True, help="catalog name or JSON file")
    p_bounds.add_argument("--b", required=True)
    p_bounds.add_argument("--output", "-o", default=None)
    p_bounds.add_argument("--figures", default=None)
    p_bounds.set_defaults(func=cmd_bounds)

    p_pres = sub.add_parser("present", help="presentation tools")
    p_pres.add_argument("--pres", required=True)
    p_pres.add_argument("--subgroup", default=None)
    p_pres.add_argument("--rewrite", action="store_true")
    p_pres.add_argument("--simplify", action="store_true")
    p_pres.add_argument("--abelian", action="store_true")
    p_pres.add_argument("--effort", type=int, default=2)
    p_pres.add_argument("--output", "-o", default=None)
    p_pres.set_defaults(func=cmd_present)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level.upper(), logging.WARNING),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    cfg = RunConfig(
        command=args.command,
        output=getattr(args, "output", None),
        fmt=getattr(args, "fmt", "csv"),
        figures=getattr(args, "figures", None),
        max_cosets=args.max_cosets,
        brute_cap=args.brute_cap,
        homology_cap=args.homology_cap,
        seed=args.seed,
    )
    try:
        return args.func(args, cfg)
    except (CapExceeded, EnumerationOverflow) as exc:
        print(f"rankgrad: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SpecFileError, UnknownSuite) as exc:
        print(f"rankgrad: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"rankgrad: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RankgradError as exc:
        print(f"rankgrad: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILURE


if __name__ == "__main__":
    sys.exit(main())
