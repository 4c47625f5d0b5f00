"""Named verification suites behind `rankgrad verify`.

Each suite walks an exhaustive universe (the stored small-group catalog
or its extension), runs exact checks, and yields JSON-serializable rows
plus an overall pass flag.  Subgroup enumeration is the closure BFS of
SubgroupLattice, which is certified complete for any group it accepts;
reports record that mode.

Row "check" tags are stable identifiers for traceability.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bounds import (
    check_recursion_step,
    construct_generators,
    evaluate_bounds,
    goursat_data,
    presentation_bound,
    recursion_sweep,
    three_bound_chain_holds,
    verify_normality,
    verify_torsion_bound,
)
from .coset import coset_enumerate
from .errors import UnknownSuite
from .exactmath import ln_interval, pow_lower
from .groups import (
    SubgroupLattice,
    automorphisms,
    closure_elements,
    d_min,
    d_normal_min,
    direct_product,
    full_handle,
    is_normal,
)
from .presentations import free_product_with_commutators
from .rewriting import exact_relations, reidemeister_schreier, relations_lower, relations_upper
from .schur import (
    p_part_decomposition,
    schur_multiplier,
    verify_green_bound,
    verify_multiplier_corollary,
    verify_sylow_bound,
)
from .smallgroups import extended_universe, small_groups
from .smith import abelian_invariants
from .words import free_reduce, parse_word

ENUMERATION_MODE = "closure-bfs-complete"

SUITE_NAMES = (
    "bounds-thm31",
    "normality",
    "schur",
    "multiplier-cor",
    "torsion-lemma",
    "presentation-cor26",
    "recursion-step",
)


@dataclass
class SuiteReport:
    suite: str
    universe: str
    mode: str
    rows: list
    passed: bool


def _product_pairs(max_order):
    groups = [g for g in small_groups(min(max_order, 16)) if g.order <= max_order]
    for a in groups:
        for b in groups:
            yield a, b


def suite_bounds_thm31(max_order=8):
    """Generator bounds (1)-(3), the constructive generating set, and the
    exact inequality chain, over every subgroup of every A x B."""
    rows = []
    passed = True
    for a, b in _product_pairs(max_order):
        g = direct_product(a, b)
        lattice = SubgroupLattice(g)
        d_g = lattice.d_min_of(full_handle(g).elements)
        n_checked = 0
        failures = []
        for h in lattice.subgroups():
            gd = goursat_data(a, b, h)
            d_h = lattice.d_min_of(h)
            gc = construct_generators(gd)
            report = evaluate_bounds(gd, d_g, d_h=d_h, construction=gc)
            chain_ok = _chain_holds(gd, lattice, d_h)
            ok = (
                report.all_pass
                and gc.combined.elements == h.elements
                and gc.size >= d_h
                and chain_ok
            )
            n_checked += 1
            if not ok:
                passed = False
                failures.append(
                    {
                        "H_order": h.order,
                        "dH": d_h,
                        "bounds": [report.bound1, report.bound2, report.bound3],
                        "pass": [report.pass1, report.pass2, report.pass3],
                        "construction_size": gc.size,
                        "chain_ok": chain_ok,
                    }
                )
        rows.append(
            {
                "check": "generator-bounds",
                "A": a.name,
                "B": b.name,
                "product_order": g.order,
                "subgroups": n_checked,
                "d_G": d_g,
                "all_pass": not failures,
                "failures": failures,
            }
        )
    return SuiteReport(
        suite="bounds-thm31",
        universe=f"all A,B of order <= {max_order}",
        mode=ENUMERATION_MODE,
        rows=rows,
        passed=passed,
    )


def _chain_holds(gd, lattice, d_h):
    """d(H) <= d_norm(piA, A0) + d(piA) + d(piB) with exact values."""
    pi_a_group = gd.pi_a.as_group()
    pos = {x: i for i, x in enumerate(gd.pi_a.elements)}
    from .groups import handle_from_elements

    cap_h = handle_from_elements(pi_a_group, [pos[x] for x in gd.a_cap_h.elements])
    rhs = (
        d_normal_min(pi_a_group, cap_h)
        + d_min(gd.pi_a)
        + d_min(gd.pi_b)
    )
    return d_h <= rhs


def suite_normality(max_order=8):
    """BK = G forces A meet K normal in A, over the same universe."""
    rows = []
    passed = True
    for a, b in _product_pairs(max_order):
        g = direct_product(a, b)
        lattice = SubgroupLattice(g)
        held = 0
        vacuous = 0
        bad = 0
        for k in lattice.subgroups():
            res = verify_normality(a, b, k)
            if not res.hypothesis_holds:
                vacuous += 1
            elif res.conclusion_holds:
                held += 1
            else:
                bad += 1
        if bad:
            passed = False
        rows.append(
            {
                "check": "normality",
                "A": a.name,
                "B": b.name,
                "hypothesis_held": held,
                "vacuous": vacuous,
                "violations": bad,
            }
        )
    return SuiteReport(
        suite="normality",
        universe=f"all A,B of order <= {max_order}",
        mode=ENUMERATION_MODE,
        rows=rows,
        passed=passed,
    )


def suite_schur(max_order=16, cap=None):
    """Multiplier decomposition, Sylow restriction, and exponent bound
    for every group in the stored catalog."""
    cap = cap or max_order
    rows = []
    passed = True
    for g in small_groups(max_order):
        result = schur_multiplier(g, cap=cap)
        parts = p_part_decomposition(result)
        prod_ok = True  # p_part_decomposition raises when it fails
        sylow_checks = verify_sylow_bound(g, cap=cap)
        sylow_ok = all(c.passed for c in sylow_checks)
        green = verify_green_bound(g, cap=cap)
        ok = prod_ok and sylow_ok and green.passed
        if not ok:
            passed = False
        rows.append(
            {
                "check": "multiplier",
                "group": g.name,
                "order": g.order,
                "multiplier": list(result.multiplier_factors),
                "p_parts": {str(p): v for p, v in sorted(parts.items())},
                "checks": {
                    "p_part_product": prod_ok,
                    "sylow_restriction": sylow_ok,
                    "exponent_bound": green.passed,
                },
            }
        )
    return SuiteReport(
        suite="schur",
        universe=f"all groups of order <= {max_order}",
        mode="stored-catalog",
        rows=rows,
        passed=passed,
    )


def suite_multiplier_cor(max_order=32):
    """Commutator-index bound for every normal subgroup of every group
    in the universe (complete through 16, standard families beyond)."""
    rows = []
    passed = True
    for g in extended_universe(max_order):
        lattice = SubgroupLattice(g)
        checked = 0
        bad = []
        for h in lattice.subgroups():
            if not is_normal(g, h):
                continue
            res = verify_multiplier_corollary(g, h)
            checked += 1
            if not res.passed:
                bad.append(
                    {
                        "A0_order": h.order,
                        "index": res.index,
                        "commutator_index": res.commutator_index,
                        "bound_floor": res.bound_floor,
                    }
                )
        if bad:
            passed = False
        rows.append(
            {
                "check": "commutator-index",
                "group": g.name,
                "order": g.order,
                "normal_subgroups": checked,
                "all_pass": not bad,
                "failures": bad,
            }
        )
    return SuiteReport(
        suite="multiplier-cor",
        universe=f"stored universe of order <= {max_order}",
        mode="catalog+standard-families",
        rows=rows,
        passed=passed,
    )


# fixed finitely presented instances for the torsion suite: subgroups of
# F2 x F2 given by generating words (letters a,b = first factor, c,d =
# second), every index <= 200
FP_TORSION_INSTANCES = (
    ("diag-V4", ("ac", "bd", "aa", "bb", "abAB")),
    ("diag-S3", ("ac", "bd", "aa", "bbb", "abab")),
    ("diag-D5", ("ac", "bd", "aa", "bb", "ababababab")),
    ("diag-Q8", ("ac", "bd", "aaaa", "bbAA", "baba")),
    ("diag-A4", ("ac", "bd", "aa", "bbb", "ababab")),
    ("diag-Z8xZ2", ("ac", "bd", "aaaaaaaa", "bb", "abAB")),
    ("product-2x2", ("a", "bb", "baB", "c", "dd", "dcD")),
    ("product-3x2", ("aaa", "b", "aabAA", "abaa", "c", "dd", "dcD")),
    ("mixed-asym", ("ac", "bd", "aa", "bb", "abab", "cc")),
)


def suite_torsion_lemma(max_order=8, fp_index_cap=200, max_cosets=200000):
    """Torsion bound and commutator sandwich over the finite universe,
    then the finitely presented instances via rewriting and SNF."""
    rows = []
    passed = True
    for a, b in _product_pairs(max_order):
        g = direct_product(a, b)
        lattice = SubgroupLattice(g)
        bad = 0
        for h in lattice.subgroups():
            res = verify_torsion_bound(a, b, h)
            if not res.passed:
                bad += 1
        if bad:
            passed = False
        rows.append(
            {
                "check": "torsion-bound",
                "A": a.name,
                "B": b.name,
                "subgroups": len(lattice),
                "violations": bad,
            }
        )
    ambient = free_product_with_commutators(2, 2)
    for name, word_strs in FP_TORSION_INSTANCES:
        words = tuple(parse_word(w, rank=4) for w in word_strs)
        table = coset_enumerate(ambient, words, max_cosets=max_cosets)
        if table.index > fp_index_cap:
            raise RuntimeError(f"fp instance {name} exceeds the index cap")
        row = _fp_torsion_row(name, table)
        if not row["pass"]:
            passed = False
        rows.append(row)
    return SuiteReport(
        suite="torsion-lemma",
        universe=f"all A,B of order <= {max_order}; fp instances in F2xF2",
        mode=ENUMERATION_MODE,
        rows=rows,
        passed=passed,
    )


def _project_words(words, keep, drop, shift):
    out = []
    for w in words:
        proj = tuple(
            (u - shift if u > 0 else u + shift)
            for u in w
            if abs(u) in keep
        ) if shift else tuple(u for u in w if abs(u) in keep)
        proj = free_reduce(proj)
        if proj:
            out.append(proj)
    return tuple(dict.fromkeys(out))


def _fp_torsion_row(name, table):
    """Torsion bound for one subgroup of F2 x F2, via rewriting + SNF.

    Projection subgroups of the free factors are themselves enumerated
    and rewritten, so their (trivial) torsion is computed, not assumed;
    the projection indices are cross-checked against the orbit counts
    of the factor sub-actions on the coset space.
    """
    from .presentations import Presentation

    sub = reidemeister_schreier(table)
    inv = abelian_invariants(sub.presentation())
    free2 = Presentation(2, ())
    a_words = _project_words(sub.schreier_generators, {1, 2}, {3, 4}, 0)
    b_words = _project_words(
        sub.schreier_generators, {3, 4}, {1, 2}, 2
    )
    pi_a_table = coset_enumerate(free2, a_words, max_cosets=100000)
    pi_b_table = coset_enumerate(free2, b_words, max_cosets=100000)
    if table.orbit_count([3, 4]) != pi_a_table.index:
        raise RuntimeError("projection index disagrees with orbit count")
    if table.orbit_count([1, 2]) != pi_b_table.index:
        raise RuntimeError("projection index disagrees with orbit count")
    inv_a = abelian_invariants(reidemeister_schreier(pi_a_table).presentation())
    inv_b = abelian_invariants(reidemeister_schreier(pi_b_table).presentation())
    n = table.index
    if n == 1:
        factor = 1
    else:
        ln_lo, _ = ln_interval(n)
        factor = pow_lower(n, 2 * (1 + ln_lo))
    bound = inv_a.torsion_order * inv_b.torsion_order * factor
    return {
        "check": "torsion-bound-fp",
        "instance": name,
        "index": n,
        "torsion": inv.torsion_order,
        "betti": inv.betti,
        "projection_torsion": [inv_a.torsion_order, inv_b.torsion_order],
        "projection_index": [pi_a_table.index, pi_b_table.index],
        "bound_floor": bound,
        "pass": inv.torsion_order <= bound,
    }


def minimal_generating_orbits(group):
    """Minimal generating sets up to automorphisms: (reps, total count).

    A minimal generating multiset can never repeat an element, so these
    are plain subsets of size d(group).
    """
    d = d_min(group)
    if d == 0:
        return [()], 0
    auts = automorphisms(group)
    n = group.order
    generating = []
    for cand in combinations(range(n), d):
        closed = closure_elements(group.mult, group.identity, cand)
        if len(closed) == n:
            generating.append(cand)
    seen = set()
    reps = []
    for t in generating:
        if t in seen:
            continue
        orbit = {tuple(sorted(a[x] for x in t)) for a in auts}
        seen |= orbit
        reps.append(t)
    if len(seen) != len(generating):
        raise RuntimeError("automorphism orbits do not partition the sets")
    return reps, len(generating)


def suite_presentation_cor26(max_order=8):
    """Exact (cap-documented) relator counts against 128 |T| |K|^(3/7),
    for every minimal generating set up to automorphism."""
    rows = []
    passed = True
    for g in small_groups(max_order):
        reps, total = minimal_generating_orbits(g)
        for t in reps:
            result = exact_relations(g, list(t))
            bound = presentation_bound(g.order, len(t) if t else 0)
            lower = relations_lower(g)
            upper = relations_upper(g, list(t)) if t else 0
            ok = result.value <= bound and lower <= max(upper, result.value)
            if not ok:
                passed = False
            rows.append(
                {
                    "check": "relator-count",
                    "group": g.name,
                    "order": g.order,
                    "T": list(t),
                    "orbit_universe": total,
                    "r_exact": result.value,
                    "exact_within_caps": result.exact,
                    "word_length_cap": result.word_length_cap,
                    "r_lower": lower,
                    "r_upper": upper,
                    "bound": bound,
                    "pass": ok,
                }
            )
    return SuiteReport(
        suite="presentation-cor26",
        universe=f"all groups of order <= {max_order}, all minimal generating sets up to Aut",
        mode="aut-orbit-representatives",
        rows=rows,
        passed=passed,
    )


RECURSION_GRID_K = (
    4, 6, 8, 12, 16, 24, 32, 36, 48, 60, 64, 96, 120, 128, 192, 240,
    256, 360, 480, 512, 720, 960, 1024, 2520, 4096, 5040, 10080, 16384,
    27720, 65536, 262144, 720720, 1000000,
)


def suite_recursion_step(sweep_max=10**6, t_max=8):
    """Full k = n sweep plus the divisor grid for the induction step."""
    rows = []
    failures = recursion_sweep(sweep_max, t=1)
    rows.append(
        {
            "check": "recursion-sweep",
            "n_range": [2, sweep_max],
            "t": 1,
            "failures": failures,
        }
    )
    grid_failures = []
    checked = 0
    for k in RECURSION_GRID_K:
        divisors = [n for n in range(2, k + 1) if k % n == 0]
        for t in range(1, t_max + 1):
            for n in divisors:
                res = check_recursion_step(t, k, n)
                checked += 1
                if not res.passed:
                    grid_failures.append({"t": t, "k": k, "n": n})
    rows.append(
        {
            "check": "recursion-grid",
            "grid_points": checked,
            "t_max": t_max,
            "failures": grid_failures,
        }
    )
    passed = not failures and not grid_failures
    return SuiteReport(
        suite="recursion-step",
        universe=f"n = 2..{sweep_max} with k = n; divisor grid t <= {t_max}",
        mode="exact-interval-arithmetic",
        rows=rows,
        passed=passed,
    )


def run_suite(name, max_order=None):
    if name == "bounds-thm31":
        return suite_bounds_thm31(max_order or 8)
    if name == "normality":
        return suite_normality(max_order or 8)
    if name == "schur":
        return suite_schur(max_order or 16)
    if name == "multiplier-cor":
        return suite_multiplier_cor(max_order or 32)
    if name == "torsion-lemma":
        return suite_torsion_lemma(max_order or 8)
    if name == "presentation-cor26":
        return suite_presentation_cor26(max_order or 8)
    if name == "recursion-step":
        return suite_recursion_step()
    raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}")
