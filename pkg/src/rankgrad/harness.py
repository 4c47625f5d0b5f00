"""Subgroup-sequence experiments: rank and torsion ratio trends.

A sequence spec describes finite-index subgroups U_n of a product of
free groups (or an arbitrary finitely presented product via the
coset-table kind).  Each level is processed independently: coset
enumeration gives the index and the factor sub-action orbits give
[A : A meet U], [G : A U] and friends directly from the table.

d(U_n) is not computable exactly for these groups; d_upper is the
minimum over certified sources (the defining word count once the
enumeration certifies the index, the Reidemeister-Schreier generator
count after Tietze simplification, and the three product bounds), with
the winning source recorded per record.  Ratios are exact Fractions;
logarithms appear only in reporting columns, never in verdicts.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .bounds import evaluate_bounds
from .coset import coset_enumerate
from .errors import EnumerationOverflow, SpecFileError
from .exactmath import ln_interval, pow_lower
from .presentations import Presentation, free_product_with_commutators
from .rewriting import reidemeister_schreier, tietze_simplify
from .smith import abelian_invariants
from .words import free_reduce, parse_word

# Reidemeister-Schreier simplification gets expensive as the index
# grows; beyond this the word-count and product-bound sources win anyway.
TIETZE_INDEX_CAP = 64


@dataclass(frozen=True)
class SequenceLevel:
    name: str
    subgroup_words: tuple


@dataclass(frozen=True)
class SequenceSpec:
    kind: str  # fiber-product | product-of-subgroups | coset-table
    presentation: Presentation
    split: int  # generators 1..split are the A factor
    levels: tuple
    name: str = "sequence"

    def __post_init__(self):
        if self.kind not in (
            "fiber-product",
            "product-of-subgroups",
            "coset-table",
        ):
            raise SpecFileError(f"unknown sequence kind {self.kind!r}")
        if not 0 < self.split < self.presentation.rank:
            raise SpecFileError("split must name a proper generator prefix")
        if not self.levels:
            raise SpecFileError("sequence spec has no levels")


@dataclass(frozen=True)
class GradientRecord:
    n: int
    name: str
    index: int
    index_a: int  # [A : A meet U]
    index_b: int
    index_g_au: int
    index_g_bu: int
    d_upper: int
    d_upper_source: str
    d_lower: int
    betti: int
    torsion_order: int
    smallest_bound: int
    hypothesis_flag: str  # "ok" or "violated"
    # reported, not asserted: the torsion bound evaluated from the
    # projections' own rewriting (floor-rounded index factor)
    torsion_bound_floor: int = 0

    @property
    def rank_ratio(self):
        return Fraction(self.d_upper - 1, self.index)

    @property
    def log_torsion(self):
        return math.log(self.torsion_order)

    @property
    def torsion_ratio(self):
        return self.log_torsion / self.index


def _quotient_level_words(rank, relators, level_name, max_cosets):
    """Subgroup words for the fiber product over F_rank -> Q.

    The diagonal words (x_i y_i) together with the quotient's relators
    on the A side generate the whole fiber product: conjugating a
    kernel normal generator by a diagonal element stays inside.
    """
    q_pres = Presentation(rank, relators, name=level_name)
    q_table = coset_enumerate(q_pres, (), max_cosets=max_cosets)
    words = [(i, rank + i) for i in range(1, rank + 1)]
    words += [tuple(r) for r in relators]
    return tuple(words), q_table.index


def spec_from_json(payload, name=None):
    """Parse a gradient sequence spec (JSON text or dict)."""
    if isinstance(payload, str):
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise SpecFileError(f"bad JSON: {exc}", getattr(exc, "lineno", None))
    if payload.get("format") != "gradient-spec":
        raise SpecFileError("missing format: gradient-spec header field")
    kind = payload.get("kind")
    spec_name = name or payload.get("name", "sequence")
    if kind == "fiber-product":
        rank = int(payload.get("rank", 2))
        pres = free_product_with_commutators(rank, rank)
        levels = []
        for i, level in enumerate(payload["levels"], start=1):
            relators = tuple(
                parse_word(w, rank=rank) for w in level["relators"]
            )
            levels.append(
                SequenceLevel(
                    name=level.get("name", f"level{i}"),
                    subgroup_words=relators,  # expanded at run time
                )
            )
        return SequenceSpec(
            kind=kind, presentation=pres, split=rank, levels=tuple(levels),
            name=spec_name,
        )
    if kind == "product-of-subgroups":
        rank_a = int(payload.get("rank_a", 2))
        rank_b = int(payload.get("rank_b", 2))
        pres = free_product_with_commutators(rank_a, rank_b)
        levels = []
        for i, level in enumerate(payload["levels"], start=1):
            a_words = [parse_word(w, rank=rank_a) for w in level["a_words"]]
            b_words = [
                tuple(
                    u + rank_a if u > 0 else u - rank_a
                    for u in parse_word(w, rank=rank_b)
                )
                for w in level["b_words"]
            ]
            levels.append(
                SequenceLevel(
                    name=level.get("name", f"level{i}"),
                    subgroup_words=tuple(a_words + b_words),
                )
            )
        return SequenceSpec(
            kind=kind, presentation=pres, split=rank_a, levels=tuple(levels),
            name=spec_name,
        )
    if kind == "coset-table":
        rank = int(payload["rank"])
        relators = tuple(parse_word(w, rank=rank) for w in payload["relators"])
        pres = Presentation(rank, relators)
        split = int(payload["split"])
        levels = []
        for i, level in enumerate(payload["levels"], start=1):
            levels.append(
                SequenceLevel(
                    name=level.get("name", f"level{i}"),
                    subgroup_words=tuple(
                        parse_word(w, rank=rank) for w in level["words"]
                    ),
                )
            )
        return SequenceSpec(
            kind=kind, presentation=pres, split=split, levels=tuple(levels),
            name=spec_name,
        )
    raise SpecFileError(f"unknown sequence kind {kind!r}")


@dataclass(frozen=True)
class _IndexData:
    index: int
    index_a: int
    index_b: int
    index_g_au: int
    index_au_u: int
    index_g_bu: int
    index_bu_u: int


def _indices_from_table(table, split):
    """All the index data from factor sub-actions on the coset space.

    Right multiplication by the normal factor A permutes U-cosets; its
    orbits are exactly the AU-cosets, and the orbit of coset 0 has size
    [AU : U] = [A : A meet U].
    """
    rank = table.presentation.rank
    a_letters = list(range(1, split + 1))
    b_letters = list(range(split + 1, rank + 1))
    orbit_a = table.orbit(0, a_letters)
    orbit_b = table.orbit(0, b_letters)
    n_a_orbits = table.orbit_count(a_letters)
    n_b_orbits = table.orbit_count(b_letters)
    return _IndexData(
        index=table.index,
        index_a=len(orbit_a),
        index_b=len(orbit_b),
        index_g_au=n_a_orbits,
        index_au_u=len(orbit_a),
        index_g_bu=n_b_orbits,
        index_bu_u=len(orbit_b),
    )


def _projection_torsion(spec, sub, side, max_cosets):
    """Torsion of a factor projection's abelianization, via rewriting.

    The projection of U is generated by the projected Schreier words;
    the factor presentation keeps only the relators living in that
    factor (exactly right for product presentations).
    """
    split = spec.split
    rank = spec.presentation.rank
    if side == "a":
        keep = set(range(1, split + 1))
        shift = 0
        factor_rank = split
    else:
        keep = set(range(split + 1, rank + 1))
        shift = split
        factor_rank = rank - split
    relators = tuple(
        tuple(u - shift if u > 0 else u + shift for u in r)
        for r in spec.presentation.relators
        if all(abs(u) in keep for u in r)
    )
    words = []
    for w in sub.schreier_generators:
        proj = free_reduce(
            tuple(
                (u - shift if u > 0 else u + shift)
                for u in w
                if abs(u) in keep
            )
        )
        if proj:
            words.append(proj)
    table = coset_enumerate(
        Presentation(factor_rank, relators),
        tuple(dict.fromkeys(words)),
        max_cosets=max_cosets,
    )
    inv = abelian_invariants(reidemeister_schreier(table).presentation())
    return inv.torsion_order


def _reported_torsion_bound(spec, sub, idx, max_cosets):
    """Right-hand side of the torsion bound, reported (never asserted):
    projection torsions times the floored index factor; 0 when a
    projection enumeration does not complete."""
    try:
        t_a = _projection_torsion(spec, sub, "a", max_cosets)
        t_b = _projection_torsion(spec, sub, "b", max_cosets)
    except EnumerationOverflow:
        return 0
    n = idx.index
    if n == 1:
        factor = 1
    else:
        factor = pow_lower(n, 2 * (1 + ln_interval(n)[0]))
    return t_a * t_b * factor


class _BoundsView:
    """Just enough of GoursatData's surface for evaluate_bounds."""

    def __init__(self, idx):
        self.index_g_h = idx.index
        self.index_g_ah = idx.index_g_au
        self.index_ah_h = idx.index_au_u
        self.index_g_bh = idx.index_g_bu
        self.index_bh_h = idx.index_bu_u
        self.h = None


def run_sequence(spec, max_cosets=None, tietze_index_cap=TIETZE_INDEX_CAP):
    """One GradientRecord per level, deterministically."""
    from .config import DEFAULT_CAPS

    if max_cosets is None:
        max_cosets = DEFAULT_CAPS.max_cosets
    records = []
    d_g = spec.presentation.rank  # betti of G^ab = rank, so d(G) is exact
    prev = None
    for n, level in enumerate(spec.levels, start=1):
        if spec.kind == "fiber-product":
            words, q_order = _quotient_level_words(
                spec.split, level.subgroup_words, level.name, max_cosets
            )
        else:
            words = level.subgroup_words
            q_order = None
        table = coset_enumerate(spec.presentation, words, max_cosets=max_cosets)
        if q_order is not None and table.index != q_order:
            raise RuntimeError(
                f"fiber product index {table.index} disagrees with |Q| = {q_order}"
            )
        idx = _indices_from_table(table, spec.split)
        sub = reidemeister_schreier(table)
        invariants = abelian_invariants(sub.presentation())
        bound_floor = _reported_torsion_bound(spec, sub, idx, max_cosets)
        sources = {"subgroup-words": len(words)}
        if table.index <= tietze_index_cap:
            simplified = tietze_simplify(sub, effort=2)
            sources["rs-tietze"] = len(simplified.schreier_generators)
        else:
            sources["rs-schreier"] = len(sub.schreier_generators)
        report = evaluate_bounds(_BoundsView(idx), d_g, d_h=0)
        sources["product-bound-1"] = report.bound1
        sources["product-bound-2"] = report.bound2
        sources["product-bound-3"] = report.bound3
        source = min(sources, key=lambda k: (sources[k], k))
        d_upper = sources[source]
        flag = "ok"
        if prev is not None and (
            idx.index_a <= prev.index_a or idx.index_b <= prev.index_b
        ):
            flag = "violated"
        rec = GradientRecord(
            n=n,
            name=level.name,
            index=idx.index,
            index_a=idx.index_a,
            index_b=idx.index_b,
            index_g_au=idx.index_g_au,
            index_g_bu=idx.index_g_bu,
            d_upper=d_upper,
            d_upper_source=source,
            d_lower=invariants.betti,
            betti=invariants.betti,
            torsion_order=invariants.torsion_order,
            smallest_bound=report.smallest,
            hypothesis_flag=flag,
            torsion_bound_floor=bound_floor,
        )
        if rec.d_lower > rec.d_upper:
            raise RuntimeError("lower bound exceeds upper bound")
        records.append(rec)
        prev = idx
    return records


def rank_gradient_estimate(records):
    """min (d_upper - 1)/[G:U] over the records: an upper bound for the
    gradient, labeled as such by callers."""
    if not records:
        raise ValueError("no records")
    return min(r.rank_ratio for r in records)


def torsion_gradient_estimate(records):
    """min log|torsion|/[G:U]; the argmin is chosen by exact comparison."""
    if not records:
        raise ValueError("no records")
    best = records[0]
    for r in records[1:]:
        if torsion_ratio_less(r, best):
            best = r
    return best.torsion_ratio


def torsion_ratio_less(rec_a, rec_b):
    """Exact comparison of log(t_a)/i_a < log(t_b)/i_b via t_a^(i_b) < t_b^(i_a)."""
    return rec_a.torsion_order ** rec_b.index < rec_b.torsion_order ** rec_a.index


GRADIENT_COLUMNS = (
    "n",
    "name",
    "index",
    "index_a",
    "index_b",
    "index_g_au",
    "index_g_bu",
    "d_upper",
    "d_upper_source",
    "d_lower",
    "betti",
    "torsion_order",
    "torsion_bound_floor",
    "log_torsion",
    "rank_ratio_num",
    "rank_ratio_den",
    "rank_ratio",
    "torsion_ratio",
    "smallest_bound",
    "hypothesis_flag",
)


def record_row(rec):
    rr = rec.rank_ratio
    return (
        rec.n,
        rec.name,
        rec.index,
        rec.index_a,
        rec.index_b,
        rec.index_g_au,
        rec.index_g_bu,
        rec.d_upper,
        rec.d_upper_source,
        rec.d_lower,
        rec.betti,
        rec.torsion_order,
        rec.torsion_bound_floor,
        repr(rec.log_torsion),
        rr.numerator,
        rr.denominator,
        repr(float(rr)),
        repr(rec.torsion_ratio),
        rec.smallest_bound,
        rec.hypothesis_flag,
    )
