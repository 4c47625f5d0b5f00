"""Schur multipliers of small finite groups via the bar resolution.

M(E) = H2(E; Z) is read off the normalized bar complex: since H2 of a
finite group is finite, the cokernel of the degree-3 boundary splits as
H2 plus a free part of rank equal to rank(d2), so the torsion invariant
factors of that single sparse matrix are the multiplier.  The rank
identity is asserted as a consistency check on every run.

Bound checks ("log" read as natural log, the conservative choice: a
pass here implies the base-2 reading) round their right-hand sides
down through exact integer roots, so a reported pass is certified.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import DEFAULT_CAPS
from .errors import CapExceeded, NotNormal
from .exactmath import ln_interval, pow_lower
from .groups import (
    FiniteGroup,
    SubgroupHandle,
    commutator_subgroup,
    full_handle,
    is_normal,
    sylow_subgroup,
)
from .smith import invariant_factors_sparse


@dataclass(frozen=True)
class SchurResult:
    group_name: str
    group_order: int
    multiplier_factors: tuple
    per_prime: tuple  # sorted (p, order of p-part) pairs

    @property
    def multiplier_order(self):
        out = 1
        for f in self.multiplier_factors:
            out *= f
        return out

    def per_prime_map(self):
        return dict(self.per_prime)


def _nontrivial(group):
    return [x for x in range(group.order) if x != group.identity]


def _bar_d2_rank(group):
    """Rank of the degree-2 boundary of the normalized bar complex."""
    elems = _nontrivial(group)
    row_of = {g: i for i, g in enumerate(elems)}
    col = 0
    entries = {}
    e = group.identity
    for g in elems:
        for h in elems:
            # d(g,h) = (h) - (gh) + (g), degenerate terms dropped
            for target, sign in ((h, 1), (group.mult[g][h], -1), (g, 1)):
                if target == e:
                    continue
                key = (row_of[target], col)
                entries[key] = entries.get(key, 0) + sign
            col += 1
    factors = invariant_factors_sparse(entries)
    return len(factors)


def _bar_d3_entries(group):
    """Degree-3 boundary of the normalized bar complex, as a sparse map.

    Rows index nondegenerate pairs (g,h), columns nondegenerate triples.
    """
    elems = _nontrivial(group)
    pair_of = {}
    for g in elems:
        for h in elems:
            pair_of[(g, h)] = len(pair_of)
    entries = {}
    e = group.identity
    mult = group.mult
    col = 0
    for g in elems:
        for h in elems:
            gh = mult[g][h]
            for k in elems:
                hk = mult[h][k]
                # d(g,h,k) = (h,k) - (gh,k) + (g,hk) - (g,h)
                terms = [((h, k), 1), ((g, h), -1)]
                if gh != e:
                    terms.append(((gh, k), -1))
                if hk != e:
                    terms.append(((g, hk), 1))
                for pair, sign in terms:
                    key = (pair_of[pair], col)
                    val = entries.get(key, 0) + sign
                    if val:
                        entries[key] = val
                    elif key in entries:
                        del entries[key]
                col += 1
    return entries, len(pair_of)


def schur_multiplier(group, cap=None):
    """H2(E; Z) as an invariant-factor chain, exactly."""
    if isinstance(group, SubgroupHandle):
        group = group.as_group()
    cap = cap if cap is not None else DEFAULT_CAPS.homology_cap
    if group.order > cap:
        raise CapExceeded("schur_multiplier", group.order, cap)
    if group.order == 1:
        return SchurResult(group.name or "1", 1, (), ())
    entries, n_pairs = _bar_d3_entries(group)
    factors = invariant_factors_sparse(entries)
    free_rank = n_pairs - len(factors)
    if free_rank != _bar_d2_rank(group):
        raise RuntimeError("bar complex rank mismatch: H2 not finite?")
    torsion = tuple(f for f in factors if f > 1)
    per_prime = _p_parts(torsion, group.order)
    return SchurResult(
        group_name=group.name or f"order{group.order}",
        group_order=group.order,
        multiplier_factors=torsion,
        per_prime=per_prime,
    )


def _p_parts(factors, group_order):
    out = {}
    for p in _prime_divisors(group_order):
        part = 1
        for f in factors:
            while f % p == 0:
                part *= p
                f //= p
        out[p] = part
    return tuple(sorted(out.items()))


def _prime_divisors(n):
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def p_part_decomposition(result):
    """Orders of the p-primary parts; their product is |M(E)|.

    Z_p is read as the p-local integers, so M(E) (x) Z_p is the
    p-primary component.
    """
    parts = result.per_prime_map()
    prod = 1
    for v in parts.values():
        prod *= v
    if prod != result.multiplier_order:
        raise RuntimeError("p-part decomposition does not multiply up")
    return parts


@dataclass(frozen=True)
class SylowBoundCheck:
    prime: int
    p_part_order: int
    sylow_multiplier_order: int

    @property
    def passed(self):
        return self.p_part_order <= self.sylow_multiplier_order


def verify_sylow_bound(group, cap=None):
    """Per prime p: |p-part of M(E)| <= |M(P)| for a p-Sylow P."""
    result = schur_multiplier(group, cap=cap)
    checks = []
    for p, part in result.per_prime:
        sylow = sylow_subgroup(group, p)
        m_sylow = schur_multiplier(sylow.as_group(), cap=cap)
        checks.append(
            SylowBoundCheck(
                prime=p,
                p_part_order=part,
                sylow_multiplier_order=m_sylow.multiplier_order,
            )
        )
    return checks


@dataclass(frozen=True)
class GreenBoundCheck:
    group_name: str
    group_order: int
    multiplier_order: int
    bound_floor: int  # floor of |E|^(lower bound of ln |E|)

    @property
    def passed(self):
        if self.group_order == 1:
            return self.multiplier_order <= 1
        return self.multiplier_order <= self.bound_floor


def verify_green_bound(group, cap=None):
    """|M(E)| <= |E|^(ln |E|), right side rounded down (natural log)."""
    result = schur_multiplier(group, cap=cap)
    n = result.group_order
    if n == 1:
        bound = 1
    else:
        ln_lo, _ = ln_interval(n)
        bound = pow_lower(n, ln_lo)
    return GreenBoundCheck(
        group_name=result.group_name,
        group_order=n,
        multiplier_order=result.multiplier_order,
        bound_floor=bound,
    )


@dataclass(frozen=True)
class MultiplierCheck:
    """Commutator-index check [[A,A] : [A,A0]] <= [A:A0]^(1+ln[A:A0])."""

    group_name: str
    group_order: int
    subgroup_order: int
    index: int
    commutator_index: int
    bound_floor: int
    rounding: str = "floor(natural log)"

    @property
    def passed(self):
        return self.commutator_index <= self.bound_floor


def verify_multiplier_corollary(a_group, a0_handle):
    """Exact commutator indices against the floored index bound."""
    if not is_normal(a_group, a0_handle):
        raise NotNormal("A0 must be normal in A")
    full = full_handle(a_group)
    derived = commutator_subgroup(a_group, full, full)
    mixed = commutator_subgroup(a_group, full, a0_handle)
    if derived.order % mixed.order:
        raise RuntimeError("commutator subgroup orders do not divide")
    index = a_group.order // a0_handle.order
    if index == 1:
        bound = 1
    else:
        ln_lo, _ = ln_interval(index)
        bound = pow_lower(index, 1 + ln_lo)
    return MultiplierCheck(
        group_name=a_group.name or f"order{a_group.order}",
        group_order=a_group.order,
        subgroup_order=a0_handle.order,
        index=index,
        commutator_index=derived.order // mixed.order,
        bound_floor=bound,
    )
