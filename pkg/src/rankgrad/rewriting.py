"""Reidemeister-Schreier rewriting and Tietze simplification.

Together with coset enumeration these give certified relator-count
upper bounds for finite groups on a chosen generating multiset, a
multiplier-based lower bound, and a small brute-force oracle that
squeezes the two together on tiny instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coset import CosetTable, cayley_coset_table, coset_enumerate
from .errors import EnumerationOverflow, IncompleteTable
from .presentations import Presentation, SubgroupPresentation
from .words import cyclic_normal_form, free_reduce, invert

# Redundancy tests enumerate candidate subpresentations; the cap keeps a
# runaway (infinite or collapsing-slowly) enumeration from stalling the
# simplifier.
REDUNDANCY_COSET_CAP = 4096


def schreier_transversal(table):
    """Breadth-first transversal words and the set of tree edges.

    Letters are explored in column order (+1, -1, +2, -2, ...), so the
    transversal is shortlex for that alphabet order and reproducible.
    """
    if not table.complete:
        raise IncompleteTable("transversal needs a complete table")
    n = table.index
    rank = table.presentation.rank
    words = {0: ()}
    tree = set()  # forward edges (coset, generator) covered by the tree
    queue = [0]
    while queue:
        a = queue.pop(0)
        for col in range(2 * rank):
            b = table.table[a][col]
            if b not in words:
                letter = col // 2 + 1 if col % 2 == 0 else -(col // 2 + 1)
                words[b] = words[a] + (letter,)
                if letter > 0:
                    tree.add((a, letter))
                else:
                    tree.add((b, -letter))
                queue.append(b)
    return [words[i] for i in range(n)], tree


def reidemeister_schreier(table):
    """Presentation of the subgroup a complete coset table describes.

    One Schreier generator per non-tree forward edge; relators are the
    ambient relators rewritten through every coset.
    """
    if not table.complete:
        raise IncompleteTable("Reidemeister-Schreier needs a complete table")
    transversal, tree = schreier_transversal(table)
    n = table.index
    rank = table.presentation.rank
    gen_index = {}
    gen_words = []
    for a in range(n):
        for x in range(1, rank + 1):
            if (a, x) in tree:
                continue
            b = table.step(a, x)
            gen_index[(a, x)] = len(gen_words) + 1
            gen_words.append(
                free_reduce(transversal[a] + (x,) + invert(transversal[b]))
            )

    def rewrite(start, word):
        out = []
        at = start
        for u in word:
            if u > 0:
                edge = (at, u)
                at = table.step(at, u)
                idx = gen_index.get(edge)
                if idx is not None:
                    out.append(idx)
            else:
                nxt = table.step(at, u)
                idx = gen_index.get((nxt, -u))
                if idx is not None:
                    out.append(-idx)
                at = nxt
        return free_reduce(out)

    relators = []
    for a in range(n):
        for rel in table.presentation.relators:
            w = rewrite(a, rel)
            if w:
                relators.append(w)
    return SubgroupPresentation(
        schreier_generators=tuple(gen_words),
        relators=tuple(relators),
    )


# ---------------------------------------------------------------------------
# Tietze simplification


def _dedup_cyclic(relators):
    seen = {}
    for r in relators:
        nf = cyclic_normal_form(r)
        if nf and nf not in seen:
            seen[nf] = nf
    return list(seen.values())


def _drop_redundant(rank, relators, coset_cap, log):
    """Drop relators lying in the normal closure of the others.

    Membership is certified through a finite quotient: if the
    presentation without r enumerates completely, r is redundant
    exactly when its trace in the regular action returns to coset 0.
    """
    rels = list(relators)
    i = 0
    order = sorted(range(len(rels)), key=lambda k: (-len(rels[k]), k))
    for i in order:
        if rels[i] is None:
            continue
        others = [r for k, r in enumerate(rels) if k != i and r is not None]
        try:
            t = coset_enumerate(
                Presentation(rank, tuple(others)), (), max_cosets=coset_cap
            )
        except EnumerationOverflow:
            continue
        if t.trace(0, rels[i]) == 0:
            log.append(("drop-redundant", len(rels[i])))
            rels[i] = None
    return [r for r in rels if r is not None]


def _eliminate_generator(rank, relators, log, length_budget):
    """One Tietze generator elimination, if a cheap one exists.

    Looks for a generator occurring exactly once in some relator, solves
    that relator for it and substitutes everywhere.  Both the generator
    and the relator go away; total length growth is budgeted.
    """
    best = None
    for ri, rel in enumerate(relators):
        counts = {}
        for u in rel:
            counts[abs(u)] = counts.get(abs(u), 0) + 1
        for g, c in counts.items():
            if c != 1:
                continue
            occurrences = sum(1 for r in relators for u in r if abs(u) == g)
            cost = (len(rel) - 1) * (occurrences - 1)
            if best is None or cost < best[0]:
                best = (cost, ri, g)
    if best is None:
        return None
    _, ri, g = best
    rel = relators[ri]
    pos = next(k for k, u in enumerate(rel) if abs(u) == g)
    # rel = u g^e v  =>  g^e = u^-1 v^-1
    u, v = rel[:pos], rel[pos + 1 :]
    replacement = free_reduce(invert(u) + invert(v))
    if rel[pos] < 0:
        replacement = invert(replacement)
    new_rels = []
    total = 0
    for k, r in enumerate(relators):
        if k == ri:
            continue
        out = []
        for letter in r:
            if abs(letter) == g:
                out.extend(replacement if letter > 0 else invert(replacement))
            else:
                out.append(letter)
        w = free_reduce(tuple(out))
        total += len(w)
        if w:
            new_rels.append(w)
    if total > length_budget:
        return None
    # renumber letters above g downward
    def shift(word):
        return tuple(u - 1 if u > g else (u + 1 if u < -g else u) for u in word)

    log.append(("eliminate-generator", g))
    return rank - 1, [shift(r) for r in new_rels], g


def simplify_presentation(
    p,
    effort=2,
    keep_generators=False,
    coset_cap=REDUNDANCY_COSET_CAP,
    length_budget=None,
    redundancy_rank_cap=12,
    redundancy_count_cap=48,
):
    """Monotone Tietze simplification of a Presentation.

    Only moves that never increase the relator count are applied:
    cyclic-normal-form dedup, single-occurrence generator elimination
    (unless keep_generators), then redundancy drops certified by finite
    quotients.  Redundancy testing enumerates one subpresentation per
    relator, so it only runs once the presentation is small enough.
    Returns (presentation, removed_generator_indices, log).
    """
    rank = p.rank
    relators = list(p.relators)
    if length_budget is None:
        length_budget = max(4 * sum(len(r) for r in relators), 512)
    log = []
    removed = []
    for _ in range(max(effort, 1)):
        before = (rank, tuple(relators))
        relators = _dedup_cyclic(relators)
        if not keep_generators:
            while True:
                hit = _eliminate_generator(rank, relators, log, length_budget)
                if hit is None:
                    break
                rank, relators, gone = hit
                removed.append(gone)
                relators = _dedup_cyclic(relators)
        if rank <= redundancy_rank_cap and len(relators) <= redundancy_count_cap:
            relators = _drop_redundant(rank, relators, coset_cap, log)
        if (rank, tuple(relators)) == before:
            break
    return Presentation(rank, tuple(relators), name=p.name), removed, tuple(log)


def tietze_simplify(sp, effort=2, coset_cap=REDUNDANCY_COSET_CAP):
    """Tietze-simplify a SubgroupPresentation (or a bare Presentation)."""
    if isinstance(sp, Presentation):
        simplified, _, _ = simplify_presentation(
            sp, effort=effort, keep_generators=True, coset_cap=coset_cap
        )
        return simplified
    pres = Presentation(sp.rank, sp.relators)
    simplified, removed, log = simplify_presentation(
        pres, effort=effort, keep_generators=False, coset_cap=coset_cap
    )
    gens = list(sp.schreier_generators)
    for g in removed:
        del gens[g - 1]
    return SubgroupPresentation(
        schreier_generators=tuple(gens),
        relators=simplified.relators,
        simplification_log=sp.simplification_log + log,
    )


# ---------------------------------------------------------------------------
# relator-count bounds


def presentation_on(group, generating_multiset):
    """A certified presentation of a finite group on a given multiset.

    The Schreier generators of the Cayley-graph coset table generate the
    kernel of F -> K, hence normally generate it: they are a valid
    relator set for K on exactly these generators.
    """
    table = cayley_coset_table(group, generating_multiset)
    sub = reidemeister_schreier(table)
    return Presentation(
        rank=len(generating_multiset),
        relators=sub.schreier_generators,
    )


def relations_upper(group, generating_multiset, effort=3, coset_cap=None):
    """Certified upper bound for r(K, T): a concrete relator count.

    Builds the kernel's Schreier generators and simplifies without
    touching the generating multiset.
    """
    pres = presentation_on(group, generating_multiset)
    cap = coset_cap or max(64, 32 * group.order)
    simplified, _, _ = simplify_presentation(
        pres, effort=effort, keep_generators=True, coset_cap=cap
    )
    return len(simplified.relators)


def relations_upper_witness(group, generating_multiset, effort=3, coset_cap=None):
    pres = presentation_on(group, generating_multiset)
    cap = coset_cap or max(64, 32 * group.order)
    simplified, _, _ = simplify_presentation(
        pres, effort=effort, keep_generators=True, coset_cap=cap
    )
    return simplified


def relations_lower(group, cap=None):
    """d(M(K)): every presentation of K needs at least this many relators
    beyond the generator count (and at least this many relators).

    The multiplier embeds in N/[F,N], which the images of any normal
    generating set of N generate.
    """
    from .schur import schur_multiplier

    result = schur_multiplier(group, cap=cap)
    return len(result.multiplier_factors)


@dataclass(frozen=True)
class ExactRelationsResult:
    """Outcome of the exact-r search, explicit about its caps."""

    value: int
    lower_bound: int
    upper_bound: int
    certificate: tuple
    exact: bool
    word_length_cap: int
    pool_cap: int

    def __str__(self):
        kind = "exact" if self.exact else "upper bound"
        return f"r = {self.value} ({kind})"


def _ker_word_pool(group, gens, max_len, pool_cap):
    """Cyclically reduced kernel words up to max_len, shortest first."""
    d = len(gens)
    letters = [i for i in range(1, d + 1)] + [-i for i in range(1, d + 1)]
    elem = {(): group.identity}
    pool = []
    seen = set()
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for u in letters:
                if w and w[-1] == -u:
                    continue
                nw = w + (u,)
                g = group.mult[elem[w]][
                    gens[u - 1] if u > 0 else group.inv[gens[-u - 1]]
                ]
                elem[nw] = g
                nxt.append(nw)
                if g == group.identity:
                    nf = cyclic_normal_form(nw)
                    if nf and nf not in seen:
                        seen.add(nf)
                        pool.append(nf)
        frontier = nxt
    pool.sort(key=lambda w: (len(w), w))
    return pool[:pool_cap]


def exact_relations(
    group,
    generating_multiset,
    max_len=8,
    pool_cap=120,
    enum_cap=None,
):
    """Smallest relator count on T, brute forced within documented caps.

    Lower bound: |T| + d(M(K)) for nontrivial finite K.  Upper bound:
    relations_upper.  When the two meet no search is needed; otherwise
    relator subsets drawn from short kernel words (plus the upper-bound
    witness) are tested by coset enumeration, smallest cardinality
    first.  The result is exact unless a smaller presentation exists
    only with relators beyond the caps.
    """
    from itertools import combinations

    from .errors import EnumerationOverflow

    k_order = group.order
    gens = list(generating_multiset)
    d = len(gens)
    if enum_cap is None:
        enum_cap = max(64, 24 * k_order)
    if k_order == 1 and not gens:
        return ExactRelationsResult(0, 0, 0, (), True, max_len, pool_cap)
    witness = relations_upper_witness(group, gens)
    upper = len(witness.relators)
    # every relation matrix of a finite group has full rank, and the
    # multiplier embeds in the relation module's coinvariants
    lower = d + relations_lower(group)
    if upper <= lower:
        return ExactRelationsResult(
            upper, lower, upper, witness.relators, True, max_len, pool_cap
        )
    pool = _ker_word_pool(group, gens, max_len, pool_cap)
    for w in witness.relators:
        nf = cyclic_normal_form(w)
        if nf and nf not in pool:
            pool.append(nf)
    pool.sort(key=lambda w: (len(w), w))
    for m in range(lower, upper):
        # shrink the pool as subset size grows to keep the search finite
        if m <= 2:
            cand = pool
        elif m == 3:
            cand = [w for w in pool if len(w) <= 6][:60]
        else:
            cand = [w for w in pool if len(w) <= 5][:40]
        for subset in combinations(cand, m):
            try:
                t = coset_enumerate(
                    Presentation(d, subset), (), max_cosets=enum_cap
                )
            except EnumerationOverflow:
                continue
            if t.index == k_order:
                return ExactRelationsResult(
                    m, lower, upper, subset, True, max_len, pool_cap
                )
    return ExactRelationsResult(
        upper, lower, upper, witness.relators, lower == upper, max_len, pool_cap
    )
