"""Exact integer matrix algebra: Smith normal form and abelian invariants.

All arithmetic is arbitrary-precision.  Large sparse relation matrices
(bar-resolution boundaries, abelianized Reidemeister-Schreier output)
are first reduced with unit pivots in a sparse representation, and only
the small remainder is handed to the dense textbook algorithm, so the
certified path never leaves exact integers.
"""

from dataclasses import dataclass

from .errors import SpecFileError

# Sparse matrices below this many nonzeros skip the sparse pass.
DENSIFY_THRESHOLD = 2000


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("column count mismatch")

    @staticmethod
    def from_rows(rows):
        rows = tuple(tuple(int(v) for v in row) for row in rows)
        return IntMatrix(len(rows), len(rows[0]) if rows else 0, rows)


def _as_rows(m):
    if isinstance(m, IntMatrix):
        return [list(r) for r in m.entries]
    return [list(r) for r in m]


def _dense_invariant_factors(m):
    """In-place dense SNF; returns the positive invariant factor chain."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    factors = []
    t = 0
    while t < nrows and t < ncols:
        # smallest nonzero entry of the active submatrix becomes the pivot
        best = None
        for i in range(t, nrows):
            row = m[i]
            for j in range(t, ncols):
                v = row[j]
                if v:
                    a = -v if v < 0 else v
                    if best is None or a < best[0]:
                        best = (a, i, j)
                        if a == 1:
                            break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        m[t], m[bi] = m[bi], m[t]
        if bj != t:
            for row in m:
                row[t], row[bj] = row[bj], row[t]
        if m[t][t] < 0:
            m[t] = [-v for v in m[t]]
        p = m[t][t]

        dirty = False
        for i in range(t + 1, nrows):
            v = m[i][t]
            if v:
                q = v // p
                if q:
                    rt = m[t]
                    ri = m[i]
                    for j in range(t, ncols):
                        ri[j] -= q * rt[j]
                if m[i][t]:
                    dirty = True
        if dirty:
            continue
        for j in range(t + 1, ncols):
            v = m[t][j]
            if v:
                q = v // p
                if q:
                    for row in m:
                        row[j] -= q * row[t]
                if m[t][j]:
                    dirty = True
        if dirty:
            continue
        # enforce the divisibility chain: fold any non-multiple back in
        bad = None
        for i in range(t + 1, nrows):
            row = m[i]
            for j in range(t + 1, ncols):
                if row[j] % p:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            rt = m[t]
            rb = m[bad]
            for j in range(t, ncols):
                rt[j] += rb[j]
            continue
        factors.append(p)
        t += 1
    return factors


def _sparse_unit_reduce(rows):
    """Eliminate +-1 pivots from a sparse matrix {i: {j: v}}.

    Each unit pivot contributes an invariant factor 1 and strictly
    shrinks the matrix; the remainder is returned for dense handling.
    A lazy heap keyed by (row length, row id) picks pivots (shortest
    row, then lowest-population column), deterministically.
    """
    import heapq

    cols = {}
    for i, row in rows.items():
        for j in row:
            cols.setdefault(j, set()).add(i)
    heap = [(len(row), i) for i, row in rows.items()]
    heapq.heapify(heap)
    parked = set()  # rows currently without unit entries
    ones = 0
    while heap:
        length, pi = heapq.heappop(heap)
        row = rows.get(pi)
        if row is None:
            continue
        if not row:
            del rows[pi]
            continue
        if len(row) != length:
            heapq.heappush(heap, (len(row), pi))
            continue
        units = [j for j, v in row.items() if v == 1 or v == -1]
        if not units:
            parked.add(pi)
            continue
        pj = min(units, key=lambda jj: (len(cols[jj]), jj))
        prow = row if row[pj] == 1 else {j: -v for j, v in row.items()}
        for i2 in sorted(cols[pj]):
            if i2 == pi:
                continue
            row2 = rows[i2]
            c = row2[pj]
            for j2, v2 in prow.items():
                new = row2.get(j2, 0) - c * v2
                if new:
                    if j2 not in row2:
                        cols.setdefault(j2, set()).add(i2)
                    row2[j2] = new
                else:
                    if j2 in row2:
                        del row2[j2]
                        cols[j2].discard(i2)
            parked.discard(i2)
            heapq.heappush(heap, (len(row2), i2))
        for j2 in rows[pi]:
            cols[j2].discard(pi)
        del rows[pi]
        ones += 1
    live_cols = sorted(j for j, s in cols.items() if s)
    colpos = {j: k for k, j in enumerate(live_cols)}
    dense = []
    for i in sorted(rows):
        row = rows[i]
        if not row:
            continue
        out = [0] * len(live_cols)
        for j, v in row.items():
            out[colpos[j]] = v
        dense.append(out)
    return ones, dense


def invariant_factors_sparse(entries, nrows=None, ncols=None):
    """Invariant factors of a matrix given as {(i, j): value}."""
    rows = {}
    for (i, j), v in entries.items():
        if v:
            rows.setdefault(i, {})[j] = v
    nnz = sum(len(r) for r in rows.values())
    if nnz <= DENSIFY_THRESHOLD:
        live_cols = sorted({j for r in rows.values() for j in r})
        colpos = {j: k for k, j in enumerate(live_cols)}
        dense = []
        for i in sorted(rows):
            out = [0] * len(live_cols)
            for j, v in rows[i].items():
                out[colpos[j]] = v
            dense.append(out)
        return tuple(_dense_invariant_factors(dense))
    ones, dense = _sparse_unit_reduce(rows)
    rest = _dense_invariant_factors(dense) if dense else []
    return tuple([1] * ones + rest)


def smith_normal_form(m):
    """Invariant factors d1 | d2 | ... | dr and the rational rank r."""
    rows = _as_rows(m)
    nnz = sum(1 for row in rows for v in row if v)
    if nnz > DENSIFY_THRESHOLD:
        entries = {
            (i, j): v for i, row in enumerate(rows) for j, v in enumerate(row) if v
        }
        factors = invariant_factors_sparse(entries)
    else:
        factors = tuple(_dense_invariant_factors(rows))
    return factors, len(factors)


@dataclass(frozen=True)
class AbelianInvariants:
    """Betti number plus the torsion invariant-factor chain."""

    betti: int
    torsion_factors: tuple

    def __post_init__(self):
        prev = None
        for f in self.torsion_factors:
            if f < 2:
                raise ValueError("torsion factors must be >= 2")
            if prev is not None and f % prev:
                raise ValueError("factors must form a divisibility chain")
            prev = f

    @property
    def torsion_order(self):
        out = 1
        for f in self.torsion_factors:
            out *= f
        return out

    def __str__(self):
        parts = ["Z"] * self.betti + [f"Z/{f}" for f in self.torsion_factors]
        return " x ".join(parts) if parts else "0"


def _relation_matrix(rank, relators):
    entries = {}
    for i, rel in enumerate(relators):
        for u in rel:
            k = (i, abs(u) - 1)
            entries[k] = entries.get(k, 0) + (1 if u > 0 else -1)
    return {k: v for k, v in entries.items() if v}


def abelian_invariants(presentation):
    """Invariants of the abelianization of a presented group.

    Accepts anything with integer `rank` and iterable `relators` of
    words (signed generator indices).
    """
    rank = presentation.rank
    relators = list(presentation.relators)
    entries = _relation_matrix(rank, relators)
    factors = invariant_factors_sparse(entries)
    return AbelianInvariants(
        betti=rank - len(factors),
        torsion_factors=tuple(f for f in factors if f > 1),
    )


def abelian_invariants_finite(group_or_handle):
    """Invariants of K/[K,K] for a finite group; betti is always 0."""
    from . import groups

    if isinstance(group_or_handle, groups.SubgroupHandle):
        k = group_or_handle.as_group()
    else:
        k = group_or_handle
    derived = groups.commutator_subgroup(k, groups.full_handle(k), groups.full_handle(k))
    q, _ = groups.quotient(k, derived)
    factors = _abelian_factor_chain(q)
    return AbelianInvariants(betti=0, torsion_factors=factors)


def _abelian_factor_chain(q):
    """Invariant factors of an abelian Cayley-table group, ascending."""
    from . import groups

    descending = []
    current = q
    while current.order > 1:
        orders = [current.element_order(i) for i in range(current.order)]
        exponent = max(orders)
        x = orders.index(exponent)
        descending.append(exponent)
        cyc = groups.closure(current, [x])
        current, _ = groups.quotient(current, cyc)
    return tuple(f for f in reversed(descending) if f > 1)


def read_int_matrix(text):
    """Matrix file format: first line "rows cols", then row-major ints."""
    tokens = []
    for ln, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            tokens.extend((tok, ln) for tok in body.split())
    if len(tokens) < 2:
        raise SpecFileError("matrix file needs a 'rows cols' header")
    try:
        nums = [int(tok) for tok, _ in tokens]
    except ValueError as exc:
        raise SpecFileError(str(exc)) from None
    rows, cols = nums[0], nums[1]
    body = nums[2:]
    if rows < 0 or cols < 0 or len(body) != rows * cols:
        raise SpecFileError(
            f"expected {rows}x{cols} = {rows * cols} entries, got {len(body)}"
        )
    grid = tuple(
        tuple(body[i * cols : (i + 1) * cols]) for i in range(rows)
    )
    return IntMatrix(rows, cols, grid)


def write_int_matrix(m):
    lines = [f"{m.rows} {m.cols}"]
    for row in m.entries:
        lines.append(" ".join(str(v) for v in row))
    return "\n".join(lines) + "\n"
