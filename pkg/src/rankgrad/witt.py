"""Witt numbers, lower central p-series dimensions, and the index table.

r_i counts binary Lyndon words of length i and equals the Moebius sum
(1/i) sum_{j|i} mu(i/j) 2^j.  Partial sums a_n = sum r_i give the
elementary-abelian quotient dimensions of the lower p-central series of
a rank-2 free group, and b_n = sum a_i the fiber-product index
exponents.  Every ratio is kept as an exact Fraction; no verdict
involves floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CapExceeded, DomainError

LYNDON_ENUMERATION_CAP = 24


def _divisors(n):
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _mobius(n):
    if n == 1:
        return 1
    out = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


def witt_number(i, alphabet=2):
    """(1/i) sum_{j | i} mu(i/j) alphabet^j, exactly."""
    if i < 1:
        raise DomainError("index must be >= 1")
    total = sum(_mobius(i // j) * alphabet**j for j in _divisors(i))
    if total % i:
        raise RuntimeError("Witt sum not divisible by its index")
    return total // i


def lyndon_words(length, alphabet=2):
    """All Lyndon words of exactly this length (Duval's algorithm)."""
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == length:
            yield tuple(w)
        m = len(w)
        while len(w) < length:
            w.append(w[-m])
        while w and w[-1] == alphabet - 1:
            w.pop()


def lyndon_count(i, alphabet=2):
    """Independent oracle for witt_number: enumerate the Lyndon words."""
    if i < 1:
        raise DomainError("length must be >= 1")
    if i > LYNDON_ENUMERATION_CAP:
        raise CapExceeded("lyndon_count", i, LYNDON_ENUMERATION_CAP)
    return sum(1 for _ in lyndon_words(i, alphabet))


@dataclass(frozen=True)
class WittRow:
    n: int
    r: int
    a: int
    b: int
    index_exponent: int | None  # b_{n-1}; undefined on the first row
    ratio: Fraction | None  # a_n / b_{n-1}


@dataclass(frozen=True)
class WittTable:
    p: int
    rows: tuple
    epsilon: Fraction | None = None

    def row(self, n):
        return self.rows[n - 1]

    def index_of_u(self, n):
        """[F x F : U_n] = p^(b_{n-1})."""
        exponent = self.rows[n - 1].index_exponent
        if exponent is None:
            raise DomainError("the first row has no index exponent")
        return self.p**exponent


def build_witt_table(p, n_max, epsilon=None, alphabet=2):
    """Rows 1..n_max of (n, r_n, a_n, b_n, b_{n-1}, a_n/b_{n-1}).

    The r/a/b columns do not depend on p; p only scales the index
    p^(b_{n-1}).  The middle identity a_n/b_{n-1} = b_n/b_{n-1} - 1 is
    asserted on every row.
    """
    if n_max < 1:
        raise DomainError("need n_max >= 1")
    rows = []
    a = 0
    b_prev = None
    b = 0
    for n in range(1, n_max + 1):
        r = witt_number(n, alphabet)
        a += r
        b_prev = b if n > 1 else None
        b += a
        ratio = None
        if b_prev is not None:
            ratio = Fraction(a, b_prev)
            if ratio != Fraction(b, b_prev) - 1:
                raise RuntimeError("ratio identity fails")
        if r < 1 or a < 1 or b < 1:
            raise RuntimeError("table entries must stay positive")
        rows.append(
            WittRow(n=n, r=r, a=a, b=b, index_exponent=b_prev, ratio=ratio)
        )
    eps = Fraction(epsilon) if epsilon is not None else None
    return WittTable(p=p, rows=tuple(rows), epsilon=eps)


@dataclass(frozen=True)
class LastEqReport:
    epsilon: Fraction
    witnesses: tuple  # n with a_n / b_{n-1} >= 1 - epsilon
    max_ratio: Fraction
    max_growth: Fraction  # running sup of b_n / b_{n-1}

    @property
    def nonempty(self):
        return bool(self.witnesses)


def check_lasteq(table, epsilon):
    """All n with a_n/b_{n-1} >= 1 - epsilon, plus growth statistics.

    The growth column b_n/b_{n-1} shadows the limsup >= 2 statement;
    only the finite trend is reported, no limit is claimed.
    """
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise DomainError("epsilon must lie strictly between 0 and 1")
    threshold = 1 - eps
    witnesses = []
    max_ratio = None
    max_growth = None
    for row in table.rows:
        if row.ratio is None:
            continue
        if row.ratio >= threshold:
            witnesses.append(row.n)
        if max_ratio is None or row.ratio > max_ratio:
            max_ratio = row.ratio
        growth = row.ratio + 1
        if max_growth is None or growth > max_growth:
            max_growth = growth
    if max_ratio is None:
        raise DomainError("table needs at least two rows")
    return LastEqReport(
        epsilon=eps,
        witnesses=tuple(witnesses),
        max_ratio=max_ratio,
        max_growth=max_growth,
    )


def necklace_identity_holds(i, alphabet=2):
    """sum_{j | i} j r_j = alphabet^i: the necklace-splitting identity."""
    total = sum(j * witt_number(j, alphabet) for j in _divisors(i))
    return total == alphabet**i


def witt_csv_rows(table):
    """Rows for the CSV hand-off: n,r,a,b,index_exponent,ratio_num,ratio_den."""
    out = []
    for row in table.rows:
        if row.ratio is None:
            out.append((row.n, row.r, row.a, row.b, "", "", ""))
        else:
            out.append(
                (
                    row.n,
                    row.r,
                    row.a,
                    row.b,
                    row.index_exponent,
                    row.a,
                    row.index_exponent,
                )
            )
    return out
