"""Exact integer/rational arithmetic for bound evaluation.

Every pass/fail verdict in the package is decided with integer or
rational arithmetic only.  Fractional powers x^(a/b) are compared via
integer b-th roots of x^a, and logarithms enter only through certified
rational enclosures, so a reported "pass" can never be a rounding
artifact.
"""

from fractions import Fraction
from functools import lru_cache


def iroot(n, k):
    """Floor of the k-th root of a nonnegative integer, exactly."""
    if n < 0:
        raise ValueError("iroot of negative number")
    if k < 1:
        raise ValueError("root degree must be >= 1")
    if n == 0:
        return 0
    if k == 1:
        return n
    # Newton iteration seeded above the root; clamp loops make the
    # result bulletproof against off-by-one.
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def floor_pow_frac(base, num, den, scale=1):
    """floor(scale * base^(num/den)) for integers base >= 0.

    With scale = 1 this is the exact floored fractional power used by
    the conservative bound checks.
    """
    if base < 0:
        raise ValueError("negative base")
    return iroot(scale**den * base**num, den)


def floor_scaled_pow(coeff, base, num, den):
    """floor(coeff * base^(num/den)) with integer coeff >= 0, exactly.

    Uses coeff * base^(num/den) = (coeff^den * base^num)^(1/den).
    """
    if coeff < 0 or base < 0:
        raise ValueError("negative input")
    return iroot(coeff**den * base**num, den)


def pow_frac_interval(base, num, den, scale_bits=16):
    """Rational enclosure [lo, hi] of base^(num/den) for base >= 1."""
    if base < 1:
        raise ValueError("base must be >= 1")
    if base == 1:
        return Fraction(1), Fraction(1)
    s = 1 << scale_bits
    r = iroot(s**den * base**num, den)
    return Fraction(r, s), Fraction(r + 1, s)


@lru_cache(maxsize=None)
def _ln2_enclosure(terms=48):
    # ln 2 = sum_{k>=1} 1/(k 2^k); the tail after n terms is below
    # 1/((n+1) 2^n), which certifies the upper end.
    lo = sum(Fraction(1, k * 2**k) for k in range(1, terms + 1))
    return lo, lo + Fraction(1, (terms + 1) * 2**terms)


def log2_interval(n, scale_bits=6):
    """Rational enclosure of log2(n) for an integer n >= 1."""
    if n < 1:
        raise ValueError("log2 of non-positive integer")
    if n & (n - 1) == 0:
        e = n.bit_length() - 1
        return Fraction(e), Fraction(e)
    q = 1 << scale_bits
    m = n**q
    top = m.bit_length() - 1  # 2^top <= n^q < 2^(top+1)
    return Fraction(top, q), Fraction(top + 1, q)


def ln_interval(n, scale_bits=6):
    """Rational enclosure of ln(n) for an integer n >= 1."""
    if n == 1:
        return Fraction(0), Fraction(0)
    l2lo, l2hi = log2_interval(n, scale_bits)
    ln2lo, ln2hi = _ln2_enclosure()
    return l2lo * ln2lo, l2hi * ln2hi


def pow_lower(base, exponent_lo, root_scale=64):
    """Integer lower bound for base^e given a rational e >= exponent_lo.

    base is an integer >= 1.  Returns floor(base^exponent_lo) computed
    through an exact integer root; monotonicity in the exponent makes
    the result a certified lower bound for base^e whenever
    e >= exponent_lo >= 0.
    """
    if base < 1:
        raise ValueError("base must be >= 1")
    if base == 1:
        return 1
    e = Fraction(exponent_lo)
    if e <= 0:
        return 1
    # Rescale to a bounded denominator so the integer root stays cheap.
    num = (e.numerator * root_scale) // e.denominator
    return iroot(base**num, root_scale)


def pow_upper(base, exponent_hi, root_scale=64):
    """Integer upper bound for base^e given a rational e <= exponent_hi."""
    if base < 1:
        raise ValueError("base must be >= 1")
    if base == 1:
        return 1
    e = Fraction(exponent_hi)
    if e <= 0:
        return 1
    num = -((-e.numerator * root_scale) // e.denominator)  # ceil
    return iroot(base**num, root_scale) + 1
