import math
import random
from itertools import combinations

import pytest

from rankgrad import smallgroups as sg
from rankgrad.errors import SpecFileError
from rankgrad.presentations import Presentation
from rankgrad.smith import (
    IntMatrix,
    abelian_invariants,
    abelian_invariants_finite,
    invariant_factors_sparse,
    read_int_matrix,
    smith_normal_form,
    write_int_matrix,
)
from rankgrad.words import parse_word


def _det(rows):
    # cofactor expansion; fine for the <= 6x6 oracle sizes
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det(minor)
    return total


def _determinant_divisors(rows):
    """gcd of all k x k minors for each k; the classical SNF oracle."""
    nr, nc = len(rows), len(rows[0]) if rows else 0
    out = []
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for ri in combinations(range(nr), k):
            for ci in combinations(range(nc), k):
                sub = [[rows[i][j] for j in ci] for i in ri]
                g = math.gcd(g, abs(_det(sub)))
        out.append(g)
    return out


def test_snf_examples():
    factors, rank = smith_normal_form([[2, 0], [0, 3]])
    assert factors == (1, 6) and rank == 2
    factors, rank = smith_normal_form([[0, 0], [0, 0]])
    assert factors == () and rank == 0
    factors, rank = smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert factors == (1, 1, 1) and rank == 3


def test_snf_against_determinant_divisors():
    rng = random.Random(20240811)
    for trial in range(500):
        nr = rng.randrange(1, 7)
        nc = rng.randrange(1, 7)
        rows = [[rng.randrange(-9, 10) for _ in range(nc)] for _ in range(nr)]
        factors, rank = smith_normal_form([r[:] for r in rows])
        divisors = _determinant_divisors(rows)
        # product of the first k factors equals the k-th determinant divisor
        prod = 1
        for k in range(1, rank + 1):
            prod *= factors[k - 1]
            assert prod == divisors[k - 1], (rows, factors, divisors)
        if rank < min(nr, nc):
            assert divisors[rank] == 0
        # divisibility chain
        for a, b in zip(factors, factors[1:]):
            assert b % a == 0


def test_sparse_matches_dense():
    rng = random.Random(99)
    for _ in range(50):
        nr, nc = rng.randrange(1, 8), rng.randrange(1, 8)
        rows = [[rng.choice([0, 0, 0, 1, -1, 2]) for _ in range(nc)] for _ in range(nr)]
        entries = {
            (i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v
        }
        dense_factors, _ = smith_normal_form([r[:] for r in rows])
        assert invariant_factors_sparse(entries) == dense_factors


def test_abelian_invariants_examples():
    free2 = Presentation(2, ())
    inv = abelian_invariants(free2)
    assert inv.betti == 2 and inv.torsion_factors == ()
    z6 = Presentation(1, (parse_word("aaaaaa"),))
    inv = abelian_invariants(z6)
    assert inv.betti == 0 and inv.torsion_factors == (6,)
    s3 = Presentation(2, (parse_word("aa"), parse_word("bbb"), parse_word("abab")))
    inv = abelian_invariants(s3)
    assert inv.betti == 0 and inv.torsion_factors == (2,)


def test_abelian_invariants_finite_examples():
    assert abelian_invariants_finite(sg.symmetric(3)).torsion_factors == (2,)
    assert abelian_invariants_finite(sg.abelian([2, 2])).torsion_factors == (2, 2)
    # perfect group: trivial abelianization
    a5 = sg.alternating(5)
    inv = abelian_invariants_finite(a5)
    assert inv.betti == 0 and inv.torsion_factors == ()


def test_abelian_invariants_finite_matches_presentation_route():
    from rankgrad.rewriting import presentation_on

    for g in [sg.symmetric(3), sg.dihedral(4), sg.abelian([4, 2]), sg.dicyclic(2)]:
        pres = presentation_on(g, list(g.generators))
        via_pres = abelian_invariants(pres)
        via_table = abelian_invariants_finite(g)
        assert via_pres.betti == 0
        assert via_pres.torsion_factors == via_table.torsion_factors


def test_tietze_preserves_abelian_invariants():
    from rankgrad.rewriting import presentation_on, simplify_presentation

    g = sg.abelian([2, 2])
    pres = presentation_on(g, list(g.generators))
    simplified, _, _ = simplify_presentation(pres, keep_generators=True)
    assert abelian_invariants(pres) == abelian_invariants(simplified)


def test_matrix_file_roundtrip():
    m = IntMatrix.from_rows([[1, -2, 3], [0, 5, -6]])
    text = write_int_matrix(m)
    assert text.splitlines()[0] == "2 3"
    assert read_int_matrix(text) == m
    with pytest.raises(SpecFileError):
        read_int_matrix("2 2\n1 2 3")
    with pytest.raises(SpecFileError):
        read_int_matrix("")


def test_divisibility_chain_validation():
    from rankgrad.smith import AbelianInvariants

    with pytest.raises(ValueError):
        AbelianInvariants(betti=0, torsion_factors=(4, 2))
    inv = AbelianInvariants(betti=1, torsion_factors=(2, 6))
    assert inv.torsion_order == 12
    assert str(inv) == "Z x Z/2 x Z/6"
