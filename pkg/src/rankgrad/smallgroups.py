"""Constructors and a stored catalog of small groups.

The catalog of every group of order <= 16 (42 isomorphism classes) is
shipped as a JSON data file of Cayley tables; each entry records the
construction it came from.  Orders 17..32 are covered on demand by the
standard families (abelian, dihedral, dicyclic, metacyclic, generalized
dihedral, direct products, a few named groups); that extension is the
test universe for the commutator-index checks, complete through 16 and
best-effort beyond.
"""

from __future__ import annotations

import json
from importlib import resources
from itertools import product as iproduct

from .errors import SpecFileError
from .groups import (
    FiniteGroup,
    direct_product,
    find_isomorphism,
    fingerprint,
    quotient,
    closure,
)

KNOWN_CLASS_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5,
    9: 2, 10: 2, 11: 1, 12: 5, 13: 1, 14: 2, 15: 1, 16: 14,
}


def trivial_group():
    return FiniteGroup([[0]], [], name="1")


def cyclic(n, name=None):
    if n < 1:
        raise ValueError("order must be positive")
    mult = [[(i + j) % n for j in range(n)] for i in range(n)]
    gens = [1] if n > 1 else []
    return FiniteGroup(mult, gens, name=name or f"Z{n}")


def abelian(factors, name=None):
    """Direct product of cyclic groups of the given orders."""
    factors = [f for f in factors if f > 1]
    if not factors:
        return trivial_group()
    g = cyclic(factors[0])
    for f in factors[1:]:
        g = direct_product(g, cyclic(f))
    g.name = name or "x".join(f"Z{f}" for f in factors)
    return g


def group_from_action(elements, op, generators, name=None):
    """Cayley table from abstract elements under an associative op.

    Elements are closed over the generators, then sorted for a
    reproducible indexing.
    """
    elems = set(elements)
    frontier = list(elements)
    while frontier:
        nxt = []
        for x in frontier:
            for g in generators:
                y = op(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    ordered = sorted(elems)
    pos = {x: i for i, x in enumerate(ordered)}
    mult = [[pos[op(x, y)] for y in ordered] for x in ordered]
    gen_idx = [pos[g] for g in generators]
    labels = [str(x) for x in ordered]
    return FiniteGroup(mult, gen_idx, labels=labels, name=name)


def compose_perms(p, q):
    """Apply p first, then q (image-list convention)."""
    return tuple(q[p[i]] for i in range(len(p)))


def from_permutations(gens, degree, name=None):
    gens = [tuple(g) for g in gens]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise ValueError(f"not a permutation of degree {degree}: {g}")
    identity = tuple(range(degree))
    return group_from_action([identity], compose_perms, gens, name=name)


def symmetric(n, name=None):
    if n <= 1:
        return trivial_group()
    transposition = tuple([1, 0] + list(range(2, n)))
    cycle = tuple(list(range(1, n)) + [0])
    return from_permutations([transposition, cycle], n, name=name or f"S{n}")


def alternating(n, name=None):
    if n <= 2:
        return trivial_group()
    three_cycle = tuple([1, 2, 0] + list(range(3, n)))
    if n == 3:
        gens = [three_cycle]
    elif n % 2:
        gens = [three_cycle, tuple(list(range(1, n)) + [0])]
    else:
        gens = [three_cycle, tuple([0] + list(range(2, n)) + [1])]
    return from_permutations(gens, n, name=name or f"A{n}")


def metacyclic(m, n, r, s, name=None):
    """<a, b | a^m, b^n = a^s, b a b^-1 = a^r> as an explicit table.

    Requires r^n = 1 (mod m) and s(r-1) = 0 (mod m); order is m*n.
    Element (i, j) = a^i b^j is encoded as i*n + j.
    """
    if pow(r, n, m) != 1 % m or (s * (r - 1)) % m:
        raise ValueError("inconsistent metacyclic parameters")
    size = m * n

    def mul(u, v):
        i, j = divmod(u, n)
        k, l = divmod(v, n)
        i2 = (i + k * pow(r, j, m)) % m
        j2 = j + l
        if j2 >= n:
            j2 -= n
            i2 = (i2 + s) % m
        return i2 * n + j2

    mult = [[mul(u, v) for v in range(size)] for u in range(size)]
    gens = [n, 1] if m > 1 else [1]  # a = (1,0), b = (0,1)
    return FiniteGroup(mult, gens, name=name)


def dihedral(n, name=None):
    """Dihedral group of order 2n."""
    if n == 1:
        return cyclic(2, name=name or "Z2")
    return metacyclic(n, 2, n - 1, 0, name=name or f"D{n}")


def dicyclic(n, name=None):
    """Dicyclic group of order 4n; n = 2 gives the quaternions."""
    if n < 2:
        raise ValueError("dicyclic needs n >= 2")
    return metacyclic(2 * n, 2, 2 * n - 1, n, name=name or f"Dic{n}")


def semidirect(n_group, h_group, action, name=None):
    """N x| H for an action H -> Aut(N) given as image tables per h.

    action[h][x] is the image of x in N under the automorphism attached
    to h; element (x, h) is encoded as x*|H| + h.
    """
    nn, nh = n_group.order, h_group.order
    size = nn * nh

    def mul(u, v):
        x1, h1 = divmod(u, nh)
        x2, h2 = divmod(v, nh)
        return n_group.mult[x1][action[h1][x2]] * nh + h_group.mult[h1][h2]

    mult = [[mul(u, v) for v in range(size)] for u in range(size)]
    gens = [g * nh + h_group.identity for g in n_group.generators]
    gens += [n_group.identity * nh + g for g in h_group.generators]
    return FiniteGroup(mult, gens, name=name)


def generalized_dihedral(a_group, name=None):
    """A x| Z2 with the inversion action; A must be abelian."""
    if not a_group.is_abelian():
        raise ValueError("generalized dihedral needs an abelian base")
    ident = list(range(a_group.order))
    inversion = [a_group.inv[x] for x in range(a_group.order)]
    return semidirect(a_group, cyclic(2), [ident, inversion], name=name)


def sl23(name="SL(2,3)"):
    """2x2 matrices over F3 with determinant 1, order 24."""
    def mul(u, v):
        a, b, c, d = u
        e, f, g, h = v
        return (
            (a * e + b * g) % 3,
            (a * f + b * h) % 3,
            (c * e + d * g) % 3,
            (c * f + d * h) % 3,
        )

    gens = [(1, 1, 0, 1), (1, 0, 1, 1)]
    return group_from_action([(1, 0, 0, 1)], mul, gens, name=name)


def heisenberg(p, name=None):
    """Upper unitriangular 3x3 matrices over F_p, order p^3, exponent p
    for odd p."""
    def mul(u, v):
        a, b, c = u
        d, e, f = v
        return ((a + d) % p, (b + e) % p, (c + f + a * e) % p)

    gens = [(1, 0, 0), (0, 1, 0)]
    return group_from_action([(0, 0, 0)], mul, gens, name=name or f"Heis{p**3}")


def central_product(a_group, b_group, a_central, b_central, name=None):
    """Quotient of A x B by the diagonal of two equal-order central
    cyclic subgroups."""
    if a_group.element_order(a_central) != b_group.element_order(b_central):
        raise ValueError("central elements must have equal order")
    g = direct_product(a_group, b_group)
    diag = closure(g, [a_central * b_group.order + b_group.inv[b_central]])
    q, _ = quotient(g, diag)
    q.name = name
    return q


def _valid_metacyclic_params(max_order):
    """Deterministic sweep of consistent (m, n, r, s) tuples."""
    out = []
    for m in range(2, max_order // 2 + 1):
        for n in (2, 3, 4, 8):
            if m * n > max_order:
                continue
            for r in range(2, m):
                if pow(r, n, m) != 1 % m:
                    continue
                for s in (0, m // 2):
                    if (s * (r - 1)) % m:
                        continue
                    out.append((m, n, r, s))
    return out


def cyclic_extension(n_group, alpha, z, name=None):
    """Degree-2 cyclic extension of N: adjoin t with t n t^-1 = alpha(n)
    and t^2 = z.

    Requires alpha in Aut(N), alpha(z) = z and alpha^2 = conjugation by
    z; every group with an index-2 subgroup isomorphic to N arises this
    way.  Element (n, e) is encoded as n*2 + e.
    """
    nn = n_group.order
    mult_n = n_group.mult

    def mul(u, v):
        x, e = divmod(u, 2)
        y, f = divmod(v, 2)
        if e:
            y = alpha[y]
        w = mult_n[x][y]
        if e and f:
            return mult_n[w][z] * 2
        return w * 2 + (e ^ f)

    size = 2 * nn
    mult = [[mul(u, v) for v in range(size)] for u in range(size)]
    gens = [g * 2 for g in n_group.generators] + [n_group.identity * 2 + 1]
    return FiniteGroup(mult, gens, name=name)


def _elementary_involution_reps(dim):
    """Identity plus one involution per rank of (alpha - 1) on F2^dim.

    Conjugating alpha into Jordan form carries z along, so sweeping all
    fixed z against these representatives still reaches every extension
    class of the elementary abelian group.
    """
    n = 1 << dim
    reps = [list(range(n))]
    for rank in range(1, dim // 2 + 1):
        table = []
        for v in range(n):
            w = v
            for block in range(rank):
                # bit 2*block maps to itself + next bit
                if v & (1 << (2 * block)):
                    w ^= 1 << (2 * block + 1)
            table.append(w)
        reps.append(table)
    return reps


def _degree2_extensions(n_group, alphas):
    """All consistent cyclic extensions of N from the given automorphisms."""
    out = []
    nn = n_group.order
    mult = n_group.mult
    inv = n_group.inv
    for alpha in alphas:
        alpha2 = [alpha[alpha[x]] for x in range(nn)]
        for z in range(nn):
            if alpha[z] != z:
                continue
            zinv = inv[z]
            if all(alpha2[m] == mult[mult[z][m]][zinv] for m in range(nn)):
                out.append(cyclic_extension(n_group, alpha, z))
    return out


def _z3_d4_twist():
    """C3 x| D4 with the rotation inverting and the reflection fixing."""
    z3 = cyclic(3)
    d4 = dihedral(4)
    ident = [0, 1, 2]
    invert = [0, 2, 1]
    action = [invert if (h // 2) % 2 else ident for h in range(8)]
    return semidirect(z3, d4, action, name="Z3:D4")


def _pauli16():
    """Central product D4 * Z4: quotient of D4 x Z4 by <(r^2, z^2)>."""
    d4 = dihedral(4)
    z4 = cyclic(4)
    g = direct_product(d4, z4)
    # a = (1,0) in the metacyclic encoding, so a^2 = (2,0) has index 4
    r2 = 2 * 2 + 0
    diag = closure(g, [r2 * 4 + 2])
    q, _ = quotient(g, diag)
    q.name = "Pauli16"
    return q


def _semidirect_z4z2_z2():
    """(Z4 x Z2) x| Z2 where the involution sends a -> ab, b -> b."""
    n = abelian([4, 2])
    ident = list(range(8))
    # element (i, j) of Z4 x Z2 has index i*2 + j; a -> ab means
    # a^i b^j -> a^i b^(i+j)
    twist = [(i * 2 + ((i + j) % 2)) for i in range(4) for j in range(2)]
    return semidirect(n, cyclic(2), [ident, twist], name="(Z4xZ2):Z2")


def _catalog_constructions():
    """Name, construction-string, builder for all 42 groups of order <= 16."""
    entries = [
        ("1", "trivial", trivial_group),
        ("Z2", "cyclic(2)", lambda: cyclic(2)),
        ("Z3", "cyclic(3)", lambda: cyclic(3)),
        ("Z4", "cyclic(4)", lambda: cyclic(4)),
        ("Z2xZ2", "abelian [2,2]", lambda: abelian([2, 2])),
        ("Z5", "cyclic(5)", lambda: cyclic(5)),
        ("Z6", "cyclic(6)", lambda: cyclic(6)),
        ("S3", "symmetric(3)", lambda: symmetric(3)),
        ("Z7", "cyclic(7)", lambda: cyclic(7)),
        ("Z8", "cyclic(8)", lambda: cyclic(8)),
        ("Z4xZ2", "abelian [4,2]", lambda: abelian([4, 2])),
        ("Z2^3", "abelian [2,2,2]", lambda: abelian([2, 2, 2])),
        ("D4", "dihedral(4)", lambda: dihedral(4)),
        ("Q8", "dicyclic(2)", lambda: dicyclic(2, name="Q8")),
        ("Z9", "cyclic(9)", lambda: cyclic(9)),
        ("Z3xZ3", "abelian [3,3]", lambda: abelian([3, 3])),
        ("Z10", "cyclic(10)", lambda: cyclic(10)),
        ("D5", "dihedral(5)", lambda: dihedral(5)),
        ("Z11", "cyclic(11)", lambda: cyclic(11)),
        ("Z12", "cyclic(12)", lambda: cyclic(12)),
        ("Z6xZ2", "abelian [6,2]", lambda: abelian([6, 2])),
        ("D6", "dihedral(6)", lambda: dihedral(6)),
        ("A4", "alternating(4)", lambda: alternating(4)),
        ("Dic3", "dicyclic(3)", lambda: dicyclic(3)),
        ("Z13", "cyclic(13)", lambda: cyclic(13)),
        ("Z14", "cyclic(14)", lambda: cyclic(14)),
        ("D7", "dihedral(7)", lambda: dihedral(7)),
        ("Z15", "cyclic(15)", lambda: cyclic(15)),
        ("Z16", "cyclic(16)", lambda: cyclic(16)),
        ("Z8xZ2", "abelian [8,2]", lambda: abelian([8, 2])),
        ("Z4xZ4", "abelian [4,4]", lambda: abelian([4, 4])),
        ("Z4xZ2xZ2", "abelian [4,2,2]", lambda: abelian([4, 2, 2])),
        ("Z2^4", "abelian [2,2,2,2]", lambda: abelian([2, 2, 2, 2])),
        ("D8", "dihedral(8)", lambda: dihedral(8)),
        ("QD16", "metacyclic(8,2,3,0)", lambda: metacyclic(8, 2, 3, 0, name="QD16")),
        ("Q16", "dicyclic(4)", lambda: dicyclic(4, name="Q16")),
        ("M4(2)", "metacyclic(8,2,5,0)", lambda: metacyclic(8, 2, 5, 0, name="M4(2)")),
        ("D4xZ2", "dihedral(4) x cyclic(2)", lambda: direct_product(dihedral(4), cyclic(2))),
        ("Q8xZ2", "dicyclic(2) x cyclic(2)", lambda: direct_product(dicyclic(2), cyclic(2))),
        ("Z4:Z4", "metacyclic(4,4,3,0)", lambda: metacyclic(4, 4, 3, 0, name="Z4:Z4")),
        ("(Z4xZ2):Z2", "semidirect, a -> ab twist", _semidirect_z4z2_z2),
        ("Pauli16", "central product D4 * Z4", _pauli16),
    ]
    return entries


def build_catalog():
    """Construct the order <= 16 catalog fresh (bypasses the data file)."""
    out = []
    for name, construction, builder in _catalog_constructions():
        g = builder()
        g.name = name
        out.append((name, construction, g))
    return out


CATALOG_FILE = "small_groups.json"


def write_catalog_file(path):
    rows = []
    for name, construction, g in build_catalog():
        rows.append(
            {
                "name": name,
                "order": g.order,
                "construction": construction,
                "table": [list(r) for r in g.mult],
                "generators": list(g.generators),
            }
        )
    payload = {"format": "small-groups", "version": 1, "groups": rows}
    with open(path, "w") as fh:
        json.dump(payload, fh, separators=(",", ":"))
        fh.write("\n")


_CATALOG_CACHE = None


def small_groups(max_order=16):
    """Groups of order <= max_order (<= 16) from the shipped data file."""
    global _CATALOG_CACHE
    if max_order > 16:
        raise ValueError("the stored catalog stops at order 16")
    if _CATALOG_CACHE is None:
        try:
            text = (
                resources.files("rankgrad") / "data" / CATALOG_FILE
            ).read_text()
            payload = json.loads(text)
            groups = []
            for row in payload["groups"]:
                g = FiniteGroup(row["table"], row["generators"], name=row["name"])
                g.construction = row["construction"]
                groups.append(g)
        except FileNotFoundError:
            groups = []
            for name, construction, g in build_catalog():
                g.construction = construction
                groups.append(g)
        _CATALOG_CACHE = groups
    return [g for g in _CATALOG_CACHE if g.order <= max_order]


def _abelian_groups_of_order(n):
    """All abelian groups of order n, one per isomorphism class."""
    def partitions(k):
        if k == 0:
            yield []
            return
        for first in range(k, 0, -1):
            for rest in partitions(k - first):
                if not rest or rest[0] <= first:
                    yield [first] + rest

    factorization = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factorization.append((p, e))
        p += 1
    if m > 1:
        factorization.append((m, 1))
    choices = []
    for p, e in factorization:
        choices.append([[p**part for part in parts] for parts in partitions(e)])
    out = []
    for combo in iproduct(*choices):
        factors = [f for prime_parts in combo for f in prime_parts]
        out.append(abelian(sorted(factors, reverse=True)))
    return out


_EXTENDED_CACHE = {}


def extended_universe(max_order=32):
    """Small-group universe up to max_order, deduplicated by isomorphism.

    Complete through order 16; beyond that it holds the standard
    families plus all direct products of catalog members.
    """
    if max_order in _EXTENDED_CACHE:
        return _EXTENDED_CACHE[max_order]
    candidates = list(small_groups(min(16, max_order)))
    if max_order > 16:
        for n in range(17, max_order + 1):
            candidates.extend(_abelian_groups_of_order(n))
        for n in range(3, max_order // 2 + 1):
            candidates.append(dihedral(n))
        for n in range(2, max_order // 4 + 1):
            candidates.append(dicyclic(n))
        for params, nm in [
            ((16, 2, 7, 0), "QD32"),
            ((16, 2, 9, 0), "M5(2)"),
            ((3, 8, 2, 0), "Z3:Z8"),
            ((7, 3, 2, 0), "F21"),
            ((5, 4, 2, 0), "F20"),
            ((9, 3, 4, 0), "Z9:Z3"),
        ]:
            m, nn, r, s = params
            if m * nn <= max_order:
                candidates.append(metacyclic(m, nn, r, s, name=nm))
        for m, nn, r, s in _valid_metacyclic_params(max_order):
            candidates.append(
                metacyclic(m, nn, r, s, name=f"MC({m},{nn},{r},{s})")
            )
        if max_order >= 24:
            candidates.append(symmetric(4))
            candidates.append(sl23())
            candidates.append(_z3_d4_twist())
        if max_order >= 27:
            candidates.append(heisenberg(3))
        if max_order >= 32:
            # every order-32 group is a degree-2 cyclic extension of an
            # order-16 group, so this sweep is exhaustive at 32
            from .groups import automorphisms

            for n16 in small_groups(16):
                if n16.order != 16:
                    continue
                if all(n16.element_order(x) <= 2 for x in range(16)):
                    alphas = _elementary_involution_reps(4)
                else:
                    alphas = automorphisms(n16)
                candidates.extend(_degree2_extensions(n16, alphas))
        base = small_groups(16)
        for a in base:
            if a.order < 2:
                continue
            if a.is_abelian() and a.order <= 16:
                dh = generalized_dihedral(a, name=f"Dih({a.name})")
                if dh.order <= max_order:
                    candidates.append(dh)
            for b in base:
                if b.order < 2 or a.order * b.order > max_order:
                    continue
                candidates.append(direct_product(a, b))
    by_fp = {}
    kept = []
    for g in candidates:
        if g.order > max_order:
            continue
        fp = fingerprint(g)
        bucket = by_fp.setdefault(fp, [])
        if any(find_isomorphism(g, h, _fingerprints=False) for h in bucket):
            continue
        bucket.append(g)
        kept.append(g)
    kept.sort(key=lambda g: (g.order, g.name or ""))
    _EXTENDED_CACHE[max_order] = kept
    return kept


# ---------------------------------------------------------------------------
# group input format (JSON)


def group_from_json(payload, name=None):
    """Load {"kind":"cayley",...} or {"kind":"perm",...} group input."""
    if isinstance(payload, str):
        payload = json.loads(payload)
    kind = payload.get("kind")
    if kind == "cayley":
        g = FiniteGroup(payload["table"], payload.get("generators", []), name=name)
    elif kind == "perm":
        degree = payload["degree"]
        g = from_permutations(payload["generators"], degree, name=name)
    else:
        raise SpecFileError(f"unknown group kind {kind!r}")
    if g.order <= 256:
        g.validate()
    return g


def lookup_group(spec, max_order=16):
    """Resolve a catalog name, a path to a JSON file, or raw JSON."""
    for g in small_groups(max_order):
        if g.name == spec:
            return g
    if spec.strip().startswith("{"):
        return group_from_json(spec)
    try:
        with open(spec) as fh:
            return group_from_json(fh.read(), name=spec)
    except FileNotFoundError:
        raise SpecFileError(
            f"{spec!r} is neither a catalog group name nor a readable file"
        ) from None
