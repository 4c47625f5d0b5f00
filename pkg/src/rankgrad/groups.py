"""Cayley-table finite groups and exact subgroup machinery.

Everything here is brute force by design: groups live as full
multiplication tables, subgroups as explicit element sets, and minimal
generation questions are answered by breadth-first search over closures
with a memoized closure cache.  Values are immutable after construction
and every operation is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import DEFAULT_CAPS
from .errors import CapExceeded, NotNormal, NotSurjective


class FiniteGroup:
    """Finite group on element indices 0..order-1 with a full Cayley table."""

    def __init__(self, mult, generators, labels=None, name=None):
        self.mult = [list(row) for row in mult]
        self.order = len(self.mult)
        if any(len(row) != self.order for row in self.mult):
            raise ValueError("multiplication table must be square")
        self.identity = self._find_identity()
        self.inv = self._build_inverses()
        self.generators = tuple(dict.fromkeys(int(g) for g in generators))
        for g in self.generators:
            if not 0 <= g < self.order:
                raise ValueError(f"generator index {g} out of range")
        self.labels = list(labels) if labels is not None else None
        self.name = name
        if closure_elements(self.mult, self.identity, self.generators) != tuple(
            range(self.order)
        ):
            raise ValueError("generators do not generate the group")

    def _find_identity(self):
        for e in range(self.order):
            row = self.mult[e]
            if all(row[x] == x for x in range(self.order)) and all(
                self.mult[x][e] == x for x in range(self.order)
            ):
                return e
        raise ValueError("table has no identity element")

    def _build_inverses(self):
        inv = [None] * self.order
        for x in range(self.order):
            for y in range(self.order):
                if self.mult[x][y] == self.identity and self.mult[y][x] == self.identity:
                    inv[x] = y
                    break
            if inv[x] is None:
                raise ValueError(f"element {x} has no inverse")
        return inv

    def mul(self, x, y):
        return self.mult[x][y]

    def inverse(self, x):
        return self.inv[x]

    def conjugate(self, g, x):
        """g x g^-1."""
        return self.mult[self.mult[g][x]][self.inv[g]]

    def element_order(self, x):
        n = 1
        y = x
        while y != self.identity:
            y = self.mult[y][x]
            n += 1
        return n

    def is_abelian(self):
        gens = self.generators or range(self.order)
        return all(
            self.mult[a][b] == self.mult[b][a] for a in gens for b in gens
        )

    def label(self, x):
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    def validate(self):
        """Exhaustive group-axiom check; O(order^3), meant for order <= 256."""
        n = self.order
        for row in self.mult:
            for v in row:
                if not 0 <= v < n:
                    raise ValueError("table entry out of range")
        for x in range(n):
            for y in range(n):
                xy = self.mult[x][y]
                for z in range(n):
                    if self.mult[xy][z] != self.mult[x][self.mult[y][z]]:
                        raise ValueError(f"associativity fails at ({x},{y},{z})")
        return True

    def __repr__(self):
        nm = self.name or "FiniteGroup"
        return f"<{nm} of order {self.order}>"


def closure_elements(mult, identity, seed):
    """Sorted tuple of elements of the subgroup generated by seed.

    Finite groups are closed under multiplication alone, so a plain BFS
    over right-products by the seed suffices.
    """
    gens = [g for g in seed if g != identity]
    elems = {identity}
    queue = [identity]
    for g in gens:
        if g not in elems:
            elems.add(g)
            queue.append(g)
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        row = mult[x]
        for g in gens:
            y = row[g]
            if y not in elems:
                elems.add(y)
                queue.append(y)
    return tuple(sorted(elems))


class SubgroupHandle:
    """Subgroup of a Cayley-table group: explicit elements plus witnesses."""

    def __init__(self, parent, elements, generators):
        self.parent = parent
        self.elements = tuple(elements)
        self.element_set = frozenset(self.elements)
        self.generators = tuple(generators)

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self.element_set

    def __eq__(self, other):
        return (
            isinstance(other, SubgroupHandle)
            and self.parent is other.parent
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((id(self.parent), self.elements))

    def is_subgroup_of(self, other):
        return self.element_set <= other.element_set

    def as_group(self, name=None):
        """Reindexed Cayley table of the subgroup; keeps parent indices."""
        pos = {x: i for i, x in enumerate(self.elements)}
        mult = [
            [pos[self.parent.mult[x][y]] for y in self.elements]
            for x in self.elements
        ]
        gens = [pos[g] for g in self.generators]
        if not gens:
            gens = []
        labels = None
        if self.parent.labels is not None:
            labels = [self.parent.labels[x] for x in self.elements]
        g = FiniteGroup(mult, gens, labels=labels, name=name)
        g.parent_indices = self.elements
        return g

    def __repr__(self):
        return f"<subgroup of order {self.order} in {self.parent!r}>"


def trivial_handle(group):
    return SubgroupHandle(group, (group.identity,), ())


def full_handle(group):
    return SubgroupHandle(group, tuple(range(group.order)), group.generators)


def closure(parent, seed):
    """Smallest subgroup of parent containing seed, as a handle."""
    seed = sorted(set(seed))
    for x in seed:
        if not 0 <= x < parent.order:
            raise ValueError(f"element index {x} out of range")
    elems = closure_elements(parent.mult, parent.identity, seed)
    gens = tuple(x for x in seed if x != parent.identity)
    return SubgroupHandle(parent, elems, gens)


def handle_from_elements(parent, elements):
    """Handle for a known subgroup element set, with a small generator set.

    Generators are chosen greedily in index order, which makes handles
    reproducible and keeps later closures cheap.
    """
    elements = tuple(sorted(set(elements)))
    gens = []
    have = {parent.identity}
    for x in elements:
        if x not in have:
            gens.append(x)
            have = set(closure_elements(parent.mult, parent.identity, gens))
    if tuple(sorted(have)) != elements:
        raise ValueError("element set is not closed")
    return SubgroupHandle(parent, elements, tuple(gens))


def normal_closure(parent, conjugators, seed):
    """<seed>^conjugators: subgroup generated by all conjugates of seed.

    Closure under conjugation by the conjugators' generators is enough,
    since conjugation composes along products.
    """
    conj_gens = conjugators.generators if conjugators.generators else ()
    elems = set(closure_elements(parent.mult, parent.identity, sorted(set(seed))))
    while True:
        new = set()
        for g in conj_gens:
            for h in elems:
                c = parent.conjugate(g, h)
                if c not in elems:
                    new.add(c)
        if not new:
            break
        elems = set(
            closure_elements(parent.mult, parent.identity, sorted(elems | new))
        )
    return handle_from_elements(parent, elems)


def is_normal(parent, handle, ambient=None):
    """Whether handle is normal in ambient (default: all of parent)."""
    if ambient is None:
        conj = parent.generators
    else:
        conj = ambient.generators
    for g in conj:
        for h in handle.generators or handle.elements:
            if parent.conjugate(g, h) not in handle.element_set:
                return False
    # generator checks suffice: conjugation by a product factors through
    # conjugation by the factors, and H is generated by its generators
    return True


def commutator_subgroup(parent, x_handle, y_handle):
    """Subgroup generated by all [x,y] = x^-1 y^-1 x y."""
    mult = parent.mult
    inv = parent.inv
    comms = set()
    for x in x_handle.elements:
        xi = inv[x]
        for y in y_handle.elements:
            comms.add(mult[mult[mult[xi][inv[y]]][x]][y])
    return closure(parent, comms)


def center(group):
    elems = [
        x
        for x in range(group.order)
        if all(group.mult[x][g] == group.mult[g][x] for g in group.generators)
    ]
    return handle_from_elements(group, elems)


def conjugacy_classes(group):
    """Partition of element indices into conjugacy classes (sorted)."""
    seen = [False] * group.order
    classes = []
    for x in range(group.order):
        if seen[x]:
            continue
        cls = {x}
        queue = [x]
        while queue:
            y = queue.pop()
            for g in group.generators:
                c = group.conjugate(g, y)
                if c not in cls:
                    cls.add(c)
                    queue.append(c)
        for y in cls:
            seen[y] = True
        classes.append(tuple(sorted(cls)))
    return classes


# ---------------------------------------------------------------------------
# minimal generation


def _bfs_min_generators(mult, identity, universe, target):
    """Exact d(target): BFS over closures by subset size with pruning.

    Level k holds the distinct subgroups generated by some k-subset of
    the universe; a memoized closure cache prunes repeats, and right
    cosets of the current subgroup are skipped because <S, x> = <S, sx>.
    """
    target_t = tuple(sorted(target))
    trivial = (identity,)
    if target_t == trivial:
        return 0, ()
    universe = [x for x in universe if x != identity]
    seen = {trivial}
    frontier = [(trivial, ())]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for elems, gens in frontier:
            covered = set(elems)
            for x in universe:
                if x in covered:
                    continue
                new_gens = gens + (x,)
                ne = closure_elements(mult, identity, new_gens)
                if ne == target_t:
                    return level, new_gens
                if ne not in seen:
                    seen.add(ne)
                    nxt.append((ne, new_gens))
                row_x = [mult[s][x] for s in elems]
                covered.update(row_x)
        frontier = nxt
    raise RuntimeError("target not generated by its own elements")  # unreachable


def d_min(k, cap=None):
    """Least cardinality of a generating set; d(trivial) = 0.

    Accepts a FiniteGroup or a SubgroupHandle; exact but exponential in
    the answer, hence the brute-force cap.
    """
    cap = cap if cap is not None else DEFAULT_CAPS.brute_force_cap
    if isinstance(k, SubgroupHandle):
        if k.order > cap:
            raise CapExceeded("d_min", k.order, cap)
        mult, identity = k.parent.mult, k.parent.identity
        level, _ = _bfs_min_generators(mult, identity, k.elements, k.element_set)
        return level
    if k.order > cap:
        raise CapExceeded("d_min", k.order, cap)
    level, _ = _bfs_min_generators(
        k.mult, k.identity, range(k.order), range(k.order)
    )
    return level


def minimal_generating_tuple(k, cap=None):
    """A witness generating tuple of size exactly d_min(k)."""
    cap = cap if cap is not None else DEFAULT_CAPS.brute_force_cap
    if isinstance(k, SubgroupHandle):
        if k.order > cap:
            raise CapExceeded("d_min", k.order, cap)
        _, gens = _bfs_min_generators(
            k.parent.mult, k.parent.identity, k.elements, k.element_set
        )
        return gens
    if k.order > cap:
        raise CapExceeded("d_min", k.order, cap)
    _, gens = _bfs_min_generators(k.mult, k.identity, range(k.order), range(k.order))
    return gens


def d_normal_min(parent, n_handle, cap=None):
    """Least size of S <= N with <S>^parent = N (normal generation).

    Same BFS-with-pruning idea as d_min, but states are normal closures.
    """
    cap = cap if cap is not None else DEFAULT_CAPS.brute_force_cap
    if n_handle.order > cap:
        raise CapExceeded("d_normal_min", n_handle.order, cap)
    if not is_normal(parent, n_handle):
        raise NotNormal("subgroup is not normal in parent")
    level, _ = _bfs_normal_generators(parent, n_handle)
    return level


def minimal_normal_generating_tuple(parent, n_handle, cap=None):
    cap = cap if cap is not None else DEFAULT_CAPS.brute_force_cap
    if n_handle.order > cap:
        raise CapExceeded("d_normal_min", n_handle.order, cap)
    if not is_normal(parent, n_handle):
        raise NotNormal("subgroup is not normal in parent")
    _, gens = _bfs_normal_generators(parent, n_handle)
    return gens


def _bfs_normal_generators(parent, n_handle):
    target = n_handle.elements
    trivial = (parent.identity,)
    if target == trivial:
        return 0, ()
    seen = {trivial}
    frontier = [(trivial, ())]
    level = 0
    while frontier:
        level += 1
        nxt = []
        for elems, gens in frontier:
            covered = set(elems)
            for x in target:
                if x in covered:
                    continue
                new_gens = gens + (x,)
                ne = normal_closure(parent, full_handle(parent), new_gens).elements
                if ne == target:
                    return level, new_gens
                if ne not in seen:
                    seen.add(ne)
                    nxt.append((ne, new_gens))
                covered.update(parent.mult[s][x] for s in elems)
        frontier = nxt
    raise RuntimeError("normal target not reachable")  # unreachable


class SubgroupLattice:
    """Every subgroup of a group, each with its exact minimal rank.

    One closure BFS discovers all subgroups level by level; the level at
    which a subgroup first appears is d(subgroup), with a generating
    witness recorded.
    """

    def __init__(self, group, cap=None):
        cap = cap if cap is not None else DEFAULT_CAPS.brute_force_cap
        if group.order > cap:
            raise CapExceeded("subgroup_lattice", group.order, cap)
        self.group = group
        mult = group.mult
        identity = group.identity
        trivial = (identity,)
        info = {trivial: (0, ())}
        frontier = [trivial]
        level = 0
        while frontier:
            level += 1
            nxt = []
            for elems in frontier:
                gens = info[elems][1]
                covered = set(elems)
                for x in range(group.order):
                    if x in covered:
                        continue
                    new_gens = gens + (x,)
                    ne = closure_elements(mult, identity, new_gens)
                    if ne not in info:
                        info[ne] = (level, new_gens)
                        nxt.append(ne)
                    covered.update(mult[s][x] for s in elems)
            frontier = nxt
        self._info = info
        self._order = sorted(info, key=lambda t: (len(t), t))

    def __len__(self):
        return len(self._info)

    def subgroups(self):
        """All subgroups as handles, sorted by (order, elements)."""
        return [
            SubgroupHandle(self.group, elems, self._info[elems][1])
            for elems in self._order
        ]

    def d_min_of(self, elements):
        if isinstance(elements, SubgroupHandle):
            elements = elements.elements
        return self._info[tuple(elements)][0]

    def witness(self, elements):
        if isinstance(elements, SubgroupHandle):
            elements = elements.elements
        return self._info[tuple(elements)][1]


# ---------------------------------------------------------------------------
# Sylow subgroups, products, quotients, fiber products


def sylow_subgroup(k, p):
    """A p-Sylow subgroup, deterministically the first one found.

    Grows a p-subgroup one index-ordered element at a time; a proper
    p-subgroup always extends to one p times larger inside its
    normalizer, so the greedy scan cannot stall.
    """
    if p < 2 or any(p % d == 0 for d in range(2, p)) and p != 2:
        raise ValueError("p must be prime")
    target = 1
    n = k.order
    while n % p == 0:
        n //= p
        target *= p
    current = trivial_handle(k)
    while current.order < target:
        extended = None
        for x in range(k.order):
            if x in current.element_set:
                continue
            o = k.element_order(x)
            if o % p or (o & (o - 1)) and not _is_p_power(o, p):
                continue
            cand = closure(k, current.generators + (x,))
            if cand.order == current.order * p:
                extended = cand
                break
        if extended is None:
            raise RuntimeError("Sylow extension failed")  # impossible by theory
        current = extended
    return current


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def direct_product(a, b, cap=None):
    """Cayley table of A x B; element (i, j) is encoded as i*|B| + j."""
    cap = cap if cap is not None else DEFAULT_CAPS.table_cap
    n = a.order * b.order
    if n > cap:
        raise CapExceeded("direct_product", n, cap)
    nb = b.order
    mult = [[0] * n for _ in range(n)]
    for i in range(a.order):
        arow_base = i * nb
        for j in range(nb):
            row = mult[arow_base + j]
            for k in range(a.order):
                ik = a.mult[i][k] * nb
                brow = b.mult[j]
                base = k * nb
                for l in range(nb):
                    row[base + l] = ik + brow[l]
    gens = [g * nb + b.identity for g in a.generators]
    gens += [a.identity * nb + g for g in b.generators]
    name = None
    if a.name and b.name:
        name = f"{a.name}x{b.name}"
    g = FiniteGroup(mult, gens, name=name)
    g.factor_orders = (a.order, b.order)
    return g


class Homomorphism:
    """Map between Cayley-table groups given by a per-element image table."""

    def __init__(self, source, target, mapping, check=True):
        self.source = source
        self.target = target
        self.mapping = tuple(mapping)
        if len(self.mapping) != source.order:
            raise ValueError("mapping must cover every source element")
        if check:
            self.verify()

    def __call__(self, x):
        return self.mapping[x]

    def verify(self):
        if self.mapping[self.source.identity] != self.target.identity:
            raise ValueError("identity not preserved")
        m = self.mapping
        for x in range(self.source.order):
            for y in range(self.source.order):
                if m[self.source.mult[x][y]] != self.target.mult[m[x]][m[y]]:
                    raise ValueError(f"not multiplicative at ({x},{y})")
        return True

    def image_elements(self):
        return tuple(sorted(set(self.mapping)))

    def is_surjective(self):
        return len(set(self.mapping)) == self.target.order

    def kernel(self):
        e = self.target.identity
        elems = [x for x in range(self.source.order) if self.mapping[x] == e]
        return handle_from_elements(self.source, elems)


def quotient(k, n_handle):
    """(K/N, projection) with cosets indexed by their smallest member."""
    if not is_normal(k, n_handle):
        raise NotNormal("cannot form quotient by a non-normal subgroup")
    coset_rep = [None] * k.order
    reps = []
    for x in range(k.order):
        if coset_rep[x] is not None:
            continue
        members = sorted(k.mult[x][h] for h in n_handle.elements)
        rep = members[0]
        reps.append(rep)
        for y in members:
            coset_rep[y] = rep
    reps.sort()
    index_of = {r: i for i, r in enumerate(reps)}
    proj = [index_of[coset_rep[x]] for x in range(k.order)]
    mult = [
        [proj[k.mult[r][s]] for s in reps]
        for r in reps
    ]
    gens = list(dict.fromkeys(proj[g] for g in k.generators))
    q = FiniteGroup(mult, gens, name=(f"{k.name}/N" if k.name else None))
    hom = Homomorphism(k, q, proj, check=False)
    return q, hom


@dataclass(frozen=True)
class FiberProductData:
    """Fiber product {(x,y) : q(x) = q(y)} of K with itself over q."""

    base: FiniteGroup
    quot: Homomorphism
    product: FiniteGroup
    subgroup: SubgroupHandle
    diagonal: SubgroupHandle
    index: int
    kernel: SubgroupHandle
    kernel_central: bool
    onto_kernel: Homomorphism | None = field(default=None, compare=False)


def fiber_product(k, q, cap=None):
    """Fiber product of q: K -> Q with itself, with the diagonal inside.

    Verifies [K x K : U] = |Q|.  When ker(q) is central the quotient of
    U by its diagonal is isomorphic to ker(q), witnessed by the returned
    surjection (x, y) -> x y^-1.
    """
    if not q.is_surjective():
        raise NotSurjective("quotient map must be onto")
    product = direct_product(k, k, cap=cap)
    n = k.order
    elems = [
        x * n + y
        for x in range(n)
        for y in range(n)
        if q.mapping[x] == q.mapping[y]
    ]
    sub = handle_from_elements(product, elems)
    index = product.order // sub.order
    if index != q.target.order:
        raise RuntimeError("fiber product index disagrees with |Q|")
    diag_elems = [x * n + x for x in range(n)]
    diag = handle_from_elements(product, diag_elems)
    ker = q.kernel()
    central = all(
        k.mult[x][g] == k.mult[g][x] for x in ker.elements for g in k.generators
    )
    onto = None
    if central:
        u_group = sub.as_group()
        ker_group = ker.as_group()
        ker_pos = {x: i for i, x in enumerate(ker.elements)}
        mapping = []
        for idx in sub.elements:
            x, y = divmod(idx, n)
            mapping.append(ker_pos[k.mult[x][k.inv[y]]])
        onto = Homomorphism(u_group, ker_group, mapping, check=True)
    return FiberProductData(
        base=k,
        quot=q,
        product=product,
        subgroup=sub,
        diagonal=diag,
        index=index,
        kernel=ker,
        kernel_central=central,
        onto_kernel=onto,
    )


# ---------------------------------------------------------------------------
# isomorphism testing


def fingerprint(group):
    """Cheap isomorphism invariants; unequal fingerprints => not isomorphic."""
    orders = sorted(group.element_order(x) for x in range(group.order))
    classes = conjugacy_classes(group)
    class_profile = sorted(
        (group.element_order(c[0]), len(c)) for c in classes
    )
    from .smith import abelian_invariants_finite

    ab = abelian_invariants_finite(group).torsion_factors
    derived = commutator_subgroup(group, full_handle(group), full_handle(group))
    return (
        group.order,
        tuple(orders),
        group.is_abelian(),
        center(group).order,
        derived.order,
        ab,
        tuple(class_profile),
    )


def _image_candidates(group, other, gens):
    by_order = {}
    for y in range(other.order):
        by_order.setdefault(other.element_order(y), []).append(y)
    return [by_order.get(group.element_order(g), []) for g in gens]


def find_isomorphism(group, other, _fingerprints=True):
    """An isomorphism as an image table, or None.

    Backtracks over images of a minimal generating tuple; each complete
    assignment is closed into a candidate map and checked on all
    (element, generator) products, which suffices for multiplicativity.
    """
    if group.order != other.order:
        return None
    if _fingerprints and fingerprint(group) != fingerprint(other):
        return None
    gens = minimal_generating_tuple(group)
    if not gens:
        return [other.identity] * 1 if other.order == 1 else None
    candidates = _image_candidates(group, other, gens)

    def close_with(images):
        mapping = {group.identity: other.identity}
        queue = [group.identity]
        while queue:
            x = queue.pop()
            for g, img in zip(gens, images):
                xg = group.mult[x][g]
                y = other.mult[mapping[x]][img]
                if xg in mapping:
                    if mapping[xg] != y:
                        return None
                else:
                    mapping[xg] = y
                    queue.append(xg)
        if len(mapping) != group.order or len(set(mapping.values())) != group.order:
            return None
        # consistency on every (element, generator) product implies a
        # homomorphism by induction on word length
        for x in range(group.order):
            for g, img in zip(gens, images):
                if mapping[group.mult[x][g]] != other.mult[mapping[x]][img]:
                    return None
        return [mapping[x] for x in range(group.order)]

    def backtrack(k, chosen, sub_order):
        if k == len(gens):
            return close_with(chosen)
        for y in candidates[k]:
            new_sub = closure_elements(
                other.mult, other.identity, tuple(chosen) + (y,)
            )
            expected = len(
                closure_elements(group.mult, group.identity, gens[: k + 1])
            )
            if len(new_sub) != expected:
                continue
            result = backtrack(k + 1, chosen + [y], len(new_sub))
            if result is not None:
                return result
        return None

    return backtrack(0, [], 1)


def is_isomorphic(group, other):
    return find_isomorphism(group, other) is not None


def automorphisms(group):
    """All automorphisms as image tables (brute force, small groups only)."""
    gens = minimal_generating_tuple(group)
    if not gens:
        return [[group.identity]]
    candidates = _image_candidates(group, group, gens)
    out = []

    def close_with(images):
        mapping = {group.identity: group.identity}
        queue = [group.identity]
        while queue:
            x = queue.pop()
            for g, img in zip(gens, images):
                xg = group.mult[x][g]
                y = group.mult[mapping[x]][img]
                if xg in mapping:
                    if mapping[xg] != y:
                        return None
                else:
                    mapping[xg] = y
                    queue.append(xg)
        if len(mapping) != group.order or len(set(mapping.values())) != group.order:
            return None
        for x in range(group.order):
            for g, img in zip(gens, images):
                if mapping[group.mult[x][g]] != group.mult[mapping[x]][img]:
                    return None
        return [mapping[x] for x in range(group.order)]

    def backtrack(k, chosen):
        if k == len(gens):
            m = close_with(chosen)
            if m is not None:
                out.append(m)
            return
        for y in candidates[k]:
            new_sub = closure_elements(
                group.mult, group.identity, tuple(chosen) + (y,)
            )
            expected = len(
                closure_elements(group.mult, group.identity, gens[: k + 1])
            )
            if len(new_sub) != expected:
                continue
            backtrack(k + 1, chosen + [y])

    backtrack(0, [])
    return out
