"""Todd-Coxeter coset enumeration (HLT with lookahead).

The strategy is fixed and deterministic: subgroup words are scanned at
coset 0, then cosets are processed in discovery order, scanning every
relator and filling undefined entries with new cosets.  Coincidences
are handled immediately through a union-find merge.  When the table
would outgrow max_cosets a scanning-only lookahead pass runs first;
if that does not free enough rows the enumeration fails loudly.

Columns pair each generator with its inverse: letter +i maps to column
2(i-1) and -i to column 2(i-1)+1, so x ^ 1 inverts a column index.
"""

from __future__ import annotations

from .errors import EnumerationOverflow, IncompleteTable
from .presentations import Presentation
from .words import free_reduce


def _col(letter):
    return 2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1


def _letter(col):
    return col // 2 + 1 if col % 2 == 0 else -(col // 2 + 1)


class _Lookahead(Exception):
    pass


class _Enumerator:
    def __init__(self, presentation, subgroup_words, max_cosets):
        self.ncols = 2 * presentation.rank
        self.relators = [tuple(_col(u) for u in r) for r in presentation.relators]
        self.subgroup = [
            tuple(_col(u) for u in free_reduce(w)) for w in subgroup_words
        ]
        self.subgroup = [w for w in self.subgroup if w]
        self.max_cosets = max_cosets
        self.table = [[None] * self.ncols]
        self.p = [0]
        self.n_alive = 1
        self.lookahead_ran = False

    # union-find -----------------------------------------------------------

    def _rep(self, k):
        lam = k
        rho = self.p[lam]
        while rho != lam:
            lam = rho
            rho = self.p[lam]
        mu = k
        rho = self.p[mu]
        while rho != lam:
            self.p[mu] = lam
            mu = rho
            rho = self.p[mu]
        return lam

    def _merge(self, k, lam, queue):
        phi = self._rep(k)
        psi = self._rep(lam)
        if phi != psi:
            mu, nu = (phi, psi) if phi < psi else (psi, phi)
            self.p[nu] = mu
            self.n_alive -= 1
            queue.append(nu)

    def _coincidence(self, alpha, beta):
        queue = []
        self._merge(alpha, beta, queue)
        idx = 0
        while idx < len(queue):
            gamma = queue[idx]
            idx += 1
            for x in range(self.ncols):
                delta = self.table[gamma][x]
                if delta is None:
                    continue
                self.table[delta][x ^ 1] = None
                mu = self._rep(gamma)
                nu = self._rep(delta)
                if self.table[mu][x] is not None:
                    self._merge(nu, self.table[mu][x], queue)
                elif self.table[nu][x ^ 1] is not None:
                    self._merge(mu, self.table[nu][x ^ 1], queue)
                else:
                    self.table[mu][x] = nu
                    self.table[nu][x ^ 1] = mu

    # table growth ---------------------------------------------------------

    def _define(self, alpha, x):
        if self.n_alive >= self.max_cosets:
            raise _Lookahead
        n = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(n)
        self.n_alive += 1
        self.table[alpha][x] = n
        self.table[n][x ^ 1] = alpha

    def _scan(self, alpha, word, fill=True):
        f = alpha
        i = 0
        b = alpha
        j = len(word) - 1
        while True:
            while i <= j and self.table[f][word[i]] is not None:
                f = self.table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self._coincidence(f, b)
                return
            while j >= i and self.table[b][word[j] ^ 1] is not None:
                b = self.table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if j == i:
                self.table[f][word[i]] = b
                self.table[b][word[i] ^ 1] = f
                return
            if not fill:
                return
            self._define(f, word[i])

    def _lookahead_pass(self):
        alpha = 0
        while alpha < len(self.table):
            if self.p[alpha] == alpha:
                for rel in self.relators:
                    self._scan(alpha, rel, fill=False)
                    if self.p[alpha] != alpha:
                        break
            alpha += 1

    def run(self):
        for word in self.subgroup:
            self._restartable(0, word)
        alpha = 0
        while alpha < len(self.table):
            if self.p[alpha] != alpha:
                alpha += 1
                continue
            ok = True
            for rel in self.relators:
                self._restartable(alpha, rel)
                if self.p[alpha] != alpha:
                    ok = False
                    break
            if ok:
                for x in range(self.ncols):
                    if self.p[alpha] == alpha and self.table[alpha][x] is None:
                        self._restartable_define(alpha, x)
            alpha += 1
        return self._compact()

    def _restartable(self, alpha, word):
        while True:
            try:
                self._scan(self._rep(alpha), word)
                return
            except _Lookahead:
                self._handle_overflow()

    def _restartable_define(self, alpha, x):
        while True:
            a = self._rep(alpha)
            if self.table[a][x] is not None:
                return
            try:
                self._define(a, x)
                return
            except _Lookahead:
                self._handle_overflow()

    def _handle_overflow(self):
        before = self.n_alive
        self._lookahead_pass()
        # a pass that frees nothing will not start converging later
        if self.n_alive >= before or self.n_alive >= self.max_cosets:
            raise EnumerationOverflow(self.max_cosets)

    def _compact(self):
        live = [i for i in range(len(self.table)) if self.p[i] == i]
        new_index = {old: k for k, old in enumerate(live)}
        rows = []
        for old in live:
            row = []
            for x in range(self.ncols):
                entry = self.table[old][x]
                row.append(None if entry is None else new_index[self._rep(entry)])
            rows.append(row)
        return rows


class CosetTable:
    """Completed coset table; rows are cosets in discovery order, row 0
    the subgroup itself."""

    def __init__(self, presentation, subgroup_words, rows):
        self.presentation = presentation
        self.subgroup_words = tuple(tuple(w) for w in subgroup_words)
        self.table = tuple(tuple(r) for r in rows)
        self.complete = all(e is not None for row in self.table for e in row)

    @property
    def index(self):
        return len(self.table)

    def step(self, coset, letter):
        return self.table[coset][_col(letter)]

    def trace(self, coset, word):
        for u in word:
            coset = self.table[coset][_col(u)]
            if coset is None:
                raise IncompleteTable("trace hit an undefined entry")
        return coset

    def verify(self):
        """Certify the table: permutation columns, relators and subgroup
        words all close."""
        if not self.complete:
            raise IncompleteTable("table has undefined entries")
        n = self.index
        for x in range(2 * self.presentation.rank):
            seen = [False] * n
            for a in range(n):
                b = self.table[a][x]
                if seen[b]:
                    raise ValueError(f"column {x} is not a permutation")
                seen[b] = True
                if self.table[b][x ^ 1] != a:
                    raise ValueError("inverse columns disagree")
        for rel in self.presentation.relators:
            for a in range(n):
                if self.trace(a, rel) != a:
                    raise ValueError("relator trace does not close")
        for w in self.subgroup_words:
            if self.trace(0, w) != 0:
                raise ValueError("subgroup word leaves coset 0")
        return True

    def orbit(self, start, letters):
        """Orbit of a coset under a subset of generators (as letters)."""
        cols = []
        for u in letters:
            cols.append(_col(u))
            cols.append(_col(-u))
        seen = {start}
        queue = [start]
        while queue:
            a = queue.pop()
            for c in cols:
                b = self.table[a][c]
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return sorted(seen)

    def orbit_count(self, letters):
        """Number of orbits of the sub-action by the given generators."""
        remaining = set(range(self.index))
        count = 0
        while remaining:
            start = min(remaining)
            remaining -= set(self.orbit(start, letters))
            count += 1
        return count


def coset_enumerate(presentation, subgroup_words, max_cosets=None):
    """Enumerate cosets of <subgroup_words> in the presented group.

    Returns a complete, verified CosetTable whose row count is the
    index, or raises EnumerationOverflow.
    """
    from .config import DEFAULT_CAPS

    if max_cosets is None:
        max_cosets = DEFAULT_CAPS.max_cosets
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    rows = _Enumerator(presentation, subgroup_words, max_cosets).run()
    table = CosetTable(presentation, subgroup_words, rows)
    table.verify()
    return table


def cayley_coset_table(group, generating_multiset):
    """Coset table of Ker(F -> K) in the free group on the multiset.

    Cosets are the elements of K reached breadth-first from the
    identity, which matches enumeration discovery order.
    """
    gens = list(generating_multiset)
    d = len(gens)
    from .groups import closure_elements

    if closure_elements(group.mult, group.identity, sorted(set(gens))) != tuple(
        range(group.order)
    ):
        raise ValueError("multiset does not generate the group")
    order_of = {group.identity: 0}
    ordering = [group.identity]
    queue = [group.identity]
    while queue:
        x = queue.pop(0)
        for g in gens:
            y = group.mult[x][g]
            if y not in order_of:
                order_of[y] = len(ordering)
                ordering.append(y)
                queue.append(y)
    rows = []
    for x in ordering:
        row = []
        for g in gens:
            row.append(order_of[group.mult[x][g]])
            row.append(order_of[group.mult[x][group.inv[g]]])
        rows.append(row)
    pres = Presentation(rank=d, relators=(), name=None)
    table = CosetTable(pres, (), rows)
    table.verify()
    return table
