"""Todd-Coxeter coset enumeration and regular representations.

The enumerator is HLT-style (relator tracing with gap filling), with
coincidence handling via union-find and periodic compaction when many dead
cosets accumulate.  A Felsch-style deduction-stack strategy is available
behind the ``strategy`` flag for small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .perms import Permutation, regular_group
from .words import Word


class EnumerationOverflow(Exception):
    """Raised internally; surfaced as status='overflow' in the result."""


@dataclass
class CosetTable:
    """Completed (or overflowed) coset table.

    `table[c][2*g]` is the coset of c·g, `table[c][2*g+1]` of c·g^-1.
    Row 0 is the subgroup coset.  Complete tables are closed and verified:
    every relator traces to the identity from every coset.
    """

    ngens: int
    status: str               # "complete" | "overflow"
    live_cosets: int
    table: list = field(default_factory=list, repr=False)

    @property
    def n(self):
        return self.live_cosets


def todd_coxeter(pres, subgroup_words=(), max_cosets=4_000_000, strategy="hlt"):
    """Enumerate cosets of <subgroup_words> in the presented group.

    Returns a CosetTable; overflow is a reported status, not an exception.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    if strategy not in ("hlt", "felsch"):
        raise ValueError(f"unknown strategy {strategy!r}")
    relators = [r.letters() for r in pres.relators if not r.is_empty()]
    subgens = [w.letters() for w in subgroup_words if not w.is_empty()]
    enum = _Enumerator(pres.ngens, relators, subgens, max_cosets)
    try:
        if strategy == "hlt":
            enum.run_hlt()
        else:
            enum.run_felsch()
    except EnumerationOverflow:
        return CosetTable(pres.ngens, "overflow", enum.live_count(), [])
    rows = enum.compact()
    ct = CosetTable(pres.ngens, "complete", len(rows), rows)
    _verify(ct, relators, subgens)
    return ct


class _Enumerator:
    def __init__(self, ngens, relators, subgens, max_cosets):
        self.ngens = ngens
        self.width = 2 * ngens
        self.relators = relators
        self.subgens = subgens
        self.max_cosets = max_cosets
        self.tbl = [[-1] * self.width]   # row per coset
        self.p = [0]                     # union-find parent (p[i] <= i)
        self.dead = 0
        self.record = None               # deduction stack (felsch only)

    # -- union-find ----------------------------------------------------

    def rep(self, k):
        p = self.p
        r = k
        while p[r] != r:
            r = p[r]
        while p[k] != r:
            p[k], k = r, p[k]
        return r

    def live_count(self):
        return len(self.tbl) - self.dead

    # -- definitions and coincidences ----------------------------------

    def define(self, alpha, x):
        if len(self.tbl) >= self.max_cosets:
            raise EnumerationOverflow
        beta = len(self.tbl)
        self.tbl.append([-1] * self.width)
        self.p.append(beta)
        self.tbl[alpha][x] = beta
        self.tbl[beta][x ^ 1] = alpha
        if self.record is not None:
            self.record.append((alpha, x))
            self.record.append((beta, x ^ 1))
        return beta

    def merge(self, a, b, queue):
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.p[b] = a
        self.dead += 1
        queue.append(b)

    def coincidence(self, a, b):
        queue = []
        self.merge(a, b, queue)
        tbl = self.tbl
        while queue:
            y = queue.pop()
            for x in range(self.width):
                d = tbl[y][x]
                if d == -1:
                    continue
                tbl[d][x ^ 1] = -1
                mu = self.rep(y)
                nu = self.rep(d)
                if tbl[mu][x] != -1:
                    self.merge(nu, self.rep(tbl[mu][x]), queue)
                elif tbl[nu][x ^ 1] != -1:
                    self.merge(mu, self.rep(tbl[nu][x ^ 1]), queue)
                else:
                    tbl[mu][x] = nu
                    tbl[nu][x ^ 1] = mu
                    if self.record is not None:
                        self.record.append((mu, x))
                        self.record.append((nu, x ^ 1))

    # -- scanning ------------------------------------------------------

    def scan_and_fill(self, alpha, word):
        tbl = self.tbl
        while True:
            f, i = alpha, 0
            b, j = alpha, len(word) - 1
            while True:
                while i <= j and tbl[f][word[i]] != -1:
                    f = tbl[f][word[i]]
                    i += 1
                if i > j:
                    if f != b:
                        self.coincidence(f, b)
                    return
                while j >= i and tbl[b][word[j] ^ 1] != -1:
                    b = tbl[b][word[j] ^ 1]
                    j -= 1
                if j < i:
                    self.coincidence(f, b)
                    return
                if j == i:
                    tbl[f][word[i]] = b
                    tbl[b][word[i] ^ 1] = f
                    if self.record is not None:
                        self.record.append((f, word[i]))
                        self.record.append((b, word[i] ^ 1))
                    return
                self.define(f, word[i])
                # continue the forward scan from the new coset

    def scan_only(self, alpha, word):
        """Scan without defining; record a coincidence or deduction if forced."""
        tbl = self.tbl
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while i <= j and tbl[f][word[i]] != -1:
            f = tbl[f][word[i]]
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        while j >= i and tbl[b][word[j] ^ 1] != -1:
            b = tbl[b][word[j] ^ 1]
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif j == i:
            tbl[f][word[i]] = b
            tbl[b][word[i] ^ 1] = f
            if self.record is not None:
                self.record.append((f, word[i]))
                self.record.append((b, word[i] ^ 1))

    # -- strategies ----------------------------------------------------

    def run_hlt(self):
        for w in self.subgens:
            self.scan_and_fill(0, w)
        alpha = 0
        while alpha < len(self.tbl):
            if self.rep(alpha) != alpha:
                alpha += 1
                continue
            for w in self.relators:
                if self.rep(alpha) != alpha:
                    break
                self.scan_and_fill(alpha, w)
            if self.rep(alpha) == alpha:
                row = self.tbl[alpha]
                for x in range(self.width):
                    if row[x] == -1:
                        self.define(alpha, x)
            alpha += 1
            # compact when dead cosets dominate a large table
            if self.dead > 200_000 and self.dead * 2 > len(self.tbl):
                alpha = self._compress(alpha)

    def run_felsch(self):
        """Deduction-stack enumeration (entries recorded as they are set)."""
        self.record = []
        by_letter = self._relators_by_letter()

        def process():
            while self.record:
                c, x = self.record.pop()
                c = self.rep(c)
                for w in by_letter.get(x, ()):
                    if self.rep(c) != c:
                        break
                    self.scan_only(c, w)

        for w in self.subgens:
            self.scan_and_fill(0, w)
        process()
        alpha = 0
        while alpha < len(self.tbl):
            if self.rep(alpha) != alpha:
                alpha += 1
                continue
            for x in range(self.width):
                if self.rep(alpha) != alpha:
                    break
                if self.tbl[alpha][x] == -1:
                    self.define(alpha, x)
                    process()
            alpha += 1
        self.record = None

    def _relators_by_letter(self):
        """Cyclic conjugates of each relator keyed by first letter."""
        out = {}
        for w in self.relators:
            seen = set()
            for k in range(len(w)):
                cyc = tuple(w[k:] + w[:k])
                if cyc in seen:
                    continue
                seen.add(cyc)
                out.setdefault(cyc[0], []).append(list(cyc))
                inv = tuple(x ^ 1 for x in reversed(cyc))
                if inv not in seen:
                    seen.add(inv)
                    out.setdefault(inv[0], []).append(list(inv))
        return out

    # -- compaction ----------------------------------------------------

    def _compress(self, alpha):
        """Renumber live cosets, preserving order; returns the new alpha."""
        mapping = {}
        new_tbl = []
        new_alpha = 0
        for c in range(len(self.tbl)):
            if self.rep(c) == c:
                if c < alpha:
                    new_alpha += 1
                mapping[c] = len(new_tbl)
                new_tbl.append(self.tbl[c])
        for row in new_tbl:
            for x in range(self.width):
                if row[x] != -1:
                    row[x] = mapping[self.rep(row[x])]
        self.tbl = new_tbl
        self.p = list(range(len(new_tbl)))
        self.dead = 0
        return new_alpha

    def compact(self):
        self._compress(0)
        return self.tbl


def _verify(ct, relators, subgens):
    """Deterministic post-check: closure and relator traces."""
    tbl = ct.table
    for c, row in enumerate(tbl):
        for x, entry in enumerate(row):
            if entry == -1:
                raise AssertionError("incomplete table marked complete")
            if tbl[entry][x ^ 1] != c:
                raise AssertionError("table not involution-consistent")
    for w in relators:
        for c in range(len(tbl)):
            d = c
            for x in w:
                d = tbl[d][x]
            if d != c:
                raise AssertionError("relator does not trace to identity")
    for w in subgens:
        d = 0
        for x in w:
            d = tbl[d][x]
        if d != 0:
            raise AssertionError("subgroup generator leaves coset 0")


# ----------------------------------------------------------------------
# regular representation and element tables
# ----------------------------------------------------------------------

class Realization:
    """A finite presentation realized on its own elements.

    Holds the closed coset table over the trivial subgroup, the regular
    permutation group, and breadth-first canonical words for every element.
    """

    def __init__(self, pres, coset_table):
        if coset_table.status != "complete":
            raise ValueError("cannot realize an overflowed enumeration")
        self.presentation = pres
        self.coset_table = coset_table
        self.n = coset_table.n
        self.columns = np.array(coset_table.table, dtype=np.int64).T.copy()
        self.generator_perms = [Permutation(self.columns[2 * i])
                                for i in range(pres.ngens)]
        self.group = regular_group(self.generator_perms, self.n)
        self.words = self._bfs_words()
        self._perm_cache = {}

    @property
    def order(self):
        return self.n

    def _bfs_words(self):
        """Breadth-first discovery letters for each element from the identity."""
        words = [None] * self.n
        words[0] = ()
        frontier = [0]
        self.discovery = []
        while frontier:
            new = []
            for c in frontier:
                for x in range(2 * self.presentation.ngens):
                    d = int(self.columns[x][c])
                    if words[d] is None:
                        words[d] = words[c] + (x,)
                        self.discovery.append((c, x, d))
                        new.append(d)
            frontier = new
        return words

    def apply_letters(self, start, letters):
        c = start
        for x in letters:
            c = int(self.columns[x][c])
        return c

    def element_of_word(self, word):
        """Element index of a Word evaluated from the identity."""
        return self.apply_letters(0, word.letters())

    def generator_element(self, i):
        return int(self.columns[2 * i][0])

    def mult(self, x, y):
        """Element index of x·y."""
        return self.apply_letters(x, self.words[y])

    def inv(self, x):
        """Element index of x^-1."""
        return self.apply_letters(0, [let ^ 1 for let in reversed(self.words[x])])

    def element_order(self, x):
        k = 1
        y = x
        while y != 0:
            y = self.mult(y, x)
            k += 1
        return k

    def commutator(self, x, y):
        return self.mult(self.mult(self.inv(x), self.inv(y)), self.mult(x, y))

    def conjugate(self, x, y):
        """y^-1 x y."""
        return self.mult(self.mult(self.inv(y), x), y)

    def right_mult_perm(self, x):
        """The right-multiplication permutation R(x), cached."""
        perm = self._perm_cache.get(x)
        if perm is None:
            arr = np.arange(self.n, dtype=np.int64)
            for let in self.words[x]:
                arr = self.columns[let][arr]
            perm = arr
            perm.setflags(write=False)
            self._perm_cache[x] = perm
        return perm

    def left_mult_perm(self, x):
        """The left-multiplication permutation L(x): c -> x*c."""
        arr = np.empty(self.n, dtype=np.int64)
        arr[0] = x
        for c, let, d in self.discovery:
            arr[d] = self.columns[let][arr[c]]
        return arr

    def closure(self, elements):
        """Subgroup generated by the given element indices (orbit of identity)."""
        gens = [self.right_mult_perm(x) for x in elements]
        seen = {0}
        frontier = [0]
        while frontier:
            new = []
            for c in frontier:
                for g in gens:
                    d = int(g[c])
                    if d not in seen:
                        seen.add(d)
                        new.append(d)
            frontier = new
        return seen

    def word_for(self, x):
        """Canonical Word for element x."""
        return Word.from_letters(self.words[x])


def regular_representation(pres, max_cosets=4_000_000, strategy="hlt"):
    """Realize the presented group on itself; propagates overflow status."""
    ct = todd_coxeter(pres, (), max_cosets, strategy)
    if ct.status != "complete":
        return None, ct
    return Realization(pres, ct), ct
