"""Permutations and permutation groups with stabilizer chains.

Permutations act on the right: ``x^(p*q) = (x^p)^q``, so products read
left-to-right like words.  Groups carry a base and strong generating set
(Schreier-Sims) giving exact orders, membership tests, stabilizers and
orbit machinery.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import prod

import numpy as np


class Permutation:
    """A permutation of {0..n-1}, stored as an image array."""

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        arr = np.asarray(images, dtype=np.int64)
        arr.setflags(write=False)
        self.images = arr
        self._hash = None

    @staticmethod
    def identity(n):
        return Permutation(np.arange(n, dtype=np.int64))

    @staticmethod
    def from_cycles(n, cycles):
        """Build a permutation of degree n from disjoint cycles."""
        img = np.arange(n, dtype=np.int64)
        touched = set()
        for cyc in cycles:
            for i, pt in enumerate(cyc):
                if pt in touched:
                    raise ValueError("cycles overlap")
                touched.add(pt)
                img[pt] = cyc[(i + 1) % len(cyc)]
        return Permutation(img)

    @property
    def degree(self):
        return len(self.images)

    def __call__(self, point):
        return int(self.images[point])

    def __mul__(self, other):
        # x^(self*other) = (x^self)^other
        return Permutation(other.images[self.images])

    def inverse(self):
        inv = np.empty(self.degree, dtype=np.int64)
        inv[self.images] = np.arange(self.degree, dtype=np.int64)
        return Permutation(inv)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_identity(self):
        return bool((self.images == np.arange(self.degree)).all())

    def order(self):
        n = 1
        for cyc in self.cycles():
            n = n * len(cyc) // _gcd(n, len(cyc))
        return n

    def moved_points(self):
        return [int(i) for i in np.nonzero(self.images != np.arange(self.degree))[0]]

    def first_moved(self):
        diff = np.nonzero(self.images != np.arange(self.degree))[0]
        return int(diff[0]) if len(diff) else None

    def cycles(self, include_fixed=False):
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = int(self.images[start])
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = int(self.images[x])
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_string(self):
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycs)

    def __eq__(self, other):
        return isinstance(other, Permutation) and np.array_equal(self.images, other.images)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images.tobytes())
        return self._hash

    def __repr__(self):
        return f"Permutation({self.cycle_string()}, degree={self.degree})"


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@dataclass
class _Level:
    """One stabilizer-chain level: a base point, the strong generators fixing
    all earlier base points, and a Schreier tree for the fundamental orbit."""

    base: int
    gens: list = field(default_factory=list)
    tree: dict = field(default_factory=dict)  # point -> (parent, gen index)

    def __post_init__(self):
        if not self.tree:
            self.tree = {self.base: None}

    def extend_orbit(self):
        frontier = list(self.tree)
        while frontier:
            new = []
            for pt in frontier:
                for gi, g in enumerate(self.gens):
                    img = int(g.images[pt])
                    if img not in self.tree:
                        self.tree[img] = (pt, gi)
                        new.append(img)
            frontier = new

    def transversal_element(self, pt, degree):
        """Permutation u with base^u = pt, composed along the Schreier tree."""
        word = []
        while pt != self.base:
            parent, gi = self.tree[pt]
            word.append(gi)
            pt = parent
        u = Permutation.identity(degree)
        for gi in reversed(word):
            u = u * self.gens[gi]
        return u

    def orbit_points(self):
        return sorted(self.tree)


def _schreier_sims(generators, degree, base_prefix=None):
    """Deterministic Schreier-Sims; returns a verified chain.

    Level k holds every strong generator fixing all bases of levels < k.
    Base points are the prescribed prefix followed by first moved points.
    """
    levels = [_Level(b) for b in (base_prefix or [])]
    gens = [g for g in generators if not g.is_identity()]

    def add_generator(g, start):
        """Add strong generator g (fixes bases of levels < start) to the chain."""
        i = start
        while i < len(levels) and int(g.images[levels[i].base]) == levels[i].base:
            i += 1
        if i == len(levels):
            fm = g.first_moved()
            levels.append(_Level(fm))
        for k in range(start, i + 1):
            levels[k].gens.append(g)
            levels[k].extend_orbit()
        return i

    for g in gens:
        add_generator(g, 0)

    def strip(s, start):
        for j in range(start, len(levels)):
            img = int(s.images[levels[j].base])
            if img not in levels[j].tree:
                return s, j
            s = s * levels[j].transversal_element(img, degree).inverse()
        return s, len(levels)

    # verify bottom-up via Schreier generators
    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        restart = False
        for pt in list(lv.tree):
            u = lv.transversal_element(pt, degree)
            for g in lv.gens:
                img = int(g.images[pt])
                s = u * g * lv.transversal_element(img, degree).inverse()
                h, j = strip(s, i + 1)
                if not h.is_identity():
                    add_generator(h, i + 1)
                    i = j if j < len(levels) else len(levels) - 1
                    restart = True
                    break
            if restart:
                break
        if not restart:
            i -= 1
    return levels


class PermGroup:
    """Permutation group with a deterministically verified stabilizer chain."""

    def __init__(self, generators, degree=None, _chain=None):
        gens = [g for g in generators if not g.is_identity()]
        if degree is None:
            if not gens:
                raise ValueError("degree required for the trivial group")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        self.generators = gens
        self.degree = degree
        self._levels = _chain
        self._order = None

    @property
    def levels(self):
        if self._levels is None:
            self._levels = _schreier_sims(self.generators, self.degree)
        return self._levels

    @property
    def order(self):
        if self._order is None:
            self._order = prod(len(lv.tree) for lv in self.levels) if self.levels else 1
        return self._order

    def sift(self, g):
        """Factor g through the chain; returns the residue (identity iff member)."""
        for lv in self.levels:
            img = int(g.images[lv.base])
            if img not in lv.tree:
                return g
            g = g * lv.transversal_element(img, self.degree).inverse()
        return g

    def __contains__(self, g):
        if g.degree != self.degree:
            return False
        return self.sift(g).is_identity()

    def __len__(self):
        return self.order

    # ------------------------------------------------------------------
    # orbits and actions
    # ------------------------------------------------------------------

    def orbit(self, point):
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range for degree {self.degree}")
        seen = {point}
        frontier = [point]
        while frontier:
            new = []
            for pt in frontier:
                for g in self.generators:
                    img = int(g.images[pt])
                    if img not in seen:
                        seen.add(img)
                        new.append(img)
            frontier = new
        return sorted(seen)

    def orbits(self):
        seen = set()
        out = []
        for pt in range(self.degree):
            if pt not in seen:
                orb = self.orbit(pt)
                seen.update(orb)
                out.append(orb)
        return out

    def is_transitive(self):
        return len(self.orbit(0)) == self.degree

    def orbit_of_tuple(self, tup):
        """Orbit of an index tuple under componentwise action."""
        tup = tuple(tup)
        seen = {tup}
        frontier = [tup]
        while frontier:
            new = []
            for t in frontier:
                for g in self.generators:
                    img = tuple(int(g.images[x]) for x in t)
                    if img not in seen:
                        seen.add(img)
                        new.append(img)
            frontier = new
        return seen

    def orbit_of_set(self, pts):
        """Orbit of a set of points under setwise action."""
        start = frozenset(pts)
        seen = {start}
        frontier = [start]
        while frontier:
            new = []
            for s in frontier:
                for g in self.generators:
                    img = frozenset(int(g.images[x]) for x in s)
                    if img not in seen:
                        seen.add(img)
                        new.append(img)
            frontier = new
        return seen

    def orbits_on_tuples(self, tuples):
        """Partition a list of tuples into orbit classes."""
        remaining = {tuple(t) for t in tuples}
        classes = []
        for t in tuples:
            t = tuple(t)
            if t not in remaining:
                continue
            orb = self.orbit_of_tuple(t)
            classes.append(sorted(orb & remaining))
            remaining -= orb
        return classes

    def orbits_on_sets(self, sets):
        remaining = {frozenset(s) for s in sets}
        classes = []
        for s in sets:
            s = frozenset(s)
            if s not in remaining:
                continue
            orb = self.orbit_of_set(s)
            classes.append(sorted(tuple(sorted(x)) for x in (orb & remaining)))
            remaining -= orb
        return classes

    def is_transitive_on_tuples(self, tuples):
        tuples = [tuple(t) for t in tuples]
        if not tuples:
            return True
        return self.orbit_of_tuple(tuples[0]) >= set(tuples)

    def is_transitive_on_sets(self, sets):
        sets = [frozenset(s) for s in sets]
        if not sets:
            return True
        return self.orbit_of_set(sets[0]) >= set(sets)

    # ------------------------------------------------------------------
    # stabilizers
    # ------------------------------------------------------------------

    def point_stabilizer(self, point):
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range")
        return self.pointwise_stabilizer([point])

    def pointwise_stabilizer(self, points):
        points = list(dict.fromkeys(points))
        levels = _schreier_sims(self.generators, self.degree, base_prefix=points)
        pts = set(points)
        keep = [lv for lv in levels if lv.base not in pts]
        gens = []
        for lv in keep:
            for g in lv.gens:
                if g not in gens:
                    gens.append(g)
        return PermGroup(gens, self.degree, _chain=keep)

    def setwise_stabilizer(self, pts):
        """Subgroup mapping the point set onto itself.

        Backtracks over base images through a chain rebased so the set's
        points come first; candidate images are restricted to the set at
        every level (orbit pruning).
        """
        pts = sorted(set(pts))
        if not pts:
            raise ValueError("empty set")
        if len(pts) == self.degree:
            return self
        target = set(pts)
        levels = _schreier_sims(self.generators, self.degree, base_prefix=pts)
        k = len(pts)  # first k levels have bases = pts
        deg = self.degree

        residual_gens = []
        for lv in levels[k:]:
            for g in lv.gens:
                if g not in residual_gens:
                    residual_gens.append(g)

        found = list(residual_gens)
        grp = PermGroup(found, deg) if found else None

        def search(i, tail):
            """tail = u_i * ... * u_1 built so far; g = (residual part) * tail."""
            nonlocal grp
            if i == k:
                if tail is not None and not tail.is_identity():
                    if grp is None or tail not in grp:
                        found.append(tail)
                        grp = PermGroup(found, deg)
                return
            lv = levels[i]
            for pt in lv.orbit_points():
                img = pt if tail is None else int(tail.images[pt])
                if img not in target:
                    continue
                u = lv.transversal_element(pt, deg)
                search(i + 1, u if tail is None else u * tail)

        search(0, None)
        return PermGroup(found, deg)

    def element_mapping_tuple(self, src, dst):
        """An element g with src[i]^g = dst[i] for all i, or None.

        Backtracks over a chain rebased so the source points come first;
        at level i only the transversal coset hitting dst[i] is explored."""
        src = list(src)
        dst = list(dst)
        if len(src) != len(dst):
            raise ValueError("tuple length mismatch")
        if not src:
            return Permutation.identity(self.degree)
        levels = _schreier_sims(self.generators, self.degree, base_prefix=src)
        k = len(src)
        deg = self.degree

        def search(i, tail):
            if i == k:
                return Permutation.identity(deg) if tail is None else tail
            lv = levels[i]
            for pt in lv.orbit_points():
                img = pt if tail is None else int(tail.images[pt])
                if img != dst[i]:
                    continue
                u = lv.transversal_element(pt, deg)
                r = search(i + 1, u if tail is None else u * tail)
                if r is not None:
                    return r
            return None

        return search(0, None)

    def induced_action(self, blocks):
        """Action on an ordered list of disjoint blocks; returns (image, kernel).

        The kernel consists of elements fixing every block setwise (for
        singleton blocks: pointwise)."""
        blocks = [sorted(b) for b in blocks]
        block_of = {}
        for i, b in enumerate(blocks):
            for pt in b:
                if pt in block_of:
                    raise ValueError("blocks not disjoint")
                block_of[pt] = i
        m = len(blocks)
        img_gens = []
        for g in self.generators:
            img = [None] * m
            for i, b in enumerate(blocks):
                tgt = block_of.get(int(g.images[b[0]]))
                if tgt is None:
                    raise ValueError("group does not preserve the blocks")
                for pt in b:
                    if block_of.get(int(g.images[pt])) != tgt:
                        raise ValueError("group does not preserve the blocks")
                img[i] = tgt
            img_gens.append(Permutation(img))
        image = PermGroup(img_gens, m)
        kernel = self._block_kernel(blocks, block_of, m)
        return image, kernel

    def _block_kernel(self, blocks, block_of, m):
        """Elements fixing every block setwise, via an augmented action whose
        extra points are the blocks themselves."""
        n = self.degree
        aug_gens = []
        for g in self.generators:
            img = np.empty(n + m, dtype=np.int64)
            img[:n] = g.images
            for i, b in enumerate(blocks):
                img[n + i] = n + block_of[int(g.images[b[0]])]
            aug_gens.append(Permutation(img))
        aug = PermGroup(aug_gens, n + m)
        stab = aug.pointwise_stabilizer(list(range(n, n + m)))
        ker_gens = []
        for g in stab.generators:
            ker_gens.append(Permutation(g.images[:n]))
        return PermGroup(ker_gens, n)

    # ------------------------------------------------------------------
    # element enumeration and random elements
    # ------------------------------------------------------------------

    def elements(self):
        """Iterate over all elements (use only for modest orders)."""
        levels = self.levels
        if not levels:
            yield Permutation.identity(self.degree)
            return
        transversals = [[lv.transversal_element(pt, self.degree)
                         for pt in lv.orbit_points()] for lv in levels]
        for combo in itertools.product(*reversed(transversals)):
            g = Permutation.identity(self.degree)
            for u in combo:
                g = g * u
            yield g

    def random_element(self, rng=None):
        rng = rng or random
        g = Permutation.identity(self.degree)
        for lv in reversed(self.levels):
            pt = rng.choice(lv.orbit_points())
            g = g * lv.transversal_element(pt, self.degree)
        return g

    # ------------------------------------------------------------------
    # structure
    # ------------------------------------------------------------------

    def derived_subgroup(self):
        """Normal closure of the generator commutators."""
        comms = []
        for a in self.generators:
            for b in self.generators:
                c = a.inverse() * b.inverse() * a * b
                if not c.is_identity() and c not in comms:
                    comms.append(c)
        return self.normal_closure(comms)

    def normal_closure(self, elts):
        gens = [g for g in elts if not g.is_identity()]
        grp = PermGroup(gens, self.degree)
        changed = True
        while changed:
            changed = False
            for g in self.generators:
                gi = g.inverse()
                for kgen in list(grp.generators):
                    conj = gi * kgen * g
                    if conj not in grp:
                        gens = gens + [conj]
                        grp = PermGroup(gens, self.degree)
                        changed = True
        return grp

    def is_abelian(self):
        for i, a in enumerate(self.generators):
            for b in self.generators[i + 1:]:
                if a * b != b * a:
                    return False
        return True

    def is_solvable(self):
        return self.derived_length() is not None

    def derived_length(self):
        """Length of the derived series, or None if it does not reach 1."""
        g = self
        length = 0
        prev = g.order
        while prev > 1:
            d = g.derived_subgroup()
            if d.order == prev:
                return None
            g = d
            prev = d.order
            length += 1
        return length

    def normalizes(self, other):
        """True iff every generator of self normalizes the subgroup `other`."""
        for g in self.generators:
            gi = g.inverse()
            for h in other.generators:
                if gi * h * g not in other:
                    return False
        return True

    def is_semiregular(self):
        """No nonidentity element has a fixed point (checked via stabilizers)."""
        return all(self.point_stabilizer(o[0]).order == 1 for o in self.orbits())

    def is_regular(self):
        return self.is_transitive() and self.order == self.degree

    def center_order(self, cap=100000):
        if self.order > cap:
            return None
        count = 0
        for g in self.elements():
            if all(g * h == h * g for h in self.generators):
                count += 1
        return count

    def element_order_multiset(self, cap=100000):
        if self.order > cap:
            return None
        orders = {}
        for g in self.elements():
            o = g.order()
            orders[o] = orders.get(o, 0) + 1
        return orders

    def sylow_subgroup(self, p, rng_seed=7):
        """A Sylow p-subgroup, by random-element closure (adequate for the
        modest orders used here; exact because the order is known)."""
        target = _p_part(self.order, p)
        if target == 1:
            return PermGroup([], self.degree)
        rng = random.Random(rng_seed)
        gens = []
        grp = PermGroup([], self.degree)
        attempts = 0
        while grp.order < target and attempts < 10000:
            attempts += 1
            x = self.random_element(rng)
            o = x.order()
            q = o // _p_part(o, p)
            y = x ** q  # p-element
            if y.is_identity() or y in grp:
                continue
            cand = PermGroup(gens + [y], self.degree)
            if cand.order == _p_part(cand.order, p):
                gens.append(y)
                grp = cand
        if grp.order != target:
            raise RuntimeError(f"Sylow {p}-subgroup search did not converge")
        return grp

    def abelian_invariants(self, cap=100000):
        """Invariant factors of the abelianization."""
        d = self.derived_subgroup()
        q = self.order // d.order
        if q == 1:
            return []
        if self.order > cap or d.order > cap:
            return None
        d_set = set(d.elements())
        cosets = []
        for g in self.elements():
            if not any((g * rep.inverse()) in d_set for rep in cosets):
                cosets.append(g)

        def q_order(g):
            k = 1
            x = g
            while x not in d_set:
                x = x * g
                k += 1
            return k

        return _invariant_factors_from_orders(q, [q_order(g) for g in cosets])

    def fingerprint(self, cap=100000):
        """Order, element-order multiset, center order, abelian invariants,
        derived length; a necessary condition for isomorphism."""
        full = self.order <= cap
        return {
            "order": self.order,
            "element_orders": self.element_order_multiset(cap) if full else _sampled_orders(self),
            "center_order": self.center_order(cap) if full else None,
            "abelian_invariants": self.abelian_invariants(cap) if full else None,
            "derived_length": self.derived_length(),
            "sampled": not full,
        }

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


def _sampled_orders(group, samples=2000, seed=0):
    rng = random.Random(seed)
    orders = {}
    for _ in range(samples):
        o = group.random_element(rng).order()
        orders[o] = orders.get(o, 0) + 1
    return orders


def _invariant_factors_from_orders(q, qorders):
    """Invariant factors of an abelian group of order q given all element orders."""
    from collections import Counter

    counts = Counter(qorders)
    factors = _factorize(q)
    per_prime = {}
    for p, e in factors.items():
        # For each k, #elements whose order's p-part divides p^k equals
        # (q / p^e) * p^(sum_i min(k, lambda_i)); recover the partition lambda.
        increments = []
        prev = 0
        for k in range(1, e + 1):
            nk = sum(c for o, c in counts.items() if _p_part(o, p) <= p ** k)
            expo = _ilog(nk * (p ** e) // q, p)
            increments.append(expo - prev)
            prev = expo
        # increments[k-1] = number of lambda_i >= k
        partition = []
        for k in range(len(increments), 0, -1):
            while len(partition) < increments[k - 1]:
                partition.append(k)
        per_prime[p] = sorted(partition, reverse=True)
    width = max(len(v) for v in per_prime.values())
    inv = []
    for i in range(width):
        f = 1
        for p, partition in per_prime.items():
            if i < len(partition):
                f *= p ** partition[i]
        inv.append(f)
    return sorted(inv)


def _p_part(n, p):
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def _ilog(n, p):
    e = 0
    while n > 1:
        n //= p
        e += 1
    return e


def _factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# ----------------------------------------------------------------------
# convenience constructors
# ----------------------------------------------------------------------

def build_chain(generators, degree=None):
    """Construct a PermGroup and force chain computation."""
    g = PermGroup(generators, degree)
    _ = g.order
    return g


def regular_group(generators, degree):
    """Chain for a group known to act regularly (e.g. a closed coset table's
    right-multiplication action): one level, full orbit, trivial stabilizer."""
    lv = _Level(0, [g for g in generators if not g.is_identity()])
    lv.extend_orbit()
    if len(lv.tree) != degree:
        raise ValueError("generators are not transitive; not a regular action")
    return PermGroup(generators, degree, _chain=[lv])


def transitive_extension(regular_part, stabilizer):
    """Chain for G = R·G_0 with R regular (level 0) and G_0 fixing point 0.

    Lets us handle groups like R(H) ⋊ Aut(H,S) at degrees where generic
    Schreier-Sims would be too slow.
    """
    degree = regular_part.degree
    lv = _Level(0, list(regular_part.generators))
    lv.extend_orbit()
    if len(lv.tree) != degree:
        raise ValueError("regular part not transitive")
    for g in stabilizer.generators:
        if int(g.images[0]) != 0:
            raise ValueError("stabilizer part moves the base point")
    chain = [lv] + list(stabilizer.levels)
    return PermGroup(regular_part.generators + stabilizer.generators, degree, _chain=chain)


def is_isomorphic_small(a, b):
    """Brute-force isomorphism test for groups of order ≤ 256."""
    if a.order != b.order:
        return False
    if a.order > 256 or b.order > 256:
        raise ValueError("is_isomorphic_small supports orders ≤ 256 only")
    fa, fb = a.fingerprint(), b.fingerprint()
    for key in ("element_orders", "center_order", "abelian_invariants", "derived_length"):
        if fa[key] != fb[key]:
            return False
    if a.order == 1:
        return True
    a_elts = list(a.elements())
    gens = _small_generating_set(a, a_elts)
    words = _element_words(a, gens)
    b_by_order = {}
    for g in b.elements():
        b_by_order.setdefault(g.order(), []).append(g)

    def try_map(images):
        mapped = {}
        for elt, word in words.items():
            img = Permutation.identity(b.degree)
            for wi in word:
                img = img * images[wi]
            mapped[elt] = img
        if len(set(mapped.values())) != len(mapped):
            return False
        # multiplicativity on (element, generator) pairs suffices
        for x, gx in mapped.items():
            for i, g in enumerate(gens):
                if mapped[x * g] != gx * images[i]:
                    return False
        return True

    candidate_lists = [b_by_order.get(g.order(), []) for g in gens]
    for images in itertools.product(*candidate_lists):
        if try_map(list(images)):
            return True
    return False


def _small_generating_set(group, elts=None):
    """Greedy small generating set, preferring high-order elements."""
    elts = elts if elts is not None else list(group.elements())
    gens = []
    cur = None
    for g in sorted(elts, key=lambda x: (-x.order(), x.images.tobytes())):
        if g.is_identity():
            continue
        if cur is None:
            gens = [g]
            cur = PermGroup(gens, group.degree)
        elif g not in cur:
            gens.append(g)
            cur = PermGroup(gens, group.degree)
        if cur.order == group.order:
            break
    return gens


def _element_words(group, gens):
    """BFS words over gens for every element (as generator-index lists)."""
    ident = Permutation.identity(group.degree)
    words = {ident: []}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = x * g
                if y not in words:
                    words[y] = words[x] + [i]
                    new.append(y)
        frontier = new
    return words
