"""Graph automorphism groups and canonical forms by individualization
and equitable refinement.

The automorphism search explores the refinement tree depth-first, detects
automorphisms by comparing leaf certificates against the first leaf, prunes
sibling branches lying in known orbits, and backjumps to the deepest common
ancestor with the first leaf path once an automorphism is found.  Known
automorphisms (for instance the regular subgroup of a Cayley graph) can be
seeded to prune from the start.

The canonical form is computed in a second pass that uses the full
automorphism group for exact orbit pruning and maximizes the relabeled
adjacency certificate; it is exact but budgeted.
"""

from __future__ import annotations

import numpy as np

from .perms import Permutation, PermGroup, build_chain


class AutError(RuntimeError):
    pass


# ----------------------------------------------------------------------
# refinement
# ----------------------------------------------------------------------

def refine(g, colors):
    """Equitable refinement with isomorphism-invariant color numbering."""
    n = g.n
    colors = list(colors)
    ncolors = len(set(colors))
    while True:
        sigs = []
        for v in range(n):
            cnt = {}
            for w in g.neighbors(v):
                c = colors[w]
                cnt[c] = cnt.get(c, 0) + 1
            sigs.append((colors[v], tuple(sorted(cnt.items()))))
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [order[s] for s in sigs]
        if len(order) == ncolors:
            return colors
        ncolors = len(order)


def _individualize(g, colors, v):
    """Split v into its own cell, then refine."""
    colors = [2 * c + 1 for c in colors]
    colors[v] -= 1
    return refine(g, colors)


def _cells(colors):
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    return [cells[c] for c in sorted(cells)]


def _target_cell(colors):
    """First smallest non-singleton cell, or None when discrete."""
    best = None
    for cell in _cells(colors):
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best


def _certificate(g, colors):
    """Adjacency certificate of the discrete coloring (position = color)."""
    n = g.n
    cert = 0
    for u, v in g.edges():
        i, j = colors[u], colors[v]
        if i > j:
            i, j = j, i
        cert |= 1 << (i * n + j)
    return cert


# ----------------------------------------------------------------------
# automorphism search
# ----------------------------------------------------------------------

class _AutSearch:
    def __init__(self, g, seed_gens, node_budget):
        self.g = g
        self.n = g.n
        self.gens = []          # discovered + verified seed generators
        self.first_path = None
        self.first_colors = None
        self.first_cert = None
        self.nodes = 0
        self.node_budget = node_budget
        for p in seed_gens or []:
            if not is_automorphism(g, p):
                raise AutError("seed permutation is not an automorphism")
            self.gens.append(p)

    def run(self):
        start = refine(self.g, [0] * self.n)
        self._dfs(start, [])
        return build_chain(self.gens, self.n)

    def _dfs(self, colors, path):
        """Explore; returns the depth at which iteration should resume."""
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise AutError("automorphism search budget exceeded")
        depth = len(path)
        cell = _target_cell(colors)
        if cell is None:
            return self._leaf(colors, path)
        branched = []
        for v in cell:
            if self._pruned(path, branched, v):
                continue
            branched.append(v)
            resume = self._dfs(_individualize(self.g, colors, v), path + [v])
            if resume < depth:
                return resume
        return depth

    def _leaf(self, colors, path):
        depth = len(path)
        if self.first_path is None:
            self.first_path = list(path)
            self.first_colors = list(colors)
            self.first_cert = _certificate(self.g, colors)
            return depth
        if _certificate(self.g, colors) != self.first_cert:
            return depth
        # position -> vertex maps for both leaves give the automorphism
        inv_here = [0] * self.n
        for v, c in enumerate(colors):
            inv_here[c] = v
        images = np.array([inv_here[self.first_colors[v]]
                           for v in range(self.n)], dtype=np.int64)
        perm = Permutation(images)
        if not perm.is_identity():
            self.gens.append(perm)
        # backjump to the deepest common ancestor with the first path
        common = 0
        while (common < len(path) and common < len(self.first_path)
               and path[common] == self.first_path[common]):
            common += 1
        return common

    def _pruned(self, path, branched, v):
        """True if v lies in the orbit of an earlier branch vertex under
        generators fixing the current path pointwise (sound underestimate
        of the path stabilizer)."""
        if not branched:
            return False
        fixing = [p for p in self.gens
                  if all(int(p.images[u]) == u for u in path)]
        if not fixing:
            return False
        seen = set(branched)
        frontier = list(branched)
        while frontier:
            u = frontier.pop()
            if u == v:
                return True
            for p in fixing:
                w = int(p.images[u])
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return v in seen


def is_automorphism(g, perm):
    if perm.degree != g.n:
        return False
    imgs = perm.images
    return all(g.has_edge(int(imgs[u]), int(imgs[v])) for u, v in g.edges())


def automorphism_group(g, seed_gens=None, cap=5000, node_budget=200_000):
    """Automorphism group of g as a PermGroup on its vertices.

    seed_gens: known automorphisms used to prune the search (verified).
    cap: refuse graphs with more vertices than this."""
    if g.n > cap:
        raise AutError(f"automorphism search cap exceeded (n={g.n} > {cap})")
    if g.n == 0:
        return build_chain([], 0)
    return _AutSearch(g, seed_gens, node_budget).run()


# ----------------------------------------------------------------------
# canonical form
# ----------------------------------------------------------------------

def canonical_form(g, aut=None, cap=2000, node_budget=100_000):
    """Canonical certificate (int) of g: the maximal relabeled adjacency
    bitmask over the refinement tree, with exact orbit pruning by the full
    automorphism group.  Two graphs are isomorphic iff certificates match."""
    if g.n > cap:
        raise AutError(f"canonical form cap exceeded (n={g.n} > {cap})")
    if g.n == 0:
        return 0
    if aut is None:
        aut = automorphism_group(g, cap=cap, node_budget=node_budget)
    budget = [node_budget]

    def dfs(colors, path):
        budget[0] -= 1
        if budget[0] < 0:
            raise AutError("canonical form budget exceeded")
        cell = _target_cell(colors)
        if cell is None:
            return _certificate(g, colors)
        stab = aut.pointwise_stabilizer(path) if path else aut
        best = None
        seen = set()
        for v in cell:
            if v in seen:
                continue
            seen.update(stab.orbit(v))
            cert = dfs(_individualize(g, colors, v), path + [v])
            if best is None or cert > best:
                best = cert
        return best

    return dfs(refine(g, [0] * g.n), [])


def are_isomorphic(g, h, cap=2000):
    if g.n != h.n or g.m != h.m:
        return False
    return canonical_form(g, cap=cap) == canonical_form(h, cap=cap)
