"""Finite simple graphs and the graph functors used throughout: line graph,
clique graph, neighborhood subgraphs, Cayley graphs, quotient graphs, and
shape enumeration (s-arcs, 2-geodesics, 2-paths, triangles).

Adjacency is stored as bit rows (Python ints) up to 2^14 vertices and as
sorted adjacency lists above that.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

_BITROW_LIMIT = 1 << 14


class GraphError(ValueError):
    pass


class Graph:
    """Immutable finite simple undirected graph with deterministic ordering."""

    def __init__(self, n, edges, labels=None):
        self.n = n
        self.labels = labels
        edge_set = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge endpoint out of range: ({u},{v})")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            edge_set.add((u, v) if u < v else (v, u))
        self._edges = sorted(edge_set)
        if labels is not None:
            if len(labels) != n:
                raise GraphError("label count mismatch")
            if len(set(labels)) != n:
                raise GraphError("labels not unique")
        if n <= _BITROW_LIMIT:
            rows = [0] * n
            for u, v in self._edges:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            self._rows = rows
            self._adj = None
        else:
            adj = [[] for _ in range(n)]
            for u, v in self._edges:
                adj[u].append(v)
                adj[v].append(u)
            self._adj = [sorted(a) for a in adj]
            self._rows = None
        self._neighbor_cache = None

    # -- basic accessors ----------------------------------------------

    def edges(self):
        return list(self._edges)

    @property
    def m(self):
        return len(self._edges)

    def has_edge(self, u, v):
        if self._rows is not None:
            return bool(self._rows[u] >> v & 1)
        a = self._adj[u]
        lo, hi = 0, len(a)
        while lo < hi:
            mid = (lo + hi) // 2
            if a[mid] < v:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(a) and a[lo] == v

    def neighbors(self, v):
        if self._adj is not None:
            return self._adj[v]
        if self._neighbor_cache is None:
            self._neighbor_cache = [None] * self.n
        cached = self._neighbor_cache[v]
        if cached is None:
            cached = _bits(self._rows[v])
            self._neighbor_cache[v] = cached
        return cached

    def degree(self, v):
        if self._rows is not None:
            return self._rows[v].bit_count()
        return len(self._adj[v])

    def row(self, v):
        """Bitmask of neighbors (bit-row mode only)."""
        if self._rows is None:
            raise GraphError("graph too large for bit-row operations")
        return self._rows[v]

    # -- induced subgraphs --------------------------------------------

    def induced_subgraph(self, vertices):
        """Induced subgraph; vertex i of the result is vertices[i] (sorted)."""
        vs = sorted(vertices)
        index = {v: i for i, v in enumerate(vs)}
        edges = [(index[v], index[w]) for v in vs
                 for w in self.neighbors(v) if v < w and w in index]
        return Graph(len(vs), edges, labels=vs)

    def complement(self):
        edges = [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                 if not self.has_edge(u, v)]
        return Graph(self.n, edges, labels=self.labels)

    # -- traversal -----------------------------------------------------

    def bfs_distances(self, start):
        dist = [-1] * self.n
        dist[start] = 0
        frontier = [start]
        d = 0
        while frontier:
            d += 1
            new = []
            for v in frontier:
                for w in self.neighbors(v):
                    if dist[w] == -1:
                        dist[w] = d
                        new.append(w)
            frontier = new
        return dist

    def is_connected(self):
        if self.n == 0:
            return True
        return all(d >= 0 for d in self.bfs_distances(0))

    def relabel(self, perm):
        """Graph with vertex v renamed perm[v]."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self._edges])

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self._edges == other._edges

    def __hash__(self):
        return hash((self.n, tuple(self._edges)))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _bits(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ----------------------------------------------------------------------
# constructors
# ----------------------------------------------------------------------

def from_edge_list(n, edges):
    return Graph(n, edges)


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a, b):
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def petersen_graph():
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return Graph(10, edges)


def cube_graph():
    edges = []
    for v in range(8):
        for bit in range(3):
            w = v ^ (1 << bit)
            if v < w:
                edges.append((v, w))
    return Graph(8, edges)


# ----------------------------------------------------------------------
# functors
# ----------------------------------------------------------------------

def line_graph(g):
    """Vertices = edges of g; adjacency = shared endpoint."""
    if g.m == 0:
        raise GraphError("line graph of an edgeless graph")
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    out = []
    for v in range(g.n):
        nbrs = g.neighbors(v)
        incident = [index[(v, w) if v < w else (w, v)] for w in nbrs]
        for i in range(len(incident)):
            for j in range(i + 1, len(incident)):
                out.append((incident[i], incident[j]))
    return Graph(len(edges), out, labels=edges)


def maximal_cliques(g, cap=2000):
    """Maximal cliques, sorted; fast path when every neighborhood splits into
    disjoint cliques, Bron-Kerbosch with pivoting otherwise (n <= cap)."""
    fast = _cliques_if_locally_clique_union(g)
    if fast is not None:
        return fast
    if g.n > cap:
        raise GraphError(f"clique enumeration cap exceeded (n={g.n} > {cap})")
    return _bron_kerbosch(g)


def _cliques_if_locally_clique_union(g):
    cliques = set()
    for v in range(g.n):
        nbrs = g.neighbors(v)
        local = g.induced_subgraph(nbrs)
        comps = _components(local)
        for comp in comps:
            members = [local.labels[i] for i in comp]
            k = len(members)
            for i in range(k):
                for j in range(i + 1, k):
                    if not g.has_edge(members[i], members[j]):
                        return None  # component is not a clique
            cliques.add(tuple(sorted(members + [v])))
        if not nbrs:
            cliques.add((v,))
    return sorted(cliques)


def _components(g):
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        frontier = [s]
        while frontier:
            new = []
            for v in frontier:
                for w in g.neighbors(v):
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        new.append(w)
            frontier = new
        out.append(sorted(comp))
    return out


def _bron_kerbosch(g):
    cliques = []
    rows = [0] * g.n
    for v in range(g.n):
        for w in g.neighbors(v):
            rows[v] |= 1 << w

    def expand(r, p, x):
        if p == 0 and x == 0:
            cliques.append(tuple(_bits(r)))
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best = pivot
        best_count = (p & rows[pivot]).bit_count()
        m = pivot_pool
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            c = (p & rows[u]).bit_count()
            if c > best_count:
                best, best_count = u, c
        cand = p & ~rows[best]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            bit = 1 << v
            expand(r | bit, p & rows[v], x & rows[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << g.n) - 1, 0)
    return sorted(cliques)


def clique_graph(g, cap=2000):
    """Vertices = maximal cliques; adjacency = nonempty intersection."""
    if not g.is_connected():
        raise GraphError("clique graph requires a connected input")
    cliques = maximal_cliques(g, cap)
    by_vertex = {}
    for i, cl in enumerate(cliques):
        for v in cl:
            by_vertex.setdefault(v, []).append(i)
    edges = []
    for members in by_vertex.values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                edges.append((members[i], members[j]))
    return Graph(len(cliques), edges, labels=cliques)


def local_subgraph(g, v):
    return g.induced_subgraph(g.neighbors(v))


def local_complement(g, v):
    return local_subgraph(g, v).complement()


def is_locally_2Kn(g):
    """(True, n) iff every neighborhood induces two disjoint n-cliques."""
    size = None
    for v in range(g.n):
        local = local_subgraph(g, v)
        comps = _components(local)
        if len(comps) != 2:
            return False, None
        a, b = comps
        if len(a) != len(b):
            return False, None
        for comp in comps:
            for i in range(len(comp)):
                for j in range(i + 1, len(comp)):
                    if not local.has_edge(comp[i], comp[j]):
                        return False, None
        if size is None:
            size = len(a)
        elif size != len(a):
            return False, None
    return True, size


def cayley_graph(realization, s_elements):
    """Cay(G, S): vertices = elements, edges {g, s·g}.

    S is given as element indices of the realization; must be inverse-closed
    and avoid the identity."""
    s_elements = sorted(set(s_elements))
    if 0 in s_elements:
        raise GraphError("identity in connection set")
    for s in s_elements:
        if realization.inv(s) not in s_elements:
            raise GraphError("connection set not inverse-closed")
    n = realization.n
    edges = []
    for s in s_elements:
        left = realization.left_mult_perm(s)
        for gidx in range(n):
            h = int(left[gidx])
            if gidx < h:
                edges.append((gidx, h))
            else:
                edges.append((h, gidx))
    return Graph(n, edges)


def quotient_graph(g, partition):
    """Quotient by a vertex partition; cells adjacent iff a cross edge exists.

    Returns (quotient, is_normal_cover) where the flag records valency
    preservation (both graphs regular with equal valency)."""
    cell_of = [None] * g.n
    cells = [sorted(c) for c in partition]
    for i, cell in enumerate(cells):
        for v in cell:
            if v >= g.n or cell_of[v] is not None:
                raise GraphError("malformed partition")
            cell_of[v] = i
    if any(c is None for c in cell_of):
        raise GraphError("partition does not cover the vertex set")
    edges = set()
    for u, v in g.edges():
        cu, cv = cell_of[u], cell_of[v]
        if cu != cv:
            edges.add((min(cu, cv), max(cu, cv)))
    q = Graph(len(cells), sorted(edges))
    breg = basics(g)
    qreg = basics(q)
    cover = bool(breg["regular"] and qreg["regular"] and breg["valency"] == qreg["valency"])
    return q, cover


# ----------------------------------------------------------------------
# shapes
# ----------------------------------------------------------------------

@dataclass
class ShapeSet:
    kind: str
    items: list = field(default_factory=list)

    def __len__(self):
        return len(self.items)


def enumerate_shapes(g, kind, s=None):
    """Enumerate s-arcs (s ≤ 3), 2-geodesics, 2-paths, induced path triples,
    or triangles."""
    if kind == "s-arc":
        if s is None or not 0 <= s <= 3:
            raise GraphError("s-arc enumeration supports 0 <= s <= 3")
        return ShapeSet(kind, _arcs(g, s))
    if kind == "2-geodesic":
        items = [(u, v, w) for (u, v, w) in _arcs(g, 2) if not g.has_edge(u, w)]
        return ShapeSet(kind, items)
    if kind == "2-path":
        items = [(u, v, w) for (u, v, w) in _arcs(g, 2) if u < w]
        return ShapeSet(kind, items)
    if kind == "induced-path-triple":
        items = [frozenset((u, v, w)) for (u, v, w) in _arcs(g, 2)
                 if u < w and not g.has_edge(u, w)]
        return ShapeSet(kind, items)
    if kind == "triangle":
        items = []
        for u, v in g.edges():
            for w in g.neighbors(v):
                if w > v and u < v and g.has_edge(u, w):
                    items.append(frozenset((u, v, w)))
        return ShapeSet(kind, items)
    raise GraphError(f"unknown shape kind {kind!r}")


def _arcs(g, s):
    if s == 0:
        return [(v,) for v in range(g.n)]
    arcs = [(u, v) for u, v in g.edges()] + [(v, u) for u, v in g.edges()]
    for _ in range(s - 1):
        extended = []
        for arc in arcs:
            tail = arc[-1]
            prev = arc[-2]
            for w in g.neighbors(tail):
                if w != prev:
                    extended.append(arc + (w,))
        arcs = extended
    return arcs


def count_triangles(g):
    count = 0
    for u, v in g.edges():
        if g._rows is not None:
            count += (g.row(u) & g.row(v)).bit_count()
        else:
            count += len(set(g.neighbors(u)) & set(g.neighbors(v)))
    return count // 3


# ----------------------------------------------------------------------
# basic invariants
# ----------------------------------------------------------------------

_LARGE = 10_000


def basics(g):
    """regular?, valency, girth, diameter, connectivity, bipartiteness.

    Girth and diameter are reported as "skipped" above 10^4 vertices;
    girth is None (infinite) for forests."""
    degrees = [g.degree(v) for v in range(g.n)]
    regular = len(set(degrees)) <= 1
    valency = degrees[0] if regular and degrees else 0
    connected = g.is_connected()
    bipartite, biparts = _bipartition(g)
    if g.n > _LARGE:
        girth = "skipped"
        diameter = "skipped"
    else:
        girth = _girth(g)
        diameter = _diameter(g) if connected else None
    return {
        "regular": regular,
        "valency": valency if regular else None,
        "degrees": None if regular else sorted(set(degrees)),
        "girth": girth,
        "diameter": diameter,
        "connected": connected,
        "bipartite": bipartite,
        "biparts": biparts,
    }


def _bipartition(g):
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        frontier = [s]
        while frontier:
            new = []
            for v in frontier:
                for w in g.neighbors(v):
                    if color[w] == -1:
                        color[w] = 1 - color[v]
                        new.append(w)
                    elif color[w] == color[v]:
                        return False, None
            frontier = new
    return True, [[v for v in range(g.n) if color[v] == 0],
                  [v for v in range(g.n) if color[v] == 1]]


def _girth(g):
    best = None
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        frontier = [s]
        while frontier:
            new = []
            for v in frontier:
                for w in g.neighbors(v):
                    if dist[w] == -1:
                        dist[w] = dist[v] + 1
                        parent[w] = v
                        new.append(w)
                    elif w != parent[v] and dist[w] >= dist[v]:
                        cycle = dist[v] + dist[w] + 1
                        if best is None or cycle < best:
                            best = cycle
            if best is not None and best <= 2 * dist[frontier[0]]:
                break
            frontier = new
    return best


def _diameter(g):
    best = 0
    for v in range(g.n):
        best = max(best, max(g.bfs_distances(v)))
    return best


# ----------------------------------------------------------------------
# IO
# ----------------------------------------------------------------------

def to_json(g):
    return json.dumps({"n": g.n, "edges": [[u, v] for u, v in g.edges()]})


def from_json(text):
    data = json.loads(text)
    return Graph(int(data["n"]), [tuple(e) for e in data["edges"]])


def from_edge_text(text):
    """Plain edge list: one "u v" per line, '#' comments."""
    edges = []
    top = -1
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line: {raw!r}")
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
        top = max(top, u, v)
    return Graph(top + 1, edges)


def to_dot(g, limit=500):
    if g.n > limit:
        raise GraphError(f"DOT export limited to {limit} vertices")
    lines = ["graph {"]
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
