"""Symmetry predicates for finite graphs: transitivity on vertices, edges,
arcs, s-arcs, 2-geodesics and 2-paths; connected-set homogeneity (k-CSH)
versus connected homogeneity (k-CH) for k ≤ 3; local actions; stabilizer
type tags; and the seven-case classification of locally-2K_n graphs that
are 3-CSH but not 3-CH.

Transitivity on a shape class is decided by the orbit–stabilizer identity:
the orbit of one representative has size |A| / |A_(shape)|, and the class
is a single orbit iff that size equals the class size.  This is valid
because every class used here is invariant under automorphisms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict

from . import graphs
from .graphs import count_triangles
from .autgrp import automorphism_group, is_automorphism
from .perms import Permutation, PermGroup, build_chain, is_isomorphic_small
from .words import parse_presentation
from .coset import regular_representation


class ClassifyError(ValueError):
    pass


class InvariantViolation(RuntimeError):
    """A cross-check that should always agree did not (bug signal)."""


def _check_aut(g, A):
    for p in A.generators:
        if not is_automorphism(g, p):
            raise ClassifyError("supplied group does not preserve adjacency")


# ----------------------------------------------------------------------
# shape counting and representatives (regular graphs: closed formulas)
# ----------------------------------------------------------------------

def arc_count(g, s):
    if s == 0:
        return g.n
    degs = [g.degree(v) for v in range(g.n)]
    if len(set(degs)) == 1:
        d = degs[0]
        return g.n * d * (d - 1) ** (s - 1) if s >= 1 else g.n
    return len(graphs.enumerate_shapes(g, "s-arc", s=s).items)


def two_geodesic_count(g):
    return arc_count(g, 2) - 6 * count_triangles(g)


def first_s_arc(g, s):
    """A representative s-arc found greedily, or None."""
    for u, v in g.edges():
        arc = [u, v]
        ok = True
        while len(arc) < s + 1:
            nxt = next((w for w in g.neighbors(arc[-1]) if w != arc[-2]), None)
            if nxt is None:
                ok = False
                break
            arc.append(nxt)
        if ok:
            return tuple(arc)
    return None


def first_two_geodesic(g):
    for v in range(g.n):
        nbrs = g.neighbors(v)
        for i, u in enumerate(nbrs):
            for w in nbrs[i + 1:]:
                if not g.has_edge(u, w):
                    return (u, v, w)
    return None


def first_triangle(g):
    for u, v in g.edges():
        for w in g.neighbors(v):
            if w != u and g.has_edge(u, w):
                return (u, v, w)
    return None


# ----------------------------------------------------------------------
# orbit-stabilizer transitivity tests
# ----------------------------------------------------------------------

def tuple_orbit_size(A, tup):
    return A.order // A.pointwise_stabilizer(list(tup)).order


def set_orbit_size(A, pts):
    return A.order // A.setwise_stabilizer(pts).order


def transitive_on_class_tuple(A, rep, count):
    if count == 0:
        return True
    if rep is None:
        raise ClassifyError("empty representative for nonempty class")
    return tuple_orbit_size(A, rep) == count


def unordered_tuple_stab_order(A, rep):
    """Order of the stabilizer of the unordered path [v0,...,vk] (tuple
    identified with its reversal)."""
    stab = A.pointwise_stabilizer(list(rep)).order
    rev = tuple(reversed(rep))
    if tuple(rev) != tuple(rep) and A.element_mapping_tuple(rep, rev) is not None:
        return stab * 2
    return stab


# ----------------------------------------------------------------------
# transitivity profile
# ----------------------------------------------------------------------

def transitivity_profile(g, A, validate=True):
    """Vertex/edge/arc and s-arc transitivity and regularity flags."""
    if validate:
        _check_aut(g, A)
    out = {}
    out["vertex_transitive"] = A.is_transitive() if g.n else True
    e0 = g.edges()[0] if g.m else None
    out["edge_transitive"] = (g.m == 0 or set_orbit_size(A, e0) == g.m)
    out["arc_transitive"] = (g.m == 0 or
                             transitive_on_class_tuple(A, e0, 2 * g.m))
    for s in (1, 2, 3):
        rep = first_s_arc(g, s)
        count = arc_count(g, s)
        trans = rep is not None and transitive_on_class_tuple(A, rep, count)
        out[f"{s}_arc_transitive"] = trans
        out[f"{s}_arc_regular"] = trans and A.order == count
    out["half_arc_transitive"] = (out["vertex_transitive"]
                                  and out["edge_transitive"]
                                  and not out["arc_transitive"])
    return out


def geodesic_and_path_transitivity(g, A, validate=True):
    """2-geodesic-, 2-path-, and unordered-2-geodesic transitivity.

    The unordered flag is computed globally and cross-checked against the
    local criterion (stabilizer edge-transitive on the neighborhood
    complement); disagreement raises InvariantViolation."""
    if validate:
        _check_aut(g, A)
    out = {}
    geo = first_two_geodesic(g)
    ngeo = two_geodesic_count(g)
    out["two_geodesic_transitive"] = (geo is not None and
                                      transitive_on_class_tuple(A, geo, ngeo))
    arc2 = first_s_arc(g, 2)
    narc2 = arc_count(g, 2)
    if arc2 is None:
        out["two_path_transitive"] = False
        out["two_geodesic_path_transitive"] = False
        return out
    out["two_path_transitive"] = (
        A.order // unordered_tuple_stab_order(A, arc2) == narc2 // 2)
    glob = (geo is not None and
            A.order // unordered_tuple_stab_order(A, geo) == ngeo // 2)
    out["two_geodesic_path_transitive"] = glob

    # local criterion: vertex-transitive and A_u edge-transitive on [Γ(u)]^c
    if A.is_transitive() and geo is not None:
        u = 0
        comp = graphs.local_complement(g, u)
        stab = A.point_stabilizer(u)
        index = {v: i for i, v in enumerate(comp.labels)}
        blocks = [[v] for v in comp.labels]
        image, _ = stab.induced_action(blocks)
        local = (comp.m > 0 and
                 image.order // image.setwise_stabilizer(comp.edges()[0]).order
                 == comp.m)
        if local != glob:
            raise InvariantViolation(
                "unordered 2-geodesic transitivity: global orbit count "
                f"({glob}) disagrees with local criterion ({local})")
    return out


# ----------------------------------------------------------------------
# k-CSH / k-CH
# ----------------------------------------------------------------------

def csh_ch_status(g, A, k, validate=True):
    """(k-CSH, k-CH) for k ≤ 3."""
    if validate:
        _check_aut(g, A)
    if k not in (1, 2, 3):
        raise ClassifyError("k must be 1, 2 or 3")
    vt = A.is_transitive() if g.n else True
    if k == 1:
        return vt, vt
    e0 = g.edges()[0] if g.m else None
    et = g.m == 0 or set_orbit_size(A, e0) == g.m
    at = g.m == 0 or transitive_on_class_tuple(A, e0, 2 * g.m)
    if k == 2:
        return vt and et, vt and at
    # k = 3: connected induced subgraphs on <= 3 vertices are the vertex,
    # the edge, the induced path on 3 vertices, and the triangle.
    geo = first_two_geodesic(g)
    ngeo = two_geodesic_count(g)
    tri = first_triangle(g)
    ntri = count_triangles(g)
    path_sets = (geo is None or
                 A.order // set_orbit_size_denominator(A, geo) == ngeo // 2)
    tri_sets = (tri is None or set_orbit_size(A, tri) == ntri)
    csh = vt and et and path_sets and tri_sets
    if not csh:
        return False, False
    # CH: every isomorphism extends -> transitivity on ordered shapes
    ordered_paths = (geo is None or
                     transitive_on_class_tuple(A, geo, ngeo) and
                     A.element_mapping_tuple(geo, tuple(reversed(geo)))
                     is not None)
    ordered_tris = (tri is None or
                    transitive_on_class_tuple(A, tri, 6 * ntri))
    ch = at and ordered_paths and ordered_tris
    return csh, ch


def set_orbit_size_denominator(A, tup):
    return A.setwise_stabilizer(tup).order


# ----------------------------------------------------------------------
# local action
# ----------------------------------------------------------------------

def local_action(g, A, u, validate=True):
    """(induced group on Γ(u), kernel order, locally-3-transitive flag)."""
    if validate:
        _check_aut(g, A)
    nbrs = g.neighbors(u)
    stab = A.point_stabilizer(u)
    image, kernel = stab.induced_action([[v] for v in nbrs])
    d = len(nbrs)
    if d >= 3:
        three = (image.order // image.pointwise_stabilizer([0, 1, 2]).order
                 == d * (d - 1) * (d - 2))
    else:
        three = False
    return image, kernel.order, three


# ----------------------------------------------------------------------
# reference small groups for fingerprint tests
# ----------------------------------------------------------------------

_SMALL_MODELS = {}

_SMALL_SOURCES = {
    "S3": "group s3\ngens a b\nrel a^3\nrel b^2\nrel b*a*b = a^2\n",
    "C4": "group c4\ngens a\nrel a^4\n",
    "A4xC3": ("group a4xc3\ngens a b c\nrel a^2\nrel b^3\nrel (a*b)^3\n"
              "rel c^3\nrel [a,c] = 1\nrel [b,c] = 1\n"),
    "Frob20xC4": ("group f20xc4\ngens a b c\nrel a^5\nrel b^4\n"
                  "rel b^-1*a*b = a^2\nrel c^4\nrel [a,c] = 1\nrel [b,c] = 1\n"),
    "Frob20xC2": ("group f20xc2\ngens a b c\nrel a^5\nrel b^4\n"
                  "rel b^-1*a*b = a^2\nrel c^2\nrel [a,c] = 1\nrel [b,c] = 1\n"),
    "M16": "group m16\ngens a b\nrel a^8\nrel b^2\nrel b*a*b = a^5\n",
    "AGL1_8": ("group agl18\ngens a b c d\nrel a^2\nrel b^2\nrel c^2\n"
               "rel [a,b] = 1\nrel [a,c] = 1\nrel [b,c] = 1\nrel d^7\n"
               "rel d^-1*a*d = b\nrel d^-1*b*d = c\nrel d^-1*c*d = a*b\n"),
}


def small_model(name):
    """Regular permutation model of a named small group, cached."""
    if name not in _SMALL_MODELS:
        pres = parse_presentation(_SMALL_SOURCES[name])
        real, ct = regular_representation(pres)
        if real is None:
            raise ClassifyError(f"small model {name} failed to realize")
        _SMALL_MODELS[name] = real.group
    return _SMALL_MODELS[name]


def matches_model(group, name):
    return is_isomorphic_small(group, small_model(name))


# ----------------------------------------------------------------------
# stabilizer type tags
# ----------------------------------------------------------------------

def stabilizer_type_tags(sigma, A, validate=True):
    """{type-2^2, type-Q} tags from vertex and edge stabilizer isomorphism
    types.  Type 2^2: trivalent, vertex stabilizer S_3, edge stabilizer C_4.
    Type Q (reported neutrally as the stabilizer pair): pentavalent, vertex
    stabilizer Frob(20) x C_2, edge stabilizer M_16."""
    if validate:
        _check_aut(sigma, A)
    b = graphs.basics(sigma)
    tags = {"type-2^2": False, "type-Q(Frob20xC2,M16)": False}
    if not b["regular"] or sigma.m == 0:
        return tags
    stab_v = A.point_stabilizer(0)
    stab_e = A.setwise_stabilizer(sigma.edges()[0])
    if b["valency"] == 3 and stab_v.order == 6 and stab_e.order == 4:
        tags["type-2^2"] = (matches_model(stab_v, "S3")
                            and matches_model(stab_e, "C4"))
    if b["valency"] == 5 and stab_v.order == 40 and stab_e.order == 16:
        tags["type-Q(Frob20xC2,M16)"] = (matches_model(stab_v, "Frob20xC2")
                                         and matches_model(stab_e, "M16"))
    return tags


# ----------------------------------------------------------------------
# normal Cayley check
# ----------------------------------------------------------------------

def normal_cayley_check(g, R, A=None, cap=5000):
    """True iff the supplied regular subgroup R is normal in Aut(g)."""
    if not R.is_regular():
        raise ClassifyError("supplied subgroup is not regular on the vertices")
    _check_aut(g, R)
    if A is None:
        A = automorphism_group(g, seed_gens=list(R.generators), cap=cap)
    return A.normalizes(R)


# ----------------------------------------------------------------------
# Theorem-1.5-style case labels
# ----------------------------------------------------------------------

def clique_action(perm, cliques, index):
    """Permutation induced on the clique list by a vertex permutation."""
    images = [index[tuple(sorted(int(perm.images[v]) for v in cl))]
              for cl in cliques]
    return Permutation(images)


def induced_clique_group(A, cliques):
    index = {cl: i for i, cl in enumerate(cliques)}
    gens = [clique_action(p, cliques, index) for p in A.generators]
    return build_chain(gens, len(cliques))


def _is_prime_power(q):
    if q < 2:
        return None
    for p in range(2, q + 1):
        if p * p > q:
            return q  # q prime
        if q % p == 0:
            m = q
            while m % p == 0:
                m //= p
            return p if m == 1 else None
    return None


def _case_from_sigma(sigma, A_sigma, evidence):
    """Select the case label from Σ's valency, arc-transitivity, and
    stabilizer/local-action fingerprints; None if nothing matches."""
    b = graphs.basics(sigma)
    k = b["valency"]
    stab_v = A_sigma.point_stabilizer(0)
    stab_e = A_sigma.setwise_stabilizer(sigma.edges()[0])
    rep3 = first_s_arc(sigma, 3)
    n3 = arc_count(sigma, 3)
    three_at = rep3 is not None and transitive_on_class_tuple(A_sigma, rep3, n3)
    three_ar = three_at and A_sigma.order == n3
    image, kernel_order, loc3 = local_action(sigma, A_sigma, 0, validate=False)
    detail = {
        "sigma_valency": k,
        "sigma_vertices": sigma.n,
        "sigma_3_arc_transitive": three_at,
        "sigma_3_arc_regular": three_ar,
        "vertex_stabilizer_order": stab_v.order,
        "edge_stabilizer_order": stab_e.order,
        "local_action_order": image.order,
        "local_kernel_order": kernel_order,
        "locally_3_transitive": loc3,
        "evidence": evidence,
    }
    case = None
    if k == 4 and three_ar and stab_v.order == 36 \
            and matches_model(stab_v, "A4xC3"):
        case = 1
    elif k == 5 and three_ar and stab_v.order == 80 \
            and matches_model(stab_v, "Frob20xC4"):
        case = 2
    elif k == 8 and three_at and not three_ar and image.order in (56, 168) \
            and image.is_solvable():
        case = 3  # local action AGL(1,8)- or AΓL(1,8)-type: C_2^3⋊(C_7⋊C_t)
    elif k == 32 and three_at and not three_ar and image.order == 4960 \
            and image.is_solvable():
        case = 4  # local action AΓL(1,32)-type: C_2^5⋊(C_31⋊C_5)
    elif k == 5 and stab_v.order == 40 and stab_e.order == 16 \
            and matches_model(stab_v, "Frob20xC2") \
            and matches_model(stab_e, "M16"):
        case = 6
    elif k == 3 and stab_v.order == 6 and stab_e.order == 4 \
            and matches_model(stab_v, "S3") and matches_model(stab_e, "C4"):
        case = 7
    else:
        q = k - 1
        p = _is_prime_power(q)
        if (p is not None and q % 4 == 3 and three_at
                and image.order % (q * (q - 1) * (q + 1) // 2) == 0):
            two_t = (image.order // image.pointwise_stabilizer([0, 1]).order
                     == k * (k - 1))
            if two_t and not loc3:
                case = 5
    return case, detail


def classify_theorem_1_5(gamma, aut=None, structural=None, cap=5000,
                         clique_cap=2000):
    """Case label (1-7), "3-CH", or "not 3-CSH" for a locally-2K_n graph.

    Evidence modes: with full automorphism groups (aut given or computable
    under the cap) all claims are computed; with `structural` (a known
    subgroup of Aut(gamma), e.g. the normal Cayley group R(H)⋊Aut(H,S)) the
    label is derived from that subgroup's stabilizers and marked
    "lower-bound"."""
    loc, n = graphs.is_locally_2Kn(gamma)
    if not loc or n < 2:
        raise ClassifyError("input is not locally 2K_n with n >= 2")
    sigma = graphs.clique_graph(gamma, cap=clique_cap)
    cliques = sigma.labels

    if structural is not None:
        N_sigma = induced_clique_group(structural, cliques)
        case, detail = _case_from_sigma(sigma, N_sigma, "lower-bound")
        detail["note"] = ("stabilizers computed inside the supplied subgroup; "
                         "exact equality with the full group is theory-derived")
        return {"case": case, "detail": detail}

    if aut is None:
        aut = automorphism_group(gamma, cap=cap)
    csh, ch = csh_ch_status(gamma, aut, 3, validate=False)
    if not csh:
        return {"case": "not 3-CSH", "detail": {"evidence": "full"}}
    if ch:
        return {"case": "3-CH", "detail": {"evidence": "full"}}
    A_sigma = induced_clique_group(aut, cliques)
    case, detail = _case_from_sigma(sigma, A_sigma, "full")
    return {"case": case, "detail": detail}


# ----------------------------------------------------------------------
# consistency identities
# ----------------------------------------------------------------------

def consistency_identities(gamma, sigma, h_order, auths_order,
                           claims_3_arc_regular, claims_2_arc_regular=False):
    """Arithmetic cross-checks; failures are reported, not raised."""
    report = {"checks": [], "discrepancies": []}
    bg = graphs.basics(gamma)
    bs = graphs.basics(sigma)
    k = bs["valency"]
    q = k - 1 if k else None

    def check(name, lhs, rhs):
        ok = lhs == rhs
        report["checks"].append({"name": name, "lhs": lhs, "rhs": rhs, "ok": ok})
        if not ok:
            report["discrepancies"].append(name)

    if q is not None:
        check("triangle-count q(q-1)|V|/3",
              count_triangles(gamma), q * (q - 1) * gamma.n // 3)
        check("clique-graph size |V(Sigma)| = 2|H|/k", sigma.n, 2 * h_order // k)
    if claims_3_arc_regular and k:
        check("3-arc-regular |H||Aut(H,S)| = |V(Sigma)| k (k-1)^2",
              h_order * auths_order, sigma.n * k * (k - 1) ** 2)
    if claims_2_arc_regular and k:
        check("2-arc-regular |H||Aut(H,S)| = |V(Sigma)| k (k-1)",
              h_order * auths_order, sigma.n * k * (k - 1))
    report["ok"] = not report["discrepancies"]
    return report


# ----------------------------------------------------------------------
# full profile
# ----------------------------------------------------------------------

@dataclass
class SymmetryProfile:
    vertex_transitive: bool = False
    edge_transitive: bool = False
    arc_transitive: bool = False
    s_arc_transitive: dict = field(default_factory=dict)
    s_arc_regular: dict = field(default_factory=dict)
    two_geodesic_transitive: bool = False
    two_path_transitive: bool = False
    two_geodesic_path_transitive: bool = False
    half_arc_transitive: bool = False
    locally_2kn: bool = False
    locally_2kn_n: int | None = None
    locally_3_transitive: bool = False
    csh: dict = field(default_factory=dict)
    ch: dict = field(default_factory=dict)
    vertex_stabilizer_fingerprint: str = ""
    edge_stabilizer_fingerprint: str = ""
    arc_stabilizer_order: int = 0
    local_action_fingerprint: str = ""
    local_kernel_order: int = 0
    solvable_aut: bool = False
    aut_order: int = 0
    theorem_1_5_case: object = None
    evidence_mode: str = "full"
    theory_derived: list = field(default_factory=list)

    def to_json(self):
        return json.dumps(asdict(self), indent=2, default=str, sort_keys=True)

    def validate_implications(self):
        """Internal implications that must hold on any input."""
        for k in (1, 2, 3):
            if self.ch.get(k) and not self.csh.get(k):
                raise InvariantViolation(f"{k}-CH without {k}-CSH")
        if self.csh.get(1) != self.vertex_transitive:
            raise InvariantViolation("1-CSH must equal vertex-transitivity")
        expected_2ch = self.vertex_transitive and self.arc_transitive
        if self.ch.get(2) != expected_2ch:
            raise InvariantViolation("2-CH must equal regular arc-transitive")
        if self.half_arc_transitive != (
                self.csh.get(2) and not self.ch.get(2)):
            raise InvariantViolation("half-arc-transitive mismatch with 2-CSH/2-CH")
        for s in (2, 3):
            if self.s_arc_regular.get(s) and not self.s_arc_transitive.get(s):
                raise InvariantViolation("s-arc-regular without transitivity")


def symmetry_profile(g, A=None, cap=5000, classify=True):
    """Full SymmetryProfile of g under A (or its computed Aut)."""
    if not g.is_connected():
        raise ClassifyError("profile requires a connected graph")
    if A is None:
        A = automorphism_group(g, cap=cap)
    else:
        _check_aut(g, A)
    p = SymmetryProfile()
    t = transitivity_profile(g, A, validate=False)
    p.vertex_transitive = t["vertex_transitive"]
    p.edge_transitive = t["edge_transitive"]
    p.arc_transitive = t["arc_transitive"]
    p.s_arc_transitive = {s: t[f"{s}_arc_transitive"] for s in (1, 2, 3)}
    p.s_arc_regular = {s: t[f"{s}_arc_regular"] for s in (1, 2, 3)}
    p.half_arc_transitive = t["half_arc_transitive"]
    gp = geodesic_and_path_transitivity(g, A, validate=False)
    p.two_geodesic_transitive = gp["two_geodesic_transitive"]
    p.two_path_transitive = gp["two_path_transitive"]
    p.two_geodesic_path_transitive = gp["two_geodesic_path_transitive"]
    p.locally_2kn, p.locally_2kn_n = graphs.is_locally_2Kn(g)
    for k in (1, 2, 3):
        p.csh[k], p.ch[k] = csh_ch_status(g, A, k, validate=False)
    stab_v = A.point_stabilizer(0)
    p.vertex_stabilizer_fingerprint = str(stab_v.fingerprint())
    if g.m:
        e0 = g.edges()[0]
        p.edge_stabilizer_fingerprint = str(
            A.setwise_stabilizer(e0).fingerprint())
        p.arc_stabilizer_order = A.pointwise_stabilizer(list(e0)).order
    image, kernel_order, loc3 = local_action(g, A, 0, validate=False)
    p.local_action_fingerprint = str(image.fingerprint())
    p.local_kernel_order = kernel_order
    p.locally_3_transitive = loc3
    p.solvable_aut = A.is_solvable()
    p.aut_order = A.order
    if classify and p.locally_2kn and (p.locally_2kn_n or 0) >= 2:
        try:
            p.theorem_1_5_case = classify_theorem_1_5(g, aut=A, cap=cap)["case"]
        except Exception as exc:  # caps on huge inputs
            p.theorem_1_5_case = f"unavailable: {exc}"
    p.validate_implications()
    return p
