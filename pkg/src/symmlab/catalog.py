"""Named catalog of Cayley-graph constructions and their verification pipeline.

Each entry packages a finite presentation (stored in ``data/``), the two
designated generating subgroups A and B with S = (A ∪ B) − {1}, and an
expected-facts table loaded from a JSON sidecar.  The pipeline realizes the
group, builds Γ = Cay(H, S) and its clique graph Σ, and verifies the
structural claims stage by stage.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import classify, fpaut, graphs
from .autgrp import are_isomorphic
from .coset import EnumerationOverflow, regular_representation
from .perms import (Permutation, PermGroup, build_chain, is_isomorphic_small,
                    regular_group, transitive_extension)
from .words import parse_presentation

_DATA_DIR = Path(__file__).parent / "data"

ENTRY_NAMES = ("example-6.3", "example-6.4", "example-6.5", "example-6.6",
               "example-6.7", "construction-I", "construction-II")


class CatalogError(ValueError):
    pass


@dataclass
class CatalogEntry:
    name: str
    presentation: object
    a_gens: list                  # generator names spanning A
    b_gens: list                  # generator names spanning B
    z_gens: list                  # center basis names (bilinear strategy only)
    aut_strategy: str             # "brute" | "bilinear"
    tier: str                     # best evidence tier: "full" | "structural"
    p: int
    f: int
    expected: dict                # fact name -> value
    provenance: dict              # fact name -> provenance string
    n: int = 0                    # parametric index (construction-II)
    realization_policy: str = "standard"   # or "best-effort"

    def gen_indices(self, names):
        return [self.presentation.gen_index(g) for g in names]


def construction_ii_source(n):
    """Presentation text for the order-3^(4n+1) member of the parametric
    two-generator 3-group family with connection set {a, a², b, b²}."""
    if n < 2:
        raise CatalogError("construction-II requires n >= 2")
    q = 3 ** n
    m = 3 ** (n - 1)
    lines = [
        f"# Order-3^{4 * n + 1} member (n = {n}) of the parametric family of"
        " two-generator",
        "# 3-groups with tetravalent connection set {a, a^2, b, b^2}.",
        "group construction-II",
        "gens a b c d e f g h",
        "rel a^3", "rel b^3",
        f"rel c^{q}", f"rel d^{q}", f"rel e^{q}", f"rel f^{q}",
        "rel g^3", "rel h^3",
        "rel c = [a,b]",
        "rel d = [b,a^2]",
        "rel e = [a^2,b^2]",
        "rel f = [b^2,a]",
        f"rel [c,d] = c^-{m} * d^{m}",
        f"rel [c,f] = c^-{m} * f^{m}",
        f"rel [d,e] = d^-{m} * e^{m}",
        f"rel [e,f] = e^-{m} * f^{m}",
        f"rel [d^{m},c] = 1", f"rel [d^{m},e] = 1", f"rel [d^{m},f] = 1",
        f"rel [e^{m},c] = 1", f"rel [e^{m},d] = 1", f"rel [e^{m},f] = 1",
        f"rel f^{m} = c^{m} * d^-{m} * e^{m}",
        f"rel [c^{m},d] = 1", f"rel [c^{m},e] = 1", f"rel [c^{m},f] = 1",
        "rel g = [c,e]",
        "rel h = [d,f]",
        "rel [g,a] = 1", "rel [g,b] = 1",
        "rel [h,a] = 1", "rel [h,b] = 1",
        f"rel h = c^{m} * d^{m} * e^{m}",
        f"rel g^-1 = d^{m} * e^{m} * f^{m}",
    ]
    return "\n".join(lines) + "\n"


def catalog(name, n=2):
    """Load a catalog entry by name; construction-II takes the parameter n."""
    if name not in ENTRY_NAMES:
        raise CatalogError(f"unknown catalog entry {name!r}")
    meta = json.loads((_DATA_DIR / f"{name}.json").read_text())
    if name == "construction-II":
        source = construction_ii_source(n)
        if n == 2:
            stored = (_DATA_DIR / "construction-II.pres").read_text()
            if parse_presentation(stored).display() != \
                    parse_presentation(source).display():
                raise CatalogError("stored construction-II presentation "
                                   "disagrees with the parametric source")
        expected, prov = _construction_ii_expected(meta, n)
    else:
        source = (_DATA_DIR / f"{name}.pres").read_text()
        expected = {k: v["value"] for k, v in meta["expected"].items()}
        prov = {k: v["provenance"] for k, v in meta["expected"].items()}
    pres = parse_presentation(source)
    return CatalogEntry(
        name=name,
        presentation=pres,
        a_gens=meta["a_gens"],
        b_gens=meta["b_gens"],
        z_gens=meta.get("z_gens", []),
        aut_strategy=meta["aut_strategy"],
        tier=meta["tier"],
        p=meta["p"],
        f=meta["f"],
        expected=expected,
        provenance=prov,
        n=n if name == "construction-II" else 0,
        realization_policy=meta.get("realization", "standard"),
    )


def _construction_ii_expected(meta, n):
    base = {k: v["value"] for k, v in meta["expected_n2"].items()}
    prov = {k: v["provenance"] for k, v in meta["expected_n2"].items()}
    if n != 2:
        base = dict(base)
        base["group_order"] = 3 ** (4 * n + 1)
        base["sigma_vertices"] = 2 * 3 ** (4 * n)
        base["aut_gamma_order"] = base["group_order"] * base["auths_order"]
    return base, prov


# ----------------------------------------------------------------------
# realization
# ----------------------------------------------------------------------

# Extra relators bounding the nilpotency class of construction-I at 4.
# If the augmented enumeration completes at a 2-power order equal to the
# stated order, the result is the maximal finite 2-quotient itself: the
# augmented group is then a finite 2-group quotient of the presented group,
# hence a quotient of the maximal one, and equal orders force isomorphism.
CONSTRUCTION_I_CLASS_RELATORS = tuple(
    f"[[{t},{x}],{s}] = 1"
    for t in "cdgh" for x in "abef" for s in "cdgh"
) + tuple(
    f"[[[{t},{x}],{u}],{y}] = 1"
    for t in "cdgh" for x in "abef" for u in "abef" for y in "abef"
)


_CONSTRUCTION_I_TABLE = _DATA_DIR / "construction-I-table.npz"


def _cached_construction_i(entry):
    """Load and verify the shipped construction-I coset table.

    The artifact is regenerated by scripts/generate_construction_i_table.py
    (a deterministic Felsch enumeration that takes close to an hour); here it
    is only trusted after passing full verification: column pairs are inverse
    bijections, every relator traces to the identity from every coset, the
    action is transitive, and a commuting transitive left action exists
    (which forces the right action to be regular).  The verified object is
    therefore a regular representation of a quotient of the presented group
    whose order equals the full group order."""
    if not _CONSTRUCTION_I_TABLE.exists():
        return None
    arr = np.load(_CONSTRUCTION_I_TABLE)["table"].astype(np.int64)
    pres = entry.presentation
    n, width = arr.shape
    if width != 2 * pres.ngens or n != entry.expected["group_order"]:
        raise CatalogError("construction-I cached table has the wrong shape")
    cols = arr.T.copy()
    idx = np.arange(n)
    for x in range(width):
        col = cols[x]
        if col.min() < 0 or col.max() >= n \
                or not np.array_equal(cols[x ^ 1][col], idx):
            raise CatalogError("cached table is not a consistent action")
    for rel in pres.relators:
        d = idx
        for let in rel.letters():
            d = cols[let][d]
        if not np.array_equal(d, idx):
            raise CatalogError("cached table violates a relator")
    from .coset import CosetTable, Realization
    real = Realization(pres, CosetTable(pres.ngens, "complete", n, arr))
    if any(w is None for w in real.words):
        raise CatalogError("cached table is not transitive")
    lams = []
    for i in range(pres.ngens):
        lam = real.left_mult_perm(real.generator_element(i))
        if np.bincount(lam, minlength=n).max() != 1:
            raise CatalogError("cached left action is not a bijection")
        for x in range(width):
            if not np.array_equal(lam[cols[x]], cols[x][lam]):
                raise CatalogError(
                    "left action does not centralize the right action")
        lams.append(lam)
        lams.append(np.argsort(lam))
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = [0]
    while frontier:
        new = []
        for c in frontier:
            for lam in lams:
                d = int(lam[c])
                if not seen[d]:
                    seen[d] = True
                    new.append(d)
        frontier = new
    if not seen.all():
        raise CatalogError("commuting left action is not transitive")
    return real


def realize_entry(entry, max_cosets=4_000_000, strategy="hlt",
                  allow_augmented=False, use_cache=True):
    """Regular representation of the entry's group.

    Returns (realization, note).  Under the best-effort policy an overflow
    yields (None, reason); with allow_augmented a class-bounded augmentation
    is then tried and certified by exact order match.  For construction-I a
    shipped, fully re-verified coset table is used unless use_cache is
    False."""
    if entry.name == "construction-I" and use_cache:
        real = _cached_construction_i(entry)
        if real is not None:
            return real, "cached-table"
    real, _ = regular_representation(entry.presentation,
                                     max_cosets=max_cosets, strategy=strategy)
    if real is not None:
        if real.n != entry.expected["group_order"]:
            raise CatalogError(
                f"{entry.name}: realized order {real.n} != expected "
                f"{entry.expected['group_order']}")
        return real, "literal"
    if entry.realization_policy != "best-effort":
        raise EnumerationOverflow(
            f"{entry.name}: enumeration exceeded {max_cosets} cosets")
    if allow_augmented and entry.name == "construction-I":
        text = entry.presentation.display() + "".join(
            f"rel {t}\n" for t in CONSTRUCTION_I_CLASS_RELATORS)
        apres = parse_presentation(text)
        areal, _ = regular_representation(apres, max_cosets=max_cosets,
                                          strategy=strategy)
        if areal is not None and areal.n == entry.expected["group_order"] \
                and areal.n & (areal.n - 1) == 0:
            return areal, "augmented-class-4"
    return None, f"enumeration exceeded {max_cosets} cosets"


def connection_set(entry, real):
    """(A, B, S) as element-index sets of the realization."""
    pres = real.presentation
    a_elts = [real.generator_element(pres.gen_index(g)) for g in entry.a_gens]
    b_elts = [real.generator_element(pres.gen_index(g)) for g in entry.b_gens]
    A = real.closure(a_elts)
    B = real.closure(b_elts)
    S = sorted((A | B) - {0})
    return A, B, S


def aut_fixing_set_search(entry, real):
    """Aut(H, S) by the entry's strategy; every candidate is verified."""
    pres = real.presentation
    a_idx = [pres.gen_index(g) for g in entry.a_gens]
    b_idx = [pres.gen_index(g) for g in entry.b_gens]
    if entry.aut_strategy == "bilinear":
        z_idx = [pres.gen_index(g) for g in entry.z_gens]
        return fpaut.bilinear_search(real, a_idx, b_idx, z_idx)
    return fpaut.brute_force_search(real, a_idx, b_idx)


# ----------------------------------------------------------------------
# construction-I presentation-level Aut(H,S) check
# ----------------------------------------------------------------------

CONSTRUCTION_I_DEFINITIONS = {"c": "[a,e]", "d": "[a,f]",
                              "g": "[b,e]", "h": "[b,f]"}


def construction_i_candidate_check(entry=None, max_cosets=4_000_000):
    """The 72 basis-map candidates checked against the presentation alone.

    Verifies each candidate in the shipped (fully re-verified) regular
    model of the group; the class-4-bounded augmentation is an alternative
    certified route but is far slower to enumerate."""
    if entry is None:
        entry = catalog("construction-I")
    real, note = realize_entry(entry, max_cosets=max_cosets)
    if real is None:
        raise CatalogError(f"construction-I: {note}")
    res = fpaut.brute_force_search(
        real,
        [real.presentation.gen_index(g) for g in entry.a_gens],
        [real.presentation.gen_index(g) for g in entry.b_gens])
    return res, note


# ----------------------------------------------------------------------
# pipeline
# ----------------------------------------------------------------------

def _stage(report, name, ok, **measured):
    entry = {"stage": name, "ok": bool(ok)}
    entry.update(measured)
    report["stages"].append(entry)
    if not ok:
        report["discrepancies"].append(name)
    return ok


def right_regular_group(real):
    """R(H) acting on the realization's elements by right multiplication."""
    gens = [Permutation([int(v) for v in real.right_mult_perm(
        real.generator_element(i))]) for i in range(real.presentation.ngens)]
    return regular_group(gens, real.n)


def _locally_2kn_at(gamma, v):
    local = gamma.induced_subgraph(sorted(gamma.neighbors(v)))
    comps = _components_of(local)
    if len(comps) != 2:
        return False, 0
    sizes = {len(c) for c in comps}
    if len(sizes) != 1:
        return False, 0
    k = sizes.pop()
    for comp in comps:
        for u, w in itertools.combinations(sorted(comp), 2):
            if not local.has_edge(u, w):
                return False, 0
    return True, k


def _components_of(g):
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp, frontier = [s], [s]
        seen[s] = True
        while frontier:
            new = []
            for u in frontier:
                for w in g.neighbors(u):
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        new.append(w)
            frontier = new
        out.append(comp)
    return out


def lemma_5_6_pipeline(entry, tier="fast", max_cosets=4_000_000,
                       aut_cap=5000, structural_cap=4000, strategy="hlt"):
    """Realize H, build Γ = Cay(H,S) and Σ = C(Γ), and verify the claimed
    structure stage by stage.

    Tiers: "fast" covers realization, subgroup facts, both graphs, Aut(H,S)
    and the arithmetic identities; "structural" adds the case label derived
    from the normal subgroup R(H)⋊Aut(H,S); "full" additionally computes
    the full automorphism group of Γ."""
    if tier not in ("fast", "structural", "full"):
        raise CatalogError(f"unknown tier {tier!r}")
    report = {"entry": entry.name, "tier": tier, "stages": [],
              "discrepancies": [], "notes": []}

    real, note = realize_entry(entry, max_cosets=max_cosets,
                               strategy=strategy)
    if real is None:
        report["notes"].append(f"realization skipped: {note}; "
                               "tier downgraded to presentation-level checks")
        _presentation_level_stages(entry, report, max_cosets)
        report["ok"] = not report["discrepancies"]
        return report
    q = entry.p ** entry.f
    _stage(report, "realize", real.n == entry.expected["group_order"],
           order=real.n, expected=entry.expected["group_order"], note=note)

    A, B, S = connection_set(entry, real)
    elem_ab = all(real.element_order(x) == entry.p
                  for x in (A | B) - {0})
    _stage(report, "subgroups",
           len(A) == q and len(B) == q and elem_ab
           and A & B == {0} and len(real.closure(A | B)) == real.n,
           size_a=len(A), size_b=len(B), intersection=len(A & B) - 1,
           elementary_abelian=elem_ab)

    gamma = graphs.cayley_graph(real, S)
    loc, k = _locally_2kn_at(gamma, 0)
    _stage(report, "gamma",
           gamma.is_connected() and graphs.basics(gamma)["valency"] == 2 * (q - 1)
           and loc and k == q - 1,
           vertices=gamma.n, valency=2 * (q - 1), locally_2kn=k,
           note="local structure checked at the identity; the graph is "
                "vertex-transitive under right translations")

    sigma = graphs.clique_graph(gamma, cap=2 * real.n // q + 16)
    bs = graphs.basics(sigma)
    R = right_regular_group(real)
    cliques = sigma.labels
    index = {cl: i for i, cl in enumerate(cliques)}
    R_sigma = PermGroup([classify.clique_action(p, cliques, index)
                         for p in R.generators], sigma.n)
    edge0 = _an_edge_pair(sigma)
    edge_regular = (sigma.m == real.n
                    and len(R_sigma.orbit_of_set(edge0)) == sigma.m)
    _stage(report, "sigma",
           sigma.n == entry.expected["sigma_vertices"]
           and bs["valency"] == q and bs["bipartite"]
           and edge_regular and len(R_sigma.orbits()) == 2,
           vertices=sigma.n, valency=bs["valency"],
           bipartite=bs["bipartite"], edge_regular=edge_regular,
           vertex_orbits=len(R_sigma.orbits()))

    if gamma.n <= 600:
        dual = graphs.line_graph(sigma)
        _stage(report, "line-clique-duality", _isomorphic(dual, gamma),
               checked=True)

    auths = aut_fixing_set_search(entry, real)
    oka = auths.order == entry.expected["auths_order"]
    fp_checks = _fingerprint_checks(entry, auths)
    _stage(report, "auths", oka and all(v for v in fp_checks.values()),
           order=auths.order, expected=entry.expected["auths_order"],
           **fp_checks)

    claims_3ar = entry.expected.get("sigma_3_arc_regular", False)
    ids = classify.consistency_identities(
        gamma, sigma, real.n, auths.order, claims_3ar,
        claims_2_arc_regular=entry.expected.get("case") == 7)
    _stage(report, "identities", ids["ok"], checks=ids["checks"])

    if tier in ("structural", "full") and gamma.n > structural_cap:
        report["notes"].append(
            f"structural classification skipped: |V(Γ)| = {gamma.n} exceeds "
            f"the stabilizer-chain cap {structural_cap}")
        tier = "fast"
    if tier in ("structural", "full"):
        stab = build_chain([Permutation([int(v) for v in lift])
                            for lift in auths.lifts], real.n)
        N = transitive_extension(R, stab)
        res = classify.classify_theorem_1_5(gamma, structural=N,
                                            clique_cap=2 * real.n // q + 16)
        _stage(report, "classify-structural",
               res["case"] == entry.expected["case"],
               case=res["case"], expected=entry.expected["case"],
               evidence=res["detail"].get("evidence"))
        report["notes"].append(res["detail"].get("note", ""))

    if tier == "full":
        seed = list(R.generators) + [Permutation([int(v) for v in lift])
                                     for lift in auths.lifts]
        aut = classify.automorphism_group(gamma, seed_gens=seed, cap=aut_cap)
        _stage(report, "aut-gamma",
               aut.order == entry.expected["aut_gamma_order"],
               order=aut.order, expected=entry.expected["aut_gamma_order"])
        _stage(report, "normal-cayley",
               classify.normal_cayley_check(gamma, R, A=aut), normal=True)
        res = classify.classify_theorem_1_5(gamma, aut=aut,
                                            clique_cap=2 * real.n // q + 16)
        _stage(report, "classify-full",
               res["case"] == entry.expected["case"],
               case=res["case"], expected=entry.expected["case"])

    report["ok"] = not report["discrepancies"]
    return report


def _an_edge_pair(sigma):
    for u in range(sigma.n):
        nb = sigma.neighbors(u)
        if nb:
            return (u, min(nb))
    raise CatalogError("clique graph has no edges")


def _isomorphic(g, h):
    return are_isomorphic(g, h)


def _fingerprint_checks(entry, auths):
    group = auths.s_action
    out = {}
    if entry.name == "example-6.7":
        out["m16_fingerprint"] = classify.matches_model(group, "M16")
    if entry.name == "construction-II":
        out["cyclic_c4"] = is_isomorphic_small(group,
                                               classify.small_model("C4"))
    return out


def _presentation_level_stages(entry, report, max_cosets):
    """Best-effort path for construction-I: candidate-check Aut(H,S) and
    arithmetic identities against the stated order."""
    if entry.name != "construction-I":
        return
    try:
        res, note = construction_i_candidate_check(entry, max_cosets)
        _stage(report, "auths-candidates",
               res.order == entry.expected["auths_order"],
               order=res.order, expected=entry.expected["auths_order"],
               realization=note)
    except CatalogError as exc:
        _stage(report, "auths-candidates", False, error=str(exc))
    h = entry.expected["group_order"]
    k = entry.expected["sigma_valency"]
    v = entry.expected["sigma_vertices"]
    _stage(report, "identities-stated",
           h * entry.expected["auths_order"] == v * k * (k - 1) ** 2
           and v == 2 * h // k,
           product=h * entry.expected["auths_order"],
           three_arcs=v * k * (k - 1) ** 2)


# ----------------------------------------------------------------------
# construction-II claim checks
# ----------------------------------------------------------------------

def construction_ii_claims(n=2, real=None, max_cosets=4_000_000):
    """The two lemma-level claims about the parametric family: a ↦ b,
    b ↦ a² extends to an automorphism, a ↦ b, b ↦ a does not (a failing
    relator is named), and Aut(R,S) is cyclic of order 4."""
    entry = catalog("construction-II", n=n)
    if real is None:
        real, _ = realize_entry(entry, max_cosets=max_cosets)
    pres = real.presentation
    ia, ib = pres.gen_index("a"), pres.gen_index("b")
    ea, eb = real.generator_element(ia), real.generator_element(ib)
    report = {"n": n, "order": real.n}

    basis = [ia, ib]
    bwords, discovery = fpaut.basis_words(real, basis)

    def try_map(img_a, img_b):
        gen_images = fpaut.complete_images(real, basis, (img_a, img_b), bwords)
        if not fpaut.images_satisfy_relators(real, gen_images):
            failing = _first_failing_relator(real, gen_images)
            return False, failing
        phi = fpaut.endomorphism_array(real, basis, (img_a, img_b), discovery)
        return bool(np.unique(phi).size == real.n), None

    ok1, _ = try_map(eb, real.mult(ea, ea))
    report["claim1_automorphism"] = ok1

    ok2, failing = try_map(eb, ea)
    report["claim2_rejected"] = not ok2
    report["claim2_failing_relator"] = failing

    ok3, _ = try_map(ea, eb)
    report["identity_map"] = ok3

    auths = aut_fixing_set_search(entry, real)
    report["auths_order"] = auths.order
    report["auths_cyclic_c4"] = is_isomorphic_small(
        auths.s_action, classify.small_model("C4"))
    report["ok"] = (ok1 and not ok2 and failing is not None and ok3
                    and auths.order == 4 and report["auths_cyclic_c4"])
    return report


def _first_failing_relator(real, gen_images):
    for rel in real.presentation.relators:
        x = 0
        for g, e in rel.syllables:
            elt = gen_images[g]
            if e < 0:
                elt = real.inv(elt)
                e = -e
            for _ in range(e):
                x = real.mult(x, elt)
        if x != 0:
            return rel.display(real.presentation.generator_names)
    return None


# ----------------------------------------------------------------------
# abelian edge-regular groups force complete bipartite graphs
# ----------------------------------------------------------------------

def lemma_5_2_check(g, G):
    """Abelian + edge-regular on a connected graph of valency > 2 forces
    the graph to be complete bipartite; verified by canonical form.

    Returns "true", "inapplicable", or "violation"."""
    if not g.is_connected():
        return "inapplicable"
    bs = graphs.basics(g)
    if not bs["regular"] or bs["valency"] <= 2:
        return "inapplicable"
    if not G.is_abelian():
        return "inapplicable"
    if not classify.transitive_on_class_tuple(G, _an_edge_tuple(g), g.m) \
            or G.order != g.m:
        return "inapplicable"
    k = bs["valency"]
    if g.n != 2 * k:
        return "violation"
    ref = graphs.complete_bipartite(k, k)
    return "true" if are_isomorphic(g, ref) else "violation"


def _an_edge_tuple(g):
    u, v = _an_edge_pair(g)
    return (u, v)


# ----------------------------------------------------------------------
# subgroups of Aut(K_{q,q}) built from AGL(1, q) and a bipart swap
# ----------------------------------------------------------------------

def _field_powers(p, f):
    """Powers 1, x, x^2, ... of a primitive element x of GF(p^f).

    The field is modelled as GF(p)[x]/(m) for the lexicographically first
    monic polynomial m of degree f making x primitive; elements are coded
    as integers sum(c_i p^i) over coefficient vectors.  Returns the list
    of the q - 1 distinct powers (as codes) together with the modulus
    coefficients."""
    q = p ** f
    for mcode in range(p ** f):
        modulus = [(mcode // p ** i) % p for i in range(f)]  # m = x^f + ...
        pows = []
        cur = [1] + [0] * (f - 1)
        seen = set()
        while True:
            code = sum(c * p ** i for i, c in enumerate(cur))
            if code in seen:
                break
            seen.add(code)
            pows.append(code)
            # multiply by x: shift, reduce by x^f = -modulus
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c - top * m) % p for c, m in zip(cur, modulus)]
        if len(pows) == q - 1 and pows[0] == 1:
            return pows, modulus
    raise CatalogError(f"no primitive model found for GF({p}^{f})")


def prop_1_4_build(p, f, r):
    """The subgroup B of Aut(K_{q,q}) (q = p^f) generated by the field
    translations, a^{r^l}, a^{(q-1)/r^l}(b^{f/r})^g and the bipart swap g,
    where a is multiplication by a primitive element, b is the Frobenius
    x -> x^p and r^l is the exact power of r dividing q - 1.

    Returns (graph, B, report).  The report measures 2-/3-arc-transitivity,
    |B_u^{[1]}| and the number of orbits of B_u^{[1]} on U - {u}, and flags
    any divergence from the expected order (q-1)/r and orbit count r."""
    import math
    q = p ** f
    d = math.gcd(q - 1, f)
    if d == 1:
        raise CatalogError(
            f"no valid r: gcd({q - 1}, {f}) = 1, so q - 1 and f are coprime")
    if not _is_prime(r):
        raise CatalogError(f"r = {r} is not prime")
    if d % r != 0:
        raise CatalogError(
            f"r = {r} does not divide gcd({q - 1}, {f}) = {d}")

    pows, modulus = _field_powers(p, f)
    log = {code: i for i, code in enumerate(pows)}
    n = 2 * q

    def w_perm(fn):
        """Permutation fixing U = [0, q) pointwise, acting on W = [q, 2q)
        through the field-element map fn (codes to codes)."""
        images = list(range(q)) + [q + fn(c) for c in range(q)]
        return Permutation(images)

    a = w_perm(lambda c: 0 if c == 0 else pows[(log[c] + 1) % (q - 1)])
    b = w_perm(lambda c: 0 if c == 0 else pows[(log[c] * p) % (q - 1)])

    def add(c1, c2):
        return sum(((c1 // p ** i + c2 // p ** i) % p) * p ** i
                   for i in range(f))

    translations = [w_perm(lambda c, t=p ** j: add(c, t)) for j in range(f)]
    g = Permutation([(v + q) % n for v in range(n)])

    ell = 0
    while (q - 1) % r ** (ell + 1) == 0:
        ell += 1
    gen1 = a ** (r ** ell)
    gen2 = (a ** ((q - 1) // r ** ell)) * (g * (b ** (f // r)) * g)
    B = build_chain(translations + [gen1, gen2, g], n)

    graph = graphs.complete_bipartite(q, q)
    for x in B.generators:
        for (s, t) in graph.edges():
            if not graph.has_edge(int(x.images[s]), int(x.images[t])):
                raise CatalogError("generator is not a graph automorphism")

    report = {"p": p, "f": f, "r": r, "ell": ell, "q": q,
              "order": B.order}
    prof = classify.transitivity_profile(graph, B, validate=False)
    report["two_arc_transitive"] = prof["2_arc_transitive"]
    report["three_arc_transitive"] = prof["3_arc_transitive"]

    u = 0  # a vertex of U; its co-neighbors under the 2-arc u-w-v are U-{u}
    kernel = B.pointwise_stabilizer([u] + list(range(q, n)))
    report["b_u1_order"] = kernel.order
    u_rest = set(range(1, q))
    orbit_count = sum(1 for orb in kernel.orbits() if set(orb) <= u_rest)
    report["b_u1_orbits_on_u"] = orbit_count
    report["expected_b_u1_order"] = (q - 1) // r
    report["expected_orbits"] = r
    report["divergence"] = (kernel.order != (q - 1) // r
                            or orbit_count != r)
    return graph, B, report


def _is_prime(r):
    return r >= 2 and all(r % t for t in range(2, int(r ** 0.5) + 1))
