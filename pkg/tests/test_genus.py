from itertools import combinations, product

import pytest

from torusmaps.constructions import LatticeBasis, find_edge_swap, graph_edge_swap, lattice_quotient
from torusmaps.genus import (
    BUDGET,
    EMBEDDING,
    EXHAUSTED,
    NON_TOROIDAL,
    TOROIDAL,
    UNKNOWN,
    certify,
    certify_non_toroidal,
    min_genus_search,
)
from torusmaps.graphs import girth, graph_from_edges
from torusmaps.surface_map import classify_surface, skeleton_and_girth


def complete(n):
    return graph_from_edges(f"K{n}", combinations(range(n), 2))


def bipartite_complete(a, b):
    return graph_from_edges(f"K{a},{b}", [(i, a + j) for i, j in product(range(a), range(b))])


def case_a_graph():
    g = graph_from_edges("K8-M", [(u, v) for u, v in combinations(range(8), 2) if v != u + 4])
    return graph_edge_swap(g, 0, 1, 4)


def grid_skeleton():
    return skeleton_and_girth(lattice_quotient(LatticeBasis.of("gaussian", (4, 0), (0, 4)), "quadrangulation"))[0]


def honeycomb_skeleton():
    return skeleton_and_girth(lattice_quotient(LatticeBasis.of("eisenstein", (6, 0), (3, 6)), "hexangulation"))[0]


def case_b_graph():
    g = grid_skeleton()
    return graph_edge_swap(g, *find_edge_swap(g, 4))


def case_c_graph():
    g = honeycomb_skeleton()
    return graph_edge_swap(g, *find_edge_swap(g, 6, keep_bipartite=True))


@pytest.mark.parametrize("make,case", [(case_a_graph, "a"), (case_b_graph, "b"), (case_c_graph, "c")])
def test_certificate_cases(make, case):
    g = make()
    cert = certify_non_toroidal(g)
    assert cert.verdict == NON_TOROIDAL and cert.case == case
    assert cert.kbar == {"a": 3, "b": 4, "c": 6}[case]
    assert cert.girth >= cert.kbar
    res = min_genus_search(g, 1, budget_seconds=60)
    assert res.status == EXHAUSTED


def test_case_a_graph_profile():
    g = case_a_graph()
    assert sorted(g.degrees) == [5] + [6] * 6 + [7] and girth(g) == 3 and len(g.edges) == 3 * g.n


def test_k5_is_inconclusive_then_toroidal():
    cert = certify_non_toroidal(complete(5))
    assert cert.verdict == UNKNOWN and cert.case is None
    res = min_genus_search(complete(5), 1)
    assert res.status == EMBEDDING and res.genus == 1
    s = classify_surface(res.witness)
    assert s.chi == 0 and s.orientable


def test_certify_with_search_attaches_witness():
    cert = certify(complete(6), search=True)
    assert cert.verdict == TOROIDAL and cert.search_status == EMBEDDING
    assert classify_surface(cert.witness).chi == 0


def test_k8_exhausted_without_search():
    res = min_genus_search(complete(8), 1)
    assert res.status == EXHAUSTED and res.nodes == 0 and res.target_faces == 20


def test_planar_graph_found_at_genus_zero():
    res = min_genus_search(complete(4), 0)
    assert res.status == EMBEDDING and res.genus == 0
    assert min_genus_search(complete(5), 0).status == EXHAUSTED
    assert min_genus_search(bipartite_complete(3, 3), 0).status == EXHAUSTED


def test_exact_mode_rejects_planar_embeddings():
    res = min_genus_search(complete(4), 1, exact=True)
    assert res.status == EMBEDDING and res.genus == 1


def test_budget_exceeded_is_a_result():
    res = min_genus_search(complete(7), 1, max_nodes=3)
    assert res.status == BUDGET and res.witness is None


@pytest.mark.parametrize("g", [complete(5), complete(6), complete(7), bipartite_complete(3, 3),
                               bipartite_complete(4, 4), grid_skeleton(), honeycomb_skeleton()],
                         ids=lambda g: g.name)
def test_certificates_never_contradict_witnesses(g):
    res = min_genus_search(g, 1, budget_seconds=60)
    assert res.status == EMBEDDING
    s = classify_surface(res.witness)
    assert s.orientable and s.genus <= 1 and s.E == len(g.edges)
    assert certify_non_toroidal(g).verdict != NON_TOROIDAL


def test_witness_uses_the_graph_edges():
    g = complete(5)
    w = min_genus_search(g, 1).witness
    sk = skeleton_and_girth(w)[0]
    # the witness darts 2i, 2i+1 are the ends of graph edge i
    assert sorted(sk.degrees) == sorted(g.degrees)
    assert sorted(tuple(sorted(e)) for e in sk.edges) == sorted(tuple(sorted(e)) for e in g.edges)


def test_non_bipartite_girth_six_profile_is_not_case_c():
    from torusmaps.graphs import two_color

    # a larger honeycomb quotient so that an even path of length 6 exists
    g = skeleton_and_girth(lattice_quotient(LatticeBasis.of("eisenstein", (9, 0), (0, 9)), "hexangulation"))[0]
    side = two_color(g.n, [(u, v, e) for e, (u, v) in enumerate(g.edges)])
    i, j = g.edges[0]
    for k in range(g.n):
        if k != i and side[k] == side[i]:
            h = graph_edge_swap(g, i, j, k)
            if girth(h) >= 6:
                break
    else:
        pytest.fail("no odd swap keeps girth 6")
    cert = certify_non_toroidal(h)
    assert cert.verdict == UNKNOWN
    assert any("not bipartite" in line for line in cert.reasoning)


def test_disconnected_graph_is_unknown():
    g = graph_from_edges("two", [(0, 1), (2, 3)])
    assert certify_non_toroidal(g).verdict == UNKNOWN
