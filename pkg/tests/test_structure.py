from fractions import Fraction
from math import comb

import pytest

from hyperham import (Bipartition, ExtremalSpec, Hypergraph, SetClassKind, build, build_star, classify,
                      closeness, find_bridge_pair, find_three_edges, forbidden_intersection_ok,
                      is_intersecting, is_substar, max_forbidden_intersection_family)
from hyperham.core import popcount, vertex_set
from hyperham.errors import BudgetExceeded, InvalidInputError, InvalidQueryError
from hyperham.extremal import parity_graph
from hyperham.structure import (alpha_good_blocks, bridge_degree_premise, distance_at, ekr_lower_bound,
                                max_clique)

import oracles
from conftest import random_hypergraph


def _balanced(v, n, k):
    p = Bipartition.prefix(n, n // 2)
    return parity_graph(p, k, odd=(v == "b")), p


def test_closeness_examples():
    b, p = _balanced("b", 8, 4)
    assert closeness(b, "b").distance == 0
    e = b.edges[0].item()
    assert closeness(b.with_edges(remove=[e]), "b").distance == 1
    bbar, _ = _balanced("bbar", 8, 4)
    # on the same partition the two constructions are complementary
    assert distance_at(bbar, "b", p) == comb(8, 4)


def test_closeness_minimum_matches_bruteforce(rng):
    for _ in range(4):
        h = random_hypergraph(rng, 8, 4, 0.5)
        sets = oracles.to_sets(h)
        for v, odd in (("b", True), ("bbar", False)):
            c = closeness(h, v)
            assert c.distance == oracles.closeness_bruteforce(sets, 8, 4, odd, [4])
            assert c.distance == distance_at(h, v, c.best_partition)
            assert c.epsilon_equivalent == Fraction(c.distance, 8 ** 4)


def test_closeness_all_sizes_and_local_search():
    h = build(ExtremalSpec("bbar", 8, 4, 3))
    assert closeness(h, "bbar", all_sizes=True).distance == 0
    assert closeness(h, "bbar").distance > 0
    loc = closeness(h, "bbar", mode="local-search")
    assert loc.upper_bound
    assert loc.distance >= closeness(h, "bbar").distance


def test_local_search_recovers_planted_partition(rng):
    p = Bipartition(10, vertex_set({1, 3, 4, 7, 8}))
    h = parity_graph(p, 4, odd=True)
    res = closeness(h, "b", mode="local-search")
    assert res.distance == 0


def test_closeness_modes_and_caps():
    h = Hypergraph.empty(22, 2)
    with pytest.raises(BudgetExceeded):
        closeness(h, "b")
    with pytest.raises(InvalidInputError):
        closeness(Hypergraph.empty(8, 4), "bprime")
    with pytest.raises(InvalidInputError):
        closeness(Hypergraph.empty(8, 4), "b", mode="greedy")


def test_is_close():
    b, _ = _balanced("b", 8, 4)
    c = closeness(b.with_edges(remove=b.edges[:3].tolist()), "b")
    assert c.is_close(Fraction(3, 8 ** 4))
    assert not c.is_close(Fraction(2, 8 ** 4))


def test_classify_examples():
    bbar, p = _balanced("bbar", 8, 4)
    for s in ({0}, {0, 5}, {1, 2, 6}):
        assert classify(s, bbar, bbar, 0).kind in (SetClassKind.GOOD, SetClassKind.GOOD_AND_BAD)
    c = classify({0}, Hypergraph.empty(8, 4), bbar, Fraction(1, 1000))
    assert c.kind is SetClassKind.BAD and c.shared == 0


def test_classify_medium():
    bbar, _ = _balanced("bbar", 8, 4)
    at_s = [e for e in bbar.edges.tolist() if e & 1]
    deg = len(at_s)
    h = bbar.with_edges(remove=at_s[: deg // 2])
    missing, shared = deg // 2, deg - deg // 2
    c = classify({0}, h, bbar, Fraction(min(missing, shared) - 1, 8 ** 3))
    assert (c.missing, c.shared) == (missing, shared)
    assert c.kind is SetClassKind.MEDIUM


def test_classify_is_monotone_in_alpha(rng):
    ref, _ = _balanced("bbar", 8, 4)
    for _ in range(5):
        h = random_hypergraph(rng, 8, 4, 0.5)
        for s in ({0}, {2, 5}, {1, 3, 6}):
            prev_good = False
            for num in range(0, 40, 3):
                good = classify(s, h, ref, Fraction(num, 64)).good
                assert good or not prev_good
                prev_good = good


def test_classify_rejects_large_sets():
    with pytest.raises(InvalidQueryError):
        classify({0, 1, 2, 3}, Hypergraph.empty(8, 4), Hypergraph.empty(8, 4), 0)


def test_no_false_bad_sets_in_bbar():
    bbar, _ = _balanced("bbar", 8, 4)
    for s in oracles.ksets(8, 2):
        c = classify(set(s), bbar, bbar, 0)
        if c.bad:
            assert c.shared == 0


def test_alpha_good_blocks_matches_classify(rng):
    ref, _ = _balanced("bbar", 8, 4)
    h = random_hypergraph(rng, 8, 4, 0.5)
    alpha = Fraction(1, 16)
    good = alpha_good_blocks(h, ref, alpha)
    # blocks are indexed in increasing mask order
    for i, s in enumerate(sorted(oracles.ksets(8, 2), key=oracles.to_mask)):
        assert good[i] == classify(set(s), h, ref, alpha).good


def test_forbidden_intersection_examples():
    assert forbidden_intersection_ok([{1, 2, 3, 4}, {1, 2, 3, 5}], 4)
    assert not forbidden_intersection_ok([{1, 2, 3, 4}, {3, 4, 5, 6}], 4)
    assert not forbidden_intersection_ok([{1, 2, 3, 4}, {5, 6, 7, 8}], 4)
    with pytest.raises(InvalidInputError):
        forbidden_intersection_ok([{1, 2, 3}], 4)


def test_max_forbidden_family_examples():
    assert max_forbidden_intersection_family(4, 4)[0] == 1
    assert max_forbidden_intersection_family(5, 4)[0] == 5
    size, fam = max_forbidden_intersection_family(6, 4)
    assert forbidden_intersection_ok(fam, 4)
    assert size == oracles.max_clique_size(6, 4)


@pytest.mark.parametrize("n,k", [(6, 4), (7, 4), (8, 4), (9, 4)])
def test_max_forbidden_family_against_networkx(n, k):
    size, fam = max_forbidden_intersection_family(n, k)
    assert size == len(fam) == oracles.max_clique_size(n, k)
    assert forbidden_intersection_ok(fam, k)
    assert size >= ekr_lower_bound(n, k)


def test_max_clique_budget():
    adj = [((1 << 30) - 1) & ~(1 << i) for i in range(30)]
    assert len(max_clique(adj)) == 30
    with pytest.raises(BudgetExceeded):
        max_clique([((1 << 40) - 1) & ~(1 << i) & ~(1 << (i ^ 1)) for i in range(40)], node_limit=10)


def test_three_edges_examples():
    w = find_three_edges(Hypergraph.complete(12, 4))
    e1, e2, e3 = w
    assert not e1 & (e2 | e3) and popcount(e2 & e3) in (0, 2)
    assert find_three_edges(build_star(12, 4, 0)) is None


def test_three_edges_oracle(rng):
    for _ in range(20):
        h = random_hypergraph(rng, 9, 4, 0.05)
        assert find_three_edges(h) == oracles.three_edges(h.edges.tolist(), 4)


def test_bridge_pair_examples():
    p = Bipartition.prefix(12, 6)
    w = find_bridge_pair(Hypergraph.complete(12, 6), p, "even")
    assert w is not None and popcount(w[0] & w[1]) in (0, 3)
    assert find_bridge_pair(parity_graph(p, 6, odd=True), p, "even") is None
    bbar = parity_graph(p, 6, odd=False)
    odd = next(e for e in Hypergraph.complete(12, 6).edges.tolist() if popcount(e & p.a_side) % 2)
    assert find_bridge_pair(bbar.with_edges(add=[odd]), p, "odd") is None
    with pytest.raises(InvalidInputError):
        find_bridge_pair(bbar, p, "both")


def test_complete_graph_bridge_can_be_the_two_sides():
    p = Bipartition.prefix(12, 6)
    h = Hypergraph(12, 6, [p.a_side, p.b_side])
    assert find_bridge_pair(h, p, "even") == (p.a_side, p.b_side)


def test_bridge_pair_oracle(rng):
    for _ in range(20):
        h = random_hypergraph(rng, 8, 4, 0.1)
        p = Bipartition.prefix(8, 3)
        for side in ("even", "odd"):
            assert find_bridge_pair(h, p, side) == oracles.bridge_pair(h.edges.tolist(), p.a_side, 4, side)


def test_bridge_degree_premise():
    p = Bipartition.prefix(8, 4)
    holds, dh, dr = bridge_degree_premise(Hypergraph.complete(8, 4), p, "odd", 3)
    assert holds and dh == 5 and dr == min(4, 4) - 4 + 1
    holds, _, _ = bridge_degree_premise(parity_graph(p, 4, odd=False), p, "odd", 3)
    assert not holds


def test_intersecting_and_substar():
    star = build_star(8, 4, 0)
    assert is_intersecting(star) and is_substar(star) == 0
    pm = Hypergraph(8, 4, [0b1111, 0b11110000])
    assert not is_intersecting(pm)
    core = set(range(5))
    fam = [vertex_set(e) for e in oracles.ksets(8, 4) if len(e & core) >= 3]
    h = Hypergraph(8, 4, fam)
    assert is_intersecting(h)
    assert is_substar(h) is None
    pairwise = all(a & b for a in fam for b in fam)
    assert pairwise
