from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from hyperham import (Bipartition, CertificateKind, CycleWitness, ExtremalSpec, Hypergraph,
                      binary_representation, build, certify_non_hamiltonian, check_certificate,
                      enumerate_family, find_hamilton_half_cycle, find_patterned_path, solve_half_cycle,
                      verify)
from hyperham.core import popcount, vertex_set
from hyperham.errors import InvalidPatternError, InvalidQueryError, InvalidWitnessError, NoCertificateError
from hyperham.extremal import parity_graph
from hyperham.parity import (claimed_half_split_types, cyclic_string_exists, edge_parity_profile,
                             half_split_types)
from hyperham.solver import UNLIMITED

import oracles


def _cycle(h, blocks):
    return CycleWitness(h, tuple(v for b in blocks for v in sorted(b)), h.k // 2)


def test_binary_representation_examples():
    h = Hypergraph.complete(8, 4)
    w = _cycle(h, [{0, 4}, {5, 6}, {1, 7}, {2, 3}])
    assert str(binary_representation(w, Bipartition(8, vertex_set({0, 1})))) == "1010"
    assert str(binary_representation(w, Bipartition(8, 0))) == "0000"


def test_cycles_in_b_alternate():
    spec = ExtremalSpec("b", 8, 4, 4)
    h = build(spec, force=True)
    w = find_hamilton_half_cycle(h)
    bits = binary_representation(w, spec.partition).bits
    assert all(bits[i] != bits[(i + 1) % len(bits)] for i in range(len(bits)))


def test_binary_representation_rejects_unverified():
    bad = _cycle(Hypergraph.empty(8, 4), [{0, 1}, {2, 3}, {4, 5}, {6, 7}])
    with pytest.raises(InvalidWitnessError):
        binary_representation(bad, Bipartition.prefix(8, 3))


def test_edge_parity_profile_examples():
    p = Bipartition.prefix(8, 3)
    assert edge_parity_profile(build(ExtremalSpec("b", 8, 4, 3)), p) == (35, 0)
    assert edge_parity_profile(build(ExtremalSpec("bbar", 8, 4, 3)), p) == (0, 35)
    assert edge_parity_profile(Hypergraph.complete(8, 4), Bipartition.prefix(8, 4)) == (32, 38)


def test_certificate_examples():
    c = certify_non_hamiltonian(ExtremalSpec("b", 10, 4, 5))
    assert (c.kind, c.t) == (CertificateKind.ALL_EDGES_ODD_T_ODD, 5)
    c = certify_non_hamiltonian(ExtremalSpec("bbar", 8, 4, 3))
    assert c.kind is CertificateKind.ALL_EVEN_A_ODD
    c = certify_non_hamiltonian(ExtremalSpec("bprime", 10, 4, 3))
    assert c.kind is CertificateKind.BPRIME_PARITY_CLASH
    assert c.form.startswith("00101")
    c = certify_non_hamiltonian(ExtremalSpec("bprime", 9, 6, 1))
    assert c.form == "110"
    assert certify_non_hamiltonian(ExtremalSpec("b", 8, 4, 3)).kind is CertificateKind.PM_CARDINALITY_MISMATCH
    with pytest.raises(NoCertificateError):
        certify_non_hamiltonian(ExtremalSpec("bbar", 8, 4, 2))


def test_check_certificate_examples():
    spec = ExtremalSpec("b", 10, 4, 5)
    h, p = build(spec), spec.partition
    cert = certify_non_hamiltonian(spec)
    assert check_certificate(cert, h, p)
    even = next(e for e in Hypergraph.complete(10, 4).edges.tolist() if popcount(e & p.a_side) % 2 == 0)
    assert not check_certificate(cert, h.with_edges(add=[even]), p)


def test_check_certificate_after_relabelling(rng):
    spec = ExtremalSpec("bbar", 8, 4, 3)
    cert = certify_non_hamiltonian(spec)
    for _ in range(10):
        perm = rng.permutation(8).tolist()
        h, p = build(spec).relabel(perm), spec.partition.relabel(perm)
        assert check_certificate(cert, h, p)


def test_check_certificate_rejects_mismatched_parameters():
    spec = ExtremalSpec("bbar", 8, 4, 3)
    cert = certify_non_hamiltonian(spec)
    assert not check_certificate(cert, build(spec), Bipartition.prefix(8, 5))
    assert not check_certificate(cert, build(ExtremalSpec("bbar", 12, 4, 3)), Bipartition.prefix(12, 3))


def test_certificate_sound_on_random_subgraphs(rng):
    # deleting edges keeps every premise, so the certificate must still hold
    # and the solver must still find nothing
    for n, k in ((8, 4), (10, 4), (9, 6)):
        for spec in enumerate_family(n, k):
            h = build(spec)
            keep = rng.random(len(h)) < 0.8
            sub = Hypergraph(n, k, h.edges[keep])
            cert = certify_non_hamiltonian(spec)
            assert check_certificate(cert, sub, spec.partition)
            assert solve_half_cycle(sub).decision == "no"


def _strings_exist(allowed, t, ones, even_cap, odd_cap):
    for bits in oracles.cyclic_strings(t):
        if sum(bits) % 2 != ones:
            continue
        trans = [(bits[i], bits[(i + 1) % t]) for i in range(t)]
        if not all(allowed[a][b] for a, b in trans):
            continue
        n_even = sum(a == b for a, b in trans)
        if even_cap != UNLIMITED and n_even > even_cap:
            continue
        if odd_cap != UNLIMITED and t - n_even > odd_cap:
            continue
        return True
    return False


def test_cyclic_string_dp_matches_enumeration():
    for cells in product((False, True), repeat=4):
        allowed = np.array(cells).reshape(2, 2)
        for t in range(3, 9):
            for ones in (0, 1):
                for ec, oc in ((UNLIMITED, UNLIMITED), (2, UNLIMITED), (1, UNLIMITED), (UNLIMITED, 2), (0, 2)):
                    assert cyclic_string_exists(allowed, t, ones, ec, oc) == \
                        _strings_exist(allowed.tolist(), t, ones, ec, oc), (cells, t, ones, ec, oc)


def test_patterned_path_examples():
    p18 = Bipartition.prefix(18, 9)
    w = find_patterned_path(Hypergraph.complete(18, 6), p18, "000", Fraction(1))
    assert w is not None and verify(w)
    assert [popcount(b & p18.a_side) % 2 for b in w.blocks] == [0, 0, 0]
    p = Bipartition.prefix(12, 6)
    assert find_patterned_path(parity_graph(p, 6, odd=True), p, "00") is None
    bbar = parity_graph(p, 6, odd=False)
    w = find_patterned_path(bbar, p, "11", Fraction(1), reference=bbar)
    assert w is not None and verify(w)
    assert all(popcount(b & p.a_side) % 2 for b in w.blocks)


def test_patterned_path_respects_good_ends():
    p = Bipartition.prefix(8, 4)
    bbar = parity_graph(p, 4, odd=False)
    # alpha = 0 with reference = complete: every block misses edges, none is good
    assert find_patterned_path(bbar, p, "00", Fraction(0), reference=Hypergraph.complete(8, 4)) is None
    assert find_patterned_path(bbar, p, "00", Fraction(0), reference=bbar) is not None


def test_invalid_patterns():
    p = Bipartition.prefix(8, 4)
    h = Hypergraph.complete(8, 4)
    for bad in ("", "0", "012", "ab"):
        with pytest.raises(InvalidPatternError):
            find_patterned_path(h, p, bad)


@pytest.mark.parametrize("k", [4, 6, 8])
def test_half_split_types_match_claims(k):
    for x in range(0, k + 1, 2):
        assert half_split_types(k, x) == claimed_half_split_types(k, x)


def test_half_split_claims_need_even_x():
    with pytest.raises(InvalidQueryError):
        claimed_half_split_types(4, 1)


def test_half_split_enumeration_by_brute_force():
    # the split enumeration itself against an independent frozenset count
    for k in (4, 6):
        for x in range(0, k + 1, 2):
            a = set(range(x))
            found = set()
            for left in oracles.ksets(k, k // 2):
                right = set(range(k)) - left
                pa, pb = len(left & a) % 2, len(right & a) % 2
                found.add("mixed" if pa != pb else ("odd" if pa else "even"))
            assert half_split_types(k, x) == found
