from itertools import combinations

import pytest
from hypothesis import assume, given, strategies as st

from lowrank_mso.bitset import bits_of, mask_of
from lowrank_mso.errors import CapExceeded, NotASuffix, TooLarge
from lowrank_mso.flips import apply_flip, build_h_digraph, h_params, type_classes
from lowrank_mso.graph import ColoredGraph, Digraph, generate, random_graph
from lowrank_mso.lowrank import (Seed, brute_lowrank, find_isolating_flip, is_uniform, lowrank_via_suffixes,
                                 seed_for_suffix, seed_from_digraph, seed_from_params, span, span_contains,
                                 suffixes, trivial_seed)
from lowrank_mso.rank import representatives

from conftest import digraphs, graphs, members, oracle_cutrank, oracle_lowrank, oracle_suffixes, represented_sets
from test_flips import admissible_instances, specs

F1 = generate("figure1")
IDX = {v: i for i, v in enumerate(F1.names)}


def names(mask):
    return [F1.names[v] for v in bits_of(mask)]


def figure1_h():
    return build_h_digraph(F1, mask_of([2, 3]), mask_of([0, 1]), 2).h


def test_brute_examples():
    assert len(brute_lowrank(generate("edgeless", n=3), 0)) == 8
    p3 = generate("path", n=3)
    assert brute_lowrank(p3, 0).sets == [0, p3.full]
    c4 = generate("cycle", n=4)
    assert brute_lowrank(c4, 1).as_set() == oracle_lowrank(c4, 1)
    with pytest.raises(TooLarge):
        brute_lowrank(generate("edgeless", n=17), 0)


def test_suffix_examples():
    assert len(suffixes(Digraph.from_arcs(2, []))) == 4
    assert suffixes(Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])).sets == [0, 7]
    with pytest.raises(CapExceeded):
        suffixes(Digraph.from_arcs(5, []), cap=31)
    assert len(suffixes(Digraph.from_arcs(5, []), cap=32)) == 32


@given(digraphs(max_n=9))
def test_suffixes_match_oracle(h):
    fam = suffixes(h)
    assert fam.as_set() == oracle_suffixes(h)
    assert len(fam.sets) == len(fam.as_set())


def test_figure1_suffixes_oracle_verified():
    # the listed edge set yields two nontrivial suffixes, matching the representative oracle
    h = figure1_h()
    got = [names(x) for x in suffixes(h).sets if x not in (0, F1.full)]
    assert got == [["a1p", "a2p", "w4"], ["a1p", "a2p", "w3", "w4"]]
    assert {x for x in represented_sets(F1, 0b1100, 0b0011)} == set(suffixes(h).sets) - {0, F1.full}
    assert oracle_cutrank(F1, mask_of(IDX[v] for v in ("a1p", "a2p", "w2", "w3", "w4"))) == 3


def test_figure1_with_w1_w2_edge_reproduces_drawn_suffixes():
    g = ColoredGraph.from_edges(8, F1.edges() + [(IDX["w1"], IDX["w2"])],
                                {c: list(bits_of(m)) for c, m in F1.colors.items()}, F1.names)
    h, reps, _ = build_h_digraph(g, 0b1100, 0b0011, 2)
    assert reps == build_h_digraph(F1, 0b1100, 0b0011, 2).reps
    got = [names(x) for x in suffixes(h).sets if x not in (0, g.full)]
    assert got == [["a1p", "a2p", "w4"], ["a1p", "a2p", "w3", "w4"], ["a1p", "a2p", "w2", "w3", "w4"]]


@given(admissible_instances(max_n=7))
def test_suffixes_are_represented_sets(inst):
    g, ap, am, r = inst
    h, _, adm = build_h_digraph(g, ap, am, r)
    assume(adm)
    assert set(suffixes(h).sets) - {0, g.full} == represented_sets(g, ap, am) - {0, g.full}


def test_lowrank_via_suffixes_examples():
    p3 = generate("path", n=3)
    assert lowrank_via_suffixes(p3, 0).sets == [0, p3.full]
    fam = lowrank_via_suffixes(F1, 2)
    assert mask_of(IDX[v] for v in ("a1p", "a2p", "w4")) in fam
    g = random_graph(5, 0.5, 11)
    assert len(lowrank_via_suffixes(g, 5)) == 32


@given(graphs(max_n=6), st.integers(0, 1))
def test_lowrank_via_suffixes_equals_brute(g, r):
    assert lowrank_via_suffixes(g, r).as_set() == brute_lowrank(g, r).as_set() == oracle_lowrank(g, r)


def test_lowrank_parallel_is_deterministic():
    g = random_graph(7, 0.5, 5)
    one = lowrank_via_suffixes(g, 1)
    two = lowrank_via_suffixes(g, 1, workers=2)
    assert one.sets == two.sets and one.source == two.source


@given(graphs(min_n=1, max_n=7), st.integers(0, 2), st.data())
def test_completeness_via_representatives(g, r, data):
    x = data.draw(st.integers(1, g.full))
    assume(x != g.full and oracle_cutrank(g, x) <= r)
    ap = representatives(g, x)
    am = representatives(g, g.full & ~x)
    h, _, adm = build_h_digraph(g, ap, am, r)
    assert adm and h.is_suffix(x)


# -- seeds

def test_span_examples():
    assert span(trivial_seed(3)).sets == [0]
    assert len(span(Seed(0, 0, (1, 2)))) == 4
    assert span_contains(Seed(0, 0, (1, 2)), 3)
    with pytest.raises(CapExceeded):
        span(Seed(0, 0, (1, 2, 4)), cap=4)


def test_seed_from_digraph_examples():
    dag = Digraph.from_arcs(2, [(0, 1)])
    assert seed_from_digraph(dag, []) == trivial_seed(2)
    h = figure1_h()
    s = seed_from_digraph(h, [IDX["w3"]])
    assert {IDX["a1p"], IDX["a2p"]} <= set(bits_of(s.x_plus))
    assert {IDX["a1m"], IDX["a2m"], IDX["w1"]} <= set(bits_of(s.x_minus))
    assert s.to_json() == {"x_plus": [2, 3, 7], "x_minus": [0, 1, 4, 5], "parts": [[6]]}
    assert span_contains(s, mask_of(IDX[v] for v in ("a1p", "a2p", "w3", "w4")))
    # a sample vertex strictly above another one is inconsistent
    assert seed_from_digraph(h, [IDX["w3"], IDX["a1p"]]) == trivial_seed(8)


@st.composite
def flip_instances(draw, max_n=7):
    g = draw(graphs(min_n=1, max_n=max_n))
    k = draw(st.integers(0, 3))
    spec = draw(specs(k))
    a = tuple(draw(st.integers(0, g.n - 1)) for _ in range(k))
    return g, spec, a


@given(flip_instances(), st.data())
def test_seed_invariants_and_span_members_are_suffixes(inst, data):
    g, spec, a = inst
    b = data.draw(st.lists(st.integers(0, g.n - 1), max_size=3))
    seed = seed_from_params(g, spec, a, b)
    h = apply_flip(g, spec, a)
    assert seed.is_partition_of(g.n)
    assert is_uniform(g, seed, a)
    if len(seed.parts) <= 8:
        for x in span(seed).sets:
            assert h.is_suffix(x)


@given(flip_instances())
def test_seed_for_suffix_round_trip(inst):
    g, spec, a = inst
    h = apply_flip(g, spec, a)
    types, _, _ = type_classes(g, a)
    for x in suffixes(h).sets:
        res = seed_for_suffix(h, g, a, x)
        assert res.seed == seed_from_params(g, spec, a, res.b)
        assert span_contains(res.seed, x)
        assert res.seed.is_partition_of(g.n) and is_uniform(g, res.seed, a)
        assert set(res.b) >= set(res.b_plus) | set(res.b_minus)
        assert res.type_count == len(types)


def test_seed_for_suffix_examples():
    h = figure1_h()
    a = h_params(0b1100, 0b0011)
    for x in (0, F1.full, mask_of(IDX[v] for v in ("a1p", "a2p", "w4"))):
        res = seed_for_suffix(h, F1, a, x)
        assert span_contains(res.seed, x)
    with pytest.raises(NotASuffix):
        seed_for_suffix(h, F1, a, mask_of([IDX["w2"]]))
    cyc = Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])
    res = seed_for_suffix(cyc, generate("edgeless", n=3), (), 7)
    assert res.seed == Seed(0, 0, (7,)) and len(res.b) == 1


# -- isolating flips

def brute_isolating(g, x, s):
    types, masks, cls = type_classes(g, s)
    m = len(types)
    pairs = [(i, j) for i in range(m) for j in range(i, m)]
    for choice in range(1 << len(pairs)):
        flip = [0] * m
        for bit in bits_of(choice):
            i, j = pairs[bit]
            flip[i] |= masks[j]
            flip[j] |= masks[i]
        if all(((g.adj[u] ^ flip[cls[u]]) & ~(1 << u)) & ~x == 0 for u in bits_of(x)):
            return True
    return False


def test_isolating_flip_examples():
    g = ColoredGraph.from_edges(4, [(0, 1), (2, 3)])
    res = find_isolating_flip(g, 0b0011, 2)
    assert res.s == () and res.flipped == ()
    kn = generate("complete", n=5)
    res = find_isolating_flip(kn, 0b00111, 2)
    assert res.s == () and res.flipped == ((0, 0),)
    c6 = generate("cycle", n=6)
    assert find_isolating_flip(c6, 0b000101, 0) is None


@given(graphs(min_n=1, max_n=6), st.data())
def test_isolating_flip_against_brute_force(g, data):
    x = data.draw(st.integers(0, g.full))
    res = find_isolating_flip(g, x, 1)
    if res is not None:
        h = apply_flip(g, res.spec, res.s, require_symmetric=True)
        assert all(h.out[u] & ~x == 0 for u in bits_of(x))
        for size in range(len(res.s)):
            for s in combinations(range(g.n), size):
                assert not brute_isolating(g, x, s)
    else:
        for size in range(2):
            for s in combinations(range(g.n), size):
                assert not brute_isolating(g, x, s)
