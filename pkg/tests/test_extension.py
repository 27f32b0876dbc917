import random

import pytest

from graphext.extension import (
    InvalidExtension,
    InvariantError,
    analyze,
    block_decomposition,
    boundary,
    closure_of_sink,
    extension_from_parts,
    inessential_part,
    is_essential,
    is_totally_inessential,
    structural_checks,
    n_vector,
    quotient_graph,
    sink_path_space_finite,
    validate_extension,
    wojciech_vector,
)
from graphext.graph import Edge, GraphError, build_graph

import oracles
from generators import acyclic_graph, random_extension, random_graph, raw

EXAMPLE_BOUNDARY = [("b1", "w1", "v0"), ("b2", "w1", "v0"), ("b3", "w3", "v0"), ("b4", "w3", "v0"), ("b5", "w3", "v0")]


@pytest.fixture
def example_g():
    return build_graph(["w1", "w2", "w3"], [("e", "w1", "w1"), ("f", "w1", "w2"), ("g", "w2", "w3"), ("h", "w3", "w2")])


@pytest.fixture
def example_e(example_g):
    return extension_from_parts(example_g, ["v0"], EXAMPLE_BOUNDARY, "v0", "E")


def loops(k, v="w"):
    return build_graph([v], [(f"l{i}", v, v) for i in range(k)])


class TestValidation:
    def test_example_extension_is_valid(self, example_e):
        assert example_e.added == ("v0",)

    def test_isolated_sink_is_a_source(self):
        with pytest.raises(InvalidExtension) as err:
            extension_from_parts(loops(2), ["v0"], [], "v0")
        assert [v.axiom for v in err.value.violations] == ["axiom-1"]
        assert err.value.violations[0].witness == "v0"

    def test_loop_in_added_part(self):
        with pytest.raises(InvalidExtension) as err:
            extension_from_parts(loops(2), ["u", "v0"], [("b", "w", "u"), ("x", "u", "v0"), ("y", "v0", "u")], "v0")
        axioms = {v.axiom for v in err.value.violations}
        assert {"axiom-1", "axiom-2"} <= axioms
        loop = next(v for v in err.value.violations if v.axiom == "axiom-2").witness
        assert set(loop) == {"x", "y"}

    def test_new_edge_into_base(self):
        with pytest.raises(InvalidExtension) as err:
            extension_from_parts(loops(2), ["v0"], [("b", "w", "v0"), ("x", "w", "w")], "v0")
        assert [v.axiom for v in err.value.violations] == ["axiom-3"]

    def test_base_sink_must_stay_a_sink(self):
        g = build_graph(["a"], [])
        with pytest.raises(InvalidExtension) as err:
            extension_from_parts(g, ["v0"], [("b", "a", "v0")], "v0")
        assert [v.axiom for v in err.value.violations] == ["axiom-4"]

    def test_two_sinks(self):
        with pytest.raises(InvalidExtension, match="2 sinks"):
            extension_from_parts(loops(2), ["v0", "v1"], [("b", "w", "v0"), ("c", "w", "v1")], "v0")

    def test_not_a_subgraph(self, example_g):
        total = build_graph(["w1", "w2", "w3", "v0"], [("e", "w1", "w1"), ("f", "w1", "w3"), ("g", "w2", "w3"),
                                                       ("h", "w3", "w2"), ("b", "w1", "v0")])
        with pytest.raises(InvalidExtension) as err:
            validate_extension(example_g, total, "v0")
        assert err.value.violations[0].axiom == "subgraph"

    def test_sink_in_base(self):
        with pytest.raises(GraphError):
            extension_from_parts(loops(2), ["w"], [], "w")

    def test_random_extensions_are_valid_and_acyclic_outside_base(self):
        rng = random.Random(4)
        for _ in range(100):
            g = random_graph(rng, max_vertices=6, max_edges=10)
            ext = random_extension(rng, g)
            if ext is None:
                continue
            assert structural_checks(ext)["added_part_acyclic"]


class TestBoundaryAndWojciech:
    def test_example_boundary(self, example_e):
        b = boundary(example_e)
        assert b.edges == ("b1", "b2", "b3", "b4", "b5")
        assert b.vertices == ("w1", "w3")

    def test_example_wojciech_vector(self, example_e):
        assert wojciech_vector(example_e) == {"w1": 2, "w2": 0, "w3": 3}

    def test_single_boundary_edge(self):
        g = build_graph(["w", "x"], [("l", "w", "w"), ("m", "x", "x")])
        ext = extension_from_parts(g, ["v0"], [("b", "w", "v0")], "v0")
        assert boundary(ext).vertices == ("w",)
        assert wojciech_vector(ext) == {"w": 1, "x": 0}

    def test_paths_through_intermediate_vertex(self):
        ext = extension_from_parts(loops(2), ["u", "v0"], [("b1", "w", "u"), ("b2", "w", "u"), ("x", "u", "v0")], "v0")
        total_v, total_e = raw(ext.total)
        expected = oracles.wojciech_oracle(["w"], total_v, total_e, "v0")
        assert expected == {"w": 2}
        assert wojciech_vector(ext) == expected

    def test_matches_path_enumeration(self):
        rng = random.Random(21)
        checked = 0
        while checked < 150:
            g = random_graph(rng, max_vertices=6, max_edges=10)
            ext = random_extension(rng, g, max_added=3)
            if ext is None:
                continue
            checked += 1
            tv, te = raw(ext.total)
            assert wojciech_vector(ext) == oracles.wojciech_oracle(list(g.vertices), tv, te, ext.sink)


class TestClosure:
    def test_example_closure(self, example_e):
        assert closure_of_sink(example_e) == {"w1", "w2", "w3"}
        assert inessential_part(example_e) == frozenset()
        assert is_essential(example_e) and not is_totally_inessential(example_e)
        assert not sink_path_space_finite(example_e)

    def test_acyclic_base_is_totally_inessential(self):
        g = build_graph(["a", "b"], [("x", "a", "b")])
        ext = extension_from_parts(g, ["v0"], [("y", "a", "v0")], "v0")
        assert is_totally_inessential(ext)
        assert inessential_part(ext) == {"a", "b"}
        assert sink_path_space_finite(ext)

    def test_two_disjoint_loops(self):
        g = build_graph(["a", "b"], [("la", "a", "a"), ("lb", "b", "b")])
        ext = extension_from_parts(g, ["v0"], [("x", "a", "v0")], "v0")
        assert not is_essential(ext)
        assert not is_totally_inessential(ext)
        assert closure_of_sink(ext) == {"a"}

    def test_upstream_tail_reaches_through_downstream(self):
        g = build_graph(["a", "b"], [("la", "a", "a"), ("ab", "a", "b"), ("lb", "b", "b")])
        ext = extension_from_parts(g, ["v0"], [("x", "b", "v0")], "v0")
        assert closure_of_sink(ext) == {"a", "b"}
        assert inessential_part(ext) == frozenset()

    def test_base_sink_only(self):
        # the only base vertex is a sink, so no boundary edge can start there
        g = build_graph(["a", "s"], [("x", "a", "s")])
        ext = extension_from_parts(g, ["v0"], [("y", "a", "v0")], "v0")
        assert sink_path_space_finite(ext) and is_totally_inessential(ext)


class TestNVector:
    def test_empty(self, example_e):
        assert n_vector(example_e) == {}

    def test_chain_into_dead_end(self):
        # a -> b -> c with c carrying two loops that never reach the sink
        g = build_graph(["a", "b", "c"], [("ab", "a", "b"), ("bc", "b", "c"), ("c1", "c", "c"), ("c2", "c", "c")])
        ext = extension_from_parts(g, ["v0"], [("x", "b", "v0"), ("y", "a", "v0")], "v0")
        assert inessential_part(ext) == {"a", "b", "c"}
        assert n_vector(ext) == {"a": 2, "b": 1, "c": 0}
        tv, te = raw(ext.total)
        assert len(oracles.all_paths(tv, te, "a", "v0", 10)) == 2

    def test_generic_matches_enumeration(self):
        rng = random.Random(9)
        done = 0
        while done < 100:
            g = random_graph(rng, max_vertices=6, max_edges=9)
            ext = random_extension(rng, g)
            if ext is None:
                continue
            done += 1
            tv, te = raw(ext.total)
            for v, c in n_vector(ext).items():
                assert c == len(oracles.all_paths(tv, te, v, ext.sink, len(tv)))


class TestQuotientAndBlocks:
    def g(self):
        return build_graph(["a", "b"], [("la", "a", "a"), ("ab", "a", "b")])

    def test_quotient(self):
        g = self.g()
        assert quotient_graph(g, set()) == g
        assert quotient_graph(g, {"a", "b"}).vertices == ()
        q = quotient_graph(g, {"b"})
        assert q.vertices == ("a",) and q.edges == (Edge("la", "a", "a"),)

    def test_quotient_needs_hereditary(self):
        with pytest.raises(GraphError, match="hereditary"):
            quotient_graph(self.g(), {"a"})

    def test_blocks(self):
        g = self.g()
        full = block_decomposition(g, {"a", "b"})
        assert full.A_F.tolist() == [[1, 1], [0, 0]] and full.X.shape == (2, 0) and full.C.shape == (0, 0)
        none = block_decomposition(g, set())
        assert none.A_F.shape == (0, 0) and none.C.tolist() == [[1, 1], [0, 0]]
        b = block_decomposition(g, {"a"})
        assert (b.A_F.tolist(), b.X.tolist(), b.C.tolist()) == ([[1]], [[1]], [[0]])

    def test_blocks_reject_nonhereditary_complement(self):
        with pytest.raises(GraphError, match="lower-left"):
            block_decomposition(self.g(), {"b"})

    def test_quotient_vertex_matrix_is_top_block(self):
        rng = random.Random(13)
        from graphext.graph import vertex_matrix

        for _ in range(60):
            g = random_graph(rng, max_vertices=6, max_edges=10)
            ext = random_extension(rng, g)
            if ext is None:
                continue
            h = inessential_part(ext)
            closure = closure_of_sink(ext)
            assert vertex_matrix(quotient_graph(g, h)).tolist() == block_decomposition(g, closure).A_F.tolist()


def test_analyze_runs_structural_checks(example_e):
    a = analyze(example_e)
    assert all(a.checks.values())
    assert a.wojciech == {"w1": 2, "w2": 0, "w3": 3}


def test_n_vector_refuses_infinite_counts(example_e, monkeypatch):
    import graphext.extension as mod

    monkeypatch.setattr(mod, "inessential_part", lambda ext: frozenset({"w1"}))
    with pytest.raises(InvariantError):
        n_vector(example_e)


def test_acyclic_base_random():
    rng = random.Random(1)
    for _ in range(30):
        g = acyclic_graph(rng, max_vertices=6)
        ext = random_extension(rng, g)
        if ext is not None:
            assert is_totally_inessential(ext)
