from fractions import Fraction
from itertools import combinations, product
import math

import pytest
from hypothesis import given, settings, strategies as st

from app.core.exceptions import CapacityException, DomainException, PreconditionException
from app.models.sets import FiniteSet
from app.models.sunit import DiffGraph, GroupSpec
from app.services.sunit_service import (
    build_diff_graph,
    build_lattice,
    count_nondeg_paths,
    gamma_member,
    is_nondegenerate_path,
    path_count_lower_bound,
    pigeonhole_endpoint,
    prune_min_degree,
    log_chain_check,
    epsilon_params,
    subspace_bound,
    subspace_bound_digits,
    subspace_bound_exponent,
    sunit_report,
)

POWERS_OF_TWO = GroupSpec(generators=["2"])


def complete_graph(m: int) -> DiffGraph:
    vertices = FiniteSet(range(1, m + 1))
    return DiffGraph.from_edges(vertices, combinations(vertices, 2))


def reachable(generators, bound):
    """Todos os produtos ∏ gᵢ^{zᵢ} com |zᵢ| ≤ bound"""
    values = set()
    for exponents in product(range(-bound, bound + 1), repeat=len(generators)):
        values.add(math.prod((Fraction(g) ** z for g, z in zip(generators, exponents)), start=Fraction(1)))
    return values


@st.composite
def random_graphs(draw):
    m = draw(st.integers(min_value=0, max_value=10))
    vertices = FiniteSet(range(m))
    pairs = list(combinations(vertices, 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return DiffGraph.from_edges(vertices, edges)


class TestLattice:
    def test_single_prime(self):
        lattice = build_lattice(POWERS_OF_TWO)
        assert lattice.primes == (2,)
        assert lattice.matrix == ((1,),)

    def test_two_generators(self):
        lattice = build_lattice(GroupSpec(generators=["6", "10"]))
        assert lattice.primes == (2, 3, 5)
        assert lattice.matrix == ((1, 1), (1, 0), (0, 1))
        assert lattice.column(1) == (1, 0, 1)

    def test_inverse_generator(self):
        assert build_lattice(GroupSpec(generators=["1/2"])).matrix == ((-1,),)

    def test_dependent_generators(self):
        lattice = build_lattice(GroupSpec(generators=["4", "8"]))
        assert lattice.rank == 1
        assert gamma_member(Fraction(2), lattice)

    def test_zero_generator_rejected(self):
        with pytest.raises(ValueError):
            GroupSpec(generators=["0"])


class TestGammaMember:
    @pytest.mark.parametrize("generators,x,expected", [
        (["2"], 4, True),
        (["2"], 3, False),
        (["2"], Fraction(-1, 8), True),
        (["6", "10"], 15, False),
        (["6", "10"], Fraction(3, 5), True),
        (["2/3", "5"], Fraction(-10, 3), True),
    ])
    def test_examples(self, generators, x, expected):
        lattice = build_lattice(GroupSpec(generators=generators))
        assert gamma_member(Fraction(x), lattice) is expected

    def test_zero(self):
        with pytest.raises(DomainException):
            gamma_member(Fraction(0), build_lattice(POWERS_OF_TWO))

    @pytest.mark.slow
    @pytest.mark.parametrize("generators", [["2"], ["6", "10"], ["2/3", "5"]])
    def test_agrees_with_enumeration(self, generators):
        lattice = build_lattice(GroupSpec(generators=generators))
        members = reachable(generators, 6)
        for x in members:
            assert gamma_member(x, lattice)
            assert gamma_member(-x, lattice)
            assert not gamma_member(7 * x, lattice)
        if len(generators) > 1:
            # 2 não é produto dos geradores nesses grupos
            for x in reachable(generators, 3):
                assert not gamma_member(2 * x, lattice)


class TestDiffGraph:
    def test_triangle(self):
        graph = build_diff_graph(FiniteSet([1, 2, 3]), POWERS_OF_TWO)
        assert graph.edge_count == 3
        assert graph.ordered_pair_count == 6

    def test_no_edge(self):
        assert build_diff_graph(FiniteSet([1, 4]), POWERS_OF_TWO).edge_count == 0

    def test_empty(self):
        graph = build_diff_graph(FiniteSet(), POWERS_OF_TWO)
        assert graph.edge_count == 0 and graph.min_degree() == 0

    @pytest.mark.parametrize("n", [4, 10, 17, 33, 64])
    def test_interval_closed_form(self, n, interval):
        expected = 2 * sum(n - 2 ** j for j in range(n.bit_length()) if 2 ** j < n)
        assert build_diff_graph(interval(n), POWERS_OF_TWO).ordered_pair_count == expected

    def test_interval_ten(self, interval):
        assert build_diff_graph(interval(10), POWERS_OF_TWO).ordered_pair_count == 50


class TestPrune:
    def test_path_collapses(self):
        path = DiffGraph.from_edges(FiniteSet([1, 2, 3]), [(1, 2), (2, 3)])
        assert len(prune_min_degree(path, 2).vertices) == 0

    def test_zero_threshold_keeps_graph(self):
        path = DiffGraph.from_edges(FiniteSet([1, 2, 3]), [(1, 2), (2, 3)])
        assert prune_min_degree(path, 0) == path

    def test_complete_graph_unchanged(self):
        assert prune_min_degree(complete_graph(4), 3) == complete_graph(4)

    def test_negative_threshold(self):
        with pytest.raises(PreconditionException):
            prune_min_degree(complete_graph(3), -1)

    @settings(deadline=None)
    @given(random_graphs(), st.integers(min_value=0, max_value=5))
    def test_min_degree_and_accounting(self, graph, t):
        pruned = prune_min_degree(graph, t)
        assert all(pruned.degree(i) >= t for i in range(len(pruned.vertices)))
        assert graph.edge_count - pruned.edge_count <= t * len(graph.vertices)
        assert set(pruned.edges()) <= set(graph.edges())


class TestNondegeneratePaths:
    @pytest.mark.parametrize("diffs,expected", [
        ((-1, -2), True),
        ((-1, 1, -1), False),
        ((5,), True),
        ((1, 2, -3), False),
    ])
    def test_classification(self, diffs, expected):
        assert is_nondegenerate_path([Fraction(d) for d in diffs]) is expected

    def test_empty(self):
        with pytest.raises(PreconditionException):
            is_nondegenerate_path([])

    def test_single_edges(self):
        graph = build_diff_graph(FiniteSet([1, 2, 3]), POWERS_OF_TWO)
        total, per_endpoint = count_nondeg_paths(graph, Fraction(1), 1)
        assert total == 2
        assert per_endpoint == {Fraction(2): 1, Fraction(3): 1}

    def test_two_edges_exclude_closed_walks(self):
        graph = build_diff_graph(FiniteSet([1, 2, 3]), POWERS_OF_TWO)
        total, per_endpoint = count_nondeg_paths(graph, Fraction(1), 2)
        assert total == 2
        assert per_endpoint == {Fraction(2): 1, Fraction(3): 1}

    def test_k_equal_one_is_degree(self, interval):
        graph = build_diff_graph(interval(12), POWERS_OF_TWO)
        for i, v in enumerate(graph.vertices):
            assert count_nondeg_paths(graph, v, 1)[0] == graph.degree(i)

    @pytest.mark.parametrize("k", [0, 9])
    def test_k_out_of_range(self, k):
        with pytest.raises(CapacityException):
            count_nondeg_paths(complete_graph(3), Fraction(1), k)

    def test_unknown_source(self):
        with pytest.raises(PreconditionException):
            count_nondeg_paths(complete_graph(3), Fraction(7), 1)

    def test_walks_agree_with_classifier(self):
        graph = complete_graph(5)
        vertices = list(graph.vertices)
        expected = 0
        for walk in product(vertices, repeat=3):
            steps = (Fraction(1),) + walk
            if any(a == b for a, b in zip(steps, steps[1:])):
                continue
            diffs = [a - b for a, b in zip(steps, steps[1:])]
            expected += is_nondegenerate_path(diffs)
        assert count_nondeg_paths(graph, Fraction(1), 3)[0] == expected

    @pytest.mark.parametrize("m", range(5, 13))
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_lower_bound_on_complete_graphs(self, m, k):
        graph = complete_graph(m)
        delta = graph.min_degree()
        if delta < 2 ** (k + 1):
            pytest.skip("grau mínimo abaixo de 2^(k+1)")
        total, _ = count_nondeg_paths(graph, Fraction(1), k)
        assert total >= path_count_lower_bound(delta, k)

    def test_lower_bound_on_gamma_graph(self, interval):
        graph = prune_min_degree(build_diff_graph(interval(40), GroupSpec(generators=["2", "3"])), 8)
        delta = graph.min_degree()
        assert delta >= 8
        for k in (1, 2):
            for v in graph.vertices[:5]:
                assert count_nondeg_paths(graph, v, k)[0] >= path_count_lower_bound(delta, k)

    def test_lower_bound_three_edges_on_gamma_graph(self, interval):
        graph = prune_min_degree(build_diff_graph(interval(199), GroupSpec(generators=["2", "3"])), 16)
        delta = graph.min_degree()
        assert delta >= 16
        bound = path_count_lower_bound(delta, 3)
        assert bound > 0
        for v in graph.vertices[:3]:
            assert count_nondeg_paths(graph, v, 3)[0] >= bound

    def test_pigeonhole_endpoint(self):
        assert pigeonhole_endpoint({Fraction(3): 2, Fraction(1): 2, Fraction(2): 1}) == 1
        assert pigeonhole_endpoint({}) is None


class TestBounds:
    @pytest.mark.parametrize("delta,k,expected", [(4, 2, 12), (0, 3, 0), (1, 1, 1), (3, 3, 0)])
    def test_path_count_lower_bound(self, delta, k, expected):
        assert path_count_lower_bound(delta, k) == expected

    @pytest.mark.parametrize("k,r,expected", [(1, 1, 68719476736), (1, 0, 16777216)])
    def test_subspace_bound(self, k, r, expected):
        assert subspace_bound(k, r) == expected

    def test_subspace_digits(self):
        assert subspace_bound_digits(2, 1) == 386
        assert len(str(subspace_bound(2, 1))) == 386

    @pytest.mark.parametrize("k,r", list(product(range(1, 4), range(4))))
    def test_subspace_digits_exact(self, k, r):
        digits = subspace_bound_digits(k, r)
        assert 10 ** (digits - 1) <= subspace_bound(k, r) < 10 ** digits

    def test_subspace_digits_power_of_ten_base(self):
        # 8k = 1000
        exponent = subspace_bound_exponent(125, 0)
        assert subspace_bound_digits(125, 0) == 3 * exponent + 1
        with pytest.raises(CapacityException):
            subspace_bound(125, 0)

    def test_subspace_monotone(self):
        assert subspace_bound(1, 2) > subspace_bound(1, 1) > subspace_bound(1, 0)
        assert subspace_bound_digits(3, 1) > subspace_bound_digits(2, 1)

    def test_subspace_digit_budget(self):
        with pytest.raises(CapacityException) as exc:
            subspace_bound(8, 4, digit_budget=1000)
        assert exc.value.details["digits"] > 1000

    def test_epsilon_params(self):
        params = epsilon_params(Fraction(1, 2))
        assert params.k == 4
        assert params.c == pytest.approx(1 / (5120 * math.log(32)), rel=1e-7)
        assert params.c == pytest.approx(5.64e-5, rel=1e-2)

    @pytest.mark.parametrize("epsilon", [Fraction(2), Fraction(0), Fraction(1)])
    def test_epsilon_params_out_of_range(self, epsilon):
        with pytest.raises(DomainException):
            epsilon_params(epsilon)

    def test_epsilon_params_exact_ceiling(self):
        assert epsilon_params(Fraction(2, 3)).k == 3
        assert epsilon_params(Fraction(1, 3)).k == 6

    @pytest.mark.parametrize("k", range(1, 7))
    def test_log_chain(self, k):
        assert log_chain_check(k, 17)["holds"] is True
        assert log_chain_check(k, 1)["holds"] is False


class TestReport:
    def test_interval(self, interval):
        report = sunit_report(interval(10), POWERS_OF_TWO, k=1)
        assert report.ordered_pairs == 50
        assert report.prime_basis == [2]
        assert report.paths.total == 4
        assert report.paths.source == 1

    def test_pruned(self, interval):
        report = sunit_report(interval(10), POWERS_OF_TWO, prune=4)
        assert report.pruned_threshold == 4
        assert report.min_degree >= 4 or report.pruned_vertices == 0
        assert report.removed_edges == report.edges - report.pruned_edges

    def test_json(self, interval):
        data = sunit_report(interval(3), POWERS_OF_TWO, source=Fraction(2), k=1).model_dump(mode="json")
        assert data["generators"] == ["2"]
        assert data["paths"]["per_endpoint"] == {"1": 1, "3": 1}
