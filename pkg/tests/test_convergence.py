from fractions import Fraction as F

import pytest

from netform import (INF, BidirectedNetwork, Mode, Params, Role, condense,
                     construct_path, is_stable, lemma_checks, strip_removables,
                     validate_certificate)
from netform.dynamics import MoveKind
from netform.errors import LemmaCheckError
from netform.generators import cycle, empty, random_net
from netform.scc import (condensation, dag_reachability,
                         strongly_connected_components)


def di(c=2):
    return Params(k=INF, c_s=F(c), mode=Mode.DIRECTED)


def two_cycles(length):
    net = BidirectedNetwork(2 * length)
    for i in range(length):
        net.add_speaking(i, (i + 1) % length)
        net.add_speaking(length + i, length + (i + 1) % length)
    return net


class TestScc:
    def test_tarjan_on_known_graph(self):
        # [DERIVED] hand-checked components of a mixed graph
        net = BidirectedNetwork(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 3),
                                    (2, 3), (4, 5)])
        comps = strongly_connected_components(6, lambda v: net._speak_out[v])
        assert [set(c) for c in comps] == [{0, 1, 2}, {3, 4}, {5}]
        comps2, comp_of, dag = condensation(6, lambda v: net._speak_out[v])
        assert dag == {(0, 1), (1, 2)}
        reach = dag_reachability(len(comps2), dag)
        assert reach[0] == {0, 1, 2}

    def test_singletons_without_edges(self):
        comps = strongly_connected_components(3, lambda v: set())
        assert [set(c) for c in comps] == [{0}, {1}, {2}]


class TestCondense:
    def test_two_disjoint_3cycles(self):
        # [TRIVIAL] both components large at c=2, both isolated
        cg = condense(two_cycles(3), di(2))
        assert len(cg.components) == 2 and cg.large == {0, 1}
        assert all(cg.roles[i] is Role.ISOLATED for i in cg.large)

    def test_cycle_plus_feeder(self):
        # [DERIVED] vertex 3 points into a 3-cycle; the cycle is the only
        # large component and is isolated within the large restriction
        net = BidirectedNetwork(4, [(0, 1), (1, 2), (2, 0), (3, 0)])
        cg = condense(net, di(2))
        assert cg.large == {cg.comp_of[0]}
        assert cg.roles[cg.comp_of[0]] is Role.ISOLATED
        assert cg.comp_of[3] not in cg.large

    def test_strictly_large_threshold(self):
        # a component of size exactly c does not count as large
        cg = condense(two_cycles(3), di(3))
        assert cg.large == frozenset()

    def test_requires_directed_unbounded(self):
        for p in (Params(k=INF, c_s=F(1), c_l=F(1)),
                  Params(k=3, c_s=F(1), mode=Mode.DIRECTED),
                  Params(k=INF, c_s=F(0), mode=Mode.DIRECTED)):
            with pytest.raises(ValueError):
                condense(cycle(3, lifted=False), p)


class TestStrip:
    def test_dangling_edge_removed(self):
        # [PAPER] an edge whose head reaches fewer than c vertices goes
        net = BidirectedNetwork(3, [(0, 1), (1, 2)])
        stripped, removed = strip_removables(net, di(3))
        assert not stripped.speaking and len(removed) == 2

    def test_stable_net_untouched(self):
        net = cycle(5, lifted=False)
        stripped, removed = strip_removables(net, di(2))
        assert stripped == net and not removed

    def test_large_count_never_increases(self):
        for seed in range(20):
            net = random_net(7, 0.4, 0.0, seed)
            p = di(2)
            before = len(condense(net, p).large)
            stripped, _ = strip_removables(net, p)
            assert len(condense(stripped, p).large) <= before


class TestConstructPath:
    def test_empty_start_zero_moves(self):
        cert = construct_path(empty(5), di(2))
        assert not cert.moves and cert.final == empty(5)  # [TRIVIAL]

    def test_two_cycles_merge_to_strongly_connected(self):
        # [DERIVED] two disjoint directed c+1-cycles end as one SCC
        start = two_cycles(3)
        p = di(2)
        cert = construct_path(start, p)
        assert validate_certificate(cert, start, p)
        comps = strongly_connected_components(
            6, lambda v: cert.final._speak_out[v])
        assert len(comps) == 1

    def test_random_starts_replay_and_stabilize(self):
        # [DERIVED] every certificate replays move-for-move and ends stable
        p = di(2)
        for seed in range(30):
            start = random_net(10, 0.3, 1.0, seed)
            cert = construct_path(start, p, assert_lemmas=True)
            assert validate_certificate(cert, start, p)
            assert is_stable(cert.final, p).stable

    def test_small_cost_chain_uses_fallback(self):
        # at c = 1 a stripped chain of singletons has an addable edge but no
        # strictly-large component; the fallback add must fire and converge
        start = BidirectedNetwork(3, [(0, 1), (1, 2)])
        p = di(1)
        cert = construct_path(start, p)
        assert [(m.kind, m.u, m.v, m.step_label) for m in cert.moves] == \
            [(MoveKind.ADD_SPEAKING, 2, 0, 4)]
        assert validate_certificate(cert, start, p)

    def test_fallback_never_fires_above_unit_cost(self):
        for seed in range(20):
            cert = construct_path(random_net(8, 0.3, 0.0, seed), di(2))
            assert all(m.step_label != 4 for m in cert.moves)

    def test_retired_edges_recorded_for_step8(self):
        # step 8 retires its edge and logs the entry vertex t_k
        p = di(2)
        for seed in range(60):
            start = random_net(8, 0.2, 0.0, seed)
            cert = construct_path(start, p)
            eights = [m for m in cert.moves if m.step_label == 8]
            assert len(cert.retired_edges) == len(eights)
            assert len(cert.metadata["t_k"]) == len(eights)
            for m in eights:
                assert (m.u, m.v) in cert.retired_edges

    def test_lemma_results_all_pass(self):
        cert = construct_path(random_net(9, 0.35, 0.0, 5), di(2),
                              assert_lemmas=False)
        assert cert.lemma_results and all(ok for _, ok in cert.lemma_results)

    def test_move_budget_raises(self):
        from netform.errors import ConstructionError
        with pytest.raises(ConstructionError):
            construct_path(random_net(8, 0.3, 0.0, 1), di(2), max_moves=0)

    def test_requires_directed_unbounded(self):
        with pytest.raises(ValueError):
            construct_path(empty(3), Params(k=INF, c_s=F(1), c_l=F(1)))


class TestLemmaChecks:
    def test_step5_reduces_large_count(self):
        # [PAPER] build a two-large-component graph where the large
        # reachability has a root and a leaf, then run one proof step
        net = two_cycles(3)
        net.add_speaking(0, 3)  # first 3-cycle is root, second is leaf
        p = di(2)
        stripped, _ = strip_removables(net, p)
        cert = construct_path(stripped, p)
        first_add = next(m for m in cert.moves
                         if m.kind is MoveKind.ADD_SPEAKING)
        assert first_add.step_label == 5
        checks = dict(cert.lemma_results)
        assert checks.get("L33_step5_large_count_decreases") is True

    def test_predicates_on_stable_graph(self):
        net = cycle(6, lifted=False)
        results = dict(lemma_checks(net, net, 1, di(2)))
        assert results["L27_condensation_acyclic"]
        assert results["L28_edge_heads_reach_at_least_c"]
        assert results["L29_leaves_isolated_or_large"]
        assert results["L32_strip_large_count_nonincreasing"]

    def test_broken_invariant_detected(self):
        # negative control: a net whose edge head reaches nothing flunks L28
        bad = BidirectedNetwork(3, [(0, 1)])
        results = dict(lemma_checks(bad, bad, 1, di(3)))
        assert results["L28_edge_heads_reach_at_least_c"] is False

    def test_tampered_certificate_rejected(self):
        # negative control: injecting a non-addable move must fail replay
        from netform.convergence import CertMove
        start = two_cycles(3)
        p = di(2)
        cert = construct_path(start, p)
        assert validate_certificate(cert, start, p)
        cert.moves.insert(0, CertMove(MoveKind.ADD_SPEAKING, 0, 1, 5))
        assert not validate_certificate(cert, start, p)

    def test_lemma_check_error_is_assertion(self):
        assert issubclass(LemmaCheckError, AssertionError)
