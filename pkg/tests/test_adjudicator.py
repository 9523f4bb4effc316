import random
from fractions import Fraction

import pytest

from busterfixer import (
    BusterWinsError,
    Caps,
    CapExceededError,
    DominanceQuery,
    Edge,
    IllegalMoveError,
    Multigraph,
    OutcomeTriple,
    Position,
    QUIT,
    apply_round,
    buster_wins,
    dominates_all_strategies,
    enumerate_buster_moves,
    enumerate_fixer_responses,
    fixer_superior,
    generate_instances,
    greedy_fixer,
    play_series,
    random_buster,
    scripted_buster,
    series_superior,
    series_totals,
    theorem_sweep,
    verify_optimal,
    verify_optimal_naive,
)

from conftest import random_instance, triangle_position
from series_tables import ALL_SERIES, FAMILY_A, play_table_series


def _triple(win, busted, cost):
    return OutcomeTriple(fixer_win=win, total_busted=busted, fix_cost=Fraction(cost))


def test_fixer_superior_equal_triples():
    t = _triple(True, 3, 3)
    assert fixer_superior(t, t)


def test_fixer_superior_reflexive_on_varied_triples():
    for t in [_triple(True, 0, 0), _triple(False, 4, 1), _triple(False, 0, 7)]:
        assert fixer_superior(t, t)


def test_fixer_superior_asymmetric_example():
    cheap = _triple(True, 2, 1)
    dear = _triple(True, 2, 2)
    assert fixer_superior(cheap, dear)
    assert not fixer_superior(dear, cheap)


def test_fixer_superior_win_condition():
    # Fixer loss only dominates another loss
    assert fixer_superior(_triple(False, 5, 1), _triple(False, 4, 2))
    assert not fixer_superior(_triple(False, 5, 1), _triple(True, 4, 2))
    assert fixer_superior(_triple(True, 5, 1), _triple(True, 4, 2))


def _played(name):
    initial = triangle_position()
    for entry in ALL_SERIES:
        if entry[0] == name:
            return play_table_series(initial, entry[1], entry[2])
    raise KeyError(name)


def test_series_superior_worked_example_cross_family():
    # the round-2 bust-everything line dominates the expensive family's
    # corresponding third-round loss
    assert series_superior(_played("T10"), _played("V11"))


def test_series_superior_expensive_prefix_dominates_nothing():
    u1 = _played("U1")
    for name, *_ in FAMILY_A:
        assert not series_superior(u1, _played(name))


def test_series_superior_reflexive_and_requires_shared_instance():
    t2 = _played("T2")
    assert series_superior(t2, t2)
    other = random_instance(random.Random(0))
    series = play_series(other, random_buster(seed=1), greedy_fixer())
    with pytest.raises(IllegalMoveError):
        series_superior(t2, series)


def test_superiority_transitive_on_random_triples():
    rng = random.Random(13)
    checked = 0
    while checked < 500:
        initial = random_instance(rng)
        triples = [
            series_totals(play_series(initial, random_buster(seed=rng.randrange(10**6)), greedy_fixer()))
            for _ in range(3)
        ]
        a, b, c = triples
        if fixer_superior(a, b) and fixer_superior(b, c):
            assert fixer_superior(a, c)
            checked += 1


def test_triple_reduction_matches_raw_sums():
    rng = random.Random(29)
    for _ in range(200):
        initial = random_instance(rng)
        s = play_series(initial, random_buster(seed=rng.randrange(10**6)), greedy_fixer())
        t = play_series(initial, random_buster(seed=rng.randrange(10**6)), greedy_fixer())
        raw = (
            ((s.outcome.value == "Fixer") or (t.outcome.value == "Buster"))
            and sum(len(r.busted) for r in s.rounds) >= sum(len(r.busted) for r in t.rounds)
            and sum((initial.reserve.weight(r.fixed) for r in s.rounds), Fraction(0))
            <= sum((initial.reserve.weight(r.fixed) for r in t.rounds), Fraction(0))
        )
        assert series_superior(s, t) == raw


def test_enumerate_fixer_responses_bridge_only(triangle):
    assert enumerate_fixer_responses(triangle, frozenset({"e1", "e2"}), bridge_only=True) == [
        frozenset({"e4"}),
        frozenset({"e5"}),
    ]


def test_enumerate_fixer_responses_all(triangle):
    assert enumerate_fixer_responses(triangle, frozenset({"e1", "e2"}), bridge_only=False) == [
        frozenset({"e4"}),
        frozenset({"e5"}),
        frozenset({"e4", "e5"}),
    ]


def test_enumerate_fixer_responses_connected_graph(triangle):
    assert enumerate_fixer_responses(triangle, frozenset({"e1"}), bridge_only=True) == [frozenset()]
    between = enumerate_fixer_responses(triangle, frozenset({"e1"}), bridge_only=False)
    # still connected: every reserve subset is legal, cheapest first
    assert between[0] == frozenset()
    assert len(between) == 4


def test_enumerate_fixer_responses_buster_win_raises(triangle):
    p = apply_round(triangle, frozenset({"e1", "e2"}), frozenset({"e4"}))
    with pytest.raises(BusterWinsError):
        enumerate_fixer_responses(p, frozenset({"e3", "e4"}))


def test_dominates_quit_immediately(triangle):
    # target: quit right after the cheap fix; alternative line spent 2 already
    alt = apply_round(triangle, frozenset({"e1", "e2"}), frozenset({"e5"}))
    q = DominanceQuery(
        target=_triple(True, 2, 1),
        position=alt,
        accumulated=_triple(True, 2, 2),
    )
    assert dominates_all_strategies(q)


def test_dominates_fails_when_bust_budget_exhausted():
    p = Position(
        graph=Multigraph(2, (Edge("a", 0, 1, Fraction(1)),)),
        reserve=Multigraph(2, ()),
    )
    q = DominanceQuery(
        target=_triple(False, 0, 0),
        position=p,
        accumulated=_triple(True, 0, 0),
    )
    # every completion of the alternative busts at least one more edge, and
    # a loss cannot dominate the quit-now Fixer win
    assert not dominates_all_strategies(q)


def test_dominates_buster_win_within_budget(triangle):
    alt = apply_round(triangle, frozenset({"e1", "e2"}), frozenset({"e4", "e5"}))
    q = DominanceQuery(
        target=_triple(False, 4, 1),
        position=alt,
        accumulated=_triple(True, 2, 3),
    )
    assert dominates_all_strategies(q)


def test_verify_optimal_worked_example(triangle):
    busted = frozenset({"e1", "e2"})
    assert verify_optimal(triangle, busted, frozenset({"e4"}))
    assert not verify_optimal(triangle, busted, frozenset({"e5"}))
    assert not verify_optimal(triangle, busted, frozenset({"e4", "e5"}))


def test_verify_optimal_naive_agrees_on_worked_example(triangle):
    busted = frozenset({"e1", "e2"})
    for candidate in [{"e4"}, {"e5"}, {"e4", "e5"}]:
        assert verify_optimal_naive(triangle, busted, frozenset(candidate)) == verify_optimal(
            triangle, busted, frozenset(candidate)
        )


def test_verify_optimal_rejects_illegal_candidate(triangle):
    busted = frozenset({"e1", "e2"})
    with pytest.raises(IllegalMoveError):
        verify_optimal(triangle, busted, frozenset())  # does not reconnect
    with pytest.raises(IllegalMoveError):
        verify_optimal(triangle, busted, frozenset({"e1"}))  # not reserve
    with pytest.raises(IllegalMoveError):
        verify_optimal(triangle, frozenset(), frozenset({"e4"}))


def test_verify_optimal_lost_round_forced_empty_is_optimal():
    p = Position(
        graph=Multigraph(2, (Edge("a", 0, 1, Fraction(1)),)),
        reserve=Multigraph(2, ()),
    )
    assert verify_optimal(p, frozenset({"a"}), frozenset())
    assert verify_optimal_naive(p, frozenset({"a"}), frozenset())
    with pytest.raises(IllegalMoveError):
        verify_optimal(p, frozenset({"a"}), frozenset({"zzz"}))


def test_verify_optimal_single_replacement_edge():
    p = Position(
        graph=Multigraph(2, (Edge("a", 0, 1, Fraction(1)),)),
        reserve=Multigraph(2, (Edge("r", 0, 1, Fraction(2)),)),
    )
    assert verify_optimal(p, frozenset({"a"}), frozenset({"r"}))
    assert verify_optimal_naive(p, frozenset({"a"}), frozenset({"r"}))


def test_verify_optimal_empty_response_when_connected(triangle):
    assert verify_optimal(triangle, frozenset({"e1"}), frozenset())
    assert verify_optimal_naive(triangle, frozenset({"e1"}), frozenset())
    # spending while still connected wastes weight and is not optimal
    assert not verify_optimal(triangle, frozenset({"e1"}), frozenset({"e4"}))


def test_verify_optimal_caps():
    rng = random.Random(4)
    p = random_instance(rng, max_vertices=4, max_total_edges=10)
    while p.total_edges <= 7:
        p = random_instance(rng, max_vertices=4, max_total_edges=10)
    with pytest.raises(CapExceededError):
        verify_optimal(p, frozenset(sorted(p.graph.ids)[:1]), frozenset())
    with pytest.raises(CapExceededError):
        verify_optimal_naive(triangle_position(), frozenset({"e1"}), frozenset(), Caps(naive_max_total_edges=4))


def _oracle_corpus(max_total):
    for p in generate_instances(max_vertices=2, max_total_edges=max_total, reserve_weights=(0, 1)):
        yield p


def test_oracle_agreement_exhaustive_tiny():
    # every instance, bust, and legal response with |G|+|R| <= 4 on two
    # vertices: the game search and the strategy-materializing oracle agree
    checked = 0
    for p in _oracle_corpus(4):
        if len(p.graph) == 0:
            continue
        for busted in enumerate_buster_moves(p):
            if buster_wins(p, busted):
                continue
            for candidate in enumerate_fixer_responses(p, busted, bridge_only=False):
                expected = verify_optimal_naive(p, busted, candidate)
                assert verify_optimal(p, busted, candidate) == expected
                assert verify_optimal(p, busted, candidate, bridge_only=False) == expected
                checked += 1
    assert checked > 200


def test_oracle_agreement_sampled_three_vertices():
    rng = random.Random(31)
    pool = [p for p in generate_instances(max_vertices=3, max_total_edges=5) if len(p.graph)]
    cache = {}
    checked = 0
    for p in rng.sample(pool, 60):
        for busted in enumerate_buster_moves(p):
            if buster_wins(p, busted):
                continue
            for candidate in enumerate_fixer_responses(p, busted, bridge_only=False):
                naive = verify_optimal_naive(p, busted, candidate)
                assert verify_optimal(p, busted, candidate, cache=cache) == naive
                checked += 1
    assert checked > 100


def test_theorem_sweep_micro_corpus_clean():
    report = theorem_sweep(
        generate_instances(max_vertices=2, max_total_edges=4, reserve_weights=(0, 1)),
        compare_prune=True,
    )
    assert report.ok
    assert report.greedy_checked > 0
    assert report.responses_checked > 0
    assert "counterexamples: 0" in report.summary()


def test_generate_instances_counts_and_shape():
    instances = list(generate_instances(max_vertices=2, max_total_edges=3, reserve_weights=(1,)))
    # graphs are connected, pools share ids with nothing overlapping
    for p in instances:
        from busterfixer import is_connected

        assert is_connected(p.graph)
        assert p.total_edges <= 3
    signatures = {(p.graph.signature(), p.reserve.signature(), p.graph.vertex_count) for p in instances}
    assert len(signatures) == len(instances)  # canonical dedup


def test_quit_token_repr():
    assert repr(QUIT) == "QUIT"


def test_equal_weight_ties_every_tree_optimal():
    # both reserve edges tie at weight 1: each spanning-tree response is
    # greedy and must verify optimal; the spend-both response must not
    p = Position(
        graph=Multigraph(
            3,
            (
                Edge("e1", 0, 1, Fraction(1)),
                Edge("e2", 1, 2, Fraction(1)),
                Edge("e3", 2, 0, Fraction(1)),
            ),
        ),
        reserve=Multigraph(3, (Edge("e4", 0, 1, Fraction(1)), Edge("e5", 1, 2, Fraction(1)))),
    )
    busted = frozenset({"e1", "e2"})
    assert verify_optimal(p, busted, frozenset({"e4"}))
    assert verify_optimal(p, busted, frozenset({"e5"}))
    assert not verify_optimal(p, busted, frozenset({"e4", "e5"}))


def _tree_series_totals(tree):
    from busterfixer import strategy_series

    return [series_totals(s) for s in strategy_series(tree)]


def test_strategy_trees_worked_example_counts(triangle):
    from busterfixer import enumerate_strategy_trees, strategy_series

    busted = frozenset({"e1", "e2"})
    # each round-1 response admits exactly one continuation strategy here,
    # with 10, 10, and 17 series respectively
    for candidate, expected_series in [({"e4"}, 10), ({"e5"}, 10), ({"e4", "e5"}, 17)]:
        trees = enumerate_strategy_trees(triangle, busted, frozenset(candidate))
        assert len(trees) == 1
        assert len(strategy_series(trees[0])) == expected_series


def test_strategy_tree_series_replay_legally(triangle):
    from busterfixer import enumerate_strategy_trees, replay_positions, strategy_series

    busted = frozenset({"e1", "e2"})
    for candidate in [{"e4"}, {"e5"}, {"e4", "e5"}]:
        (tree,) = enumerate_strategy_trees(triangle, busted, frozenset(candidate))
        for series in strategy_series(tree):
            replay_positions(series)  # raises on any illegal round
        # every legal Buster continuation at every surviving node is assigned
        assignments = tree.response_map
        for seq in assignments:
            assert all(isinstance(move, frozenset) for move in seq)


def test_strategy_tree_counts_match_materialized_outcome_sets():
    # third route: the outcome-set family derived from explicit trees equals
    # what a fresh tree-by-tree evaluation produces on micro instances
    from busterfixer import enumerate_strategy_trees

    for p in generate_instances(max_vertices=2, max_total_edges=3, reserve_weights=(0, 1)):
        if len(p.graph) == 0:
            continue
        for busted in enumerate_buster_moves(p):
            if buster_wins(p, busted):
                continue
            for candidate in enumerate_fixer_responses(p, busted, bridge_only=False):
                trees = enumerate_strategy_trees(p, busted, candidate)
                assert trees, "at least one strategy always exists"
                prefix_triple = OutcomeTriple(True, len(busted), p.reserve.weight(candidate))
                for t in trees:
                    # the quit-immediately prefix is a series of every strategy
                    assert prefix_triple in _tree_series_totals(t)


def test_tree_based_literal_chain_agrees_with_both_verifiers(triangle):
    # evaluate the optimality definition over explicit trees only
    from busterfixer import enumerate_strategy_trees

    def tree_verdict(p, busted, candidate):
        target_trees = enumerate_strategy_trees(p, busted, candidate)
        alternatives = enumerate_fixer_responses(p, busted, bridge_only=False)
        alt_trees = {alt: enumerate_strategy_trees(p, busted, alt) for alt in alternatives}
        return any(
            all(
                any(fixer_superior(t, other) for other in _tree_series_totals(alt_tree))
                for alt in alternatives
                for alt_tree in alt_trees[alt]
                for t in _tree_series_totals(target)
            )
            for target in target_trees
        )

    busted = frozenset({"e1", "e2"})
    for candidate in [{"e4"}, {"e5"}, {"e4", "e5"}]:
        expected = verify_optimal(triangle, busted, frozenset(candidate))
        assert tree_verdict(triangle, busted, frozenset(candidate)) == expected
        assert verify_optimal_naive(triangle, busted, frozenset(candidate)) == expected

    for p in generate_instances(max_vertices=2, max_total_edges=4, reserve_weights=(1, 2)):
        if len(p.graph) == 0:
            continue
        for busted in enumerate_buster_moves(p):
            if buster_wins(p, busted):
                continue
            for candidate in enumerate_fixer_responses(p, busted, bridge_only=False):
                assert tree_verdict(p, busted, candidate) == verify_optimal(p, busted, candidate)


def test_strategy_trees_lost_round_single_completed_series():
    from busterfixer import enumerate_strategy_trees, strategy_series

    p = Position(
        graph=Multigraph(2, (Edge("a", 0, 1, Fraction(1)),)),
        reserve=Multigraph(2, ()),
    )
    trees = enumerate_strategy_trees(p, frozenset({"a"}), frozenset())
    assert len(trees) == 1
    (only,) = strategy_series(trees[0])
    assert only.outcome.value == "Buster"


def test_strategy_trees_cap():
    from busterfixer import enumerate_strategy_trees

    p = Position(
        graph=Multigraph(1, (Edge("g0", 0, 0, Fraction(1)),)),
        reserve=Multigraph(
            1, tuple(Edge(f"r{i}", 0, 0, Fraction(0)) for i in range(4))
        ),
    )
    with pytest.raises(CapExceededError):
        enumerate_strategy_trees(p, frozenset({"g0"}), frozenset({"r0", "r1", "r2"}))
