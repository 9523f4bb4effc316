"""Spanning-tree machinery on contracted multigraphs and the greedy fix.

The greedy Fixer response to a bust is a cheapest reserve subset that
reconnects the graph, which is exactly a minimum spanning tree of the
contracted component multigraph. This module grows such a tree with Prim's
algorithm under a deterministic tie-break, enumerates *all* minimum
spanning trees by brute force (instances are desk-scale, and the
enumeration doubles as an independent oracle for the Prim construction),
and certifies whether an arbitrary spanning tree could have been produced
by some run of Prim's algorithm.

Everything here is a pure function over immutable inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import TYPE_CHECKING, Callable

from .errors import (
    BusterWinsError,
    CapExceededError,
    DisconnectedError,
    IllegalMoveError,
    NotSpanningTreeError,
)
from .graph import ContractedGraph, Edge, _UnionFind, contract

if TYPE_CHECKING:
    from .engine import Position

TieBreak = Callable[[Edge], object]


def _default_tie_break(edge: Edge) -> object:
    return edge.id


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree of a contracted graph, as a set of its edge ids."""

    edge_ids: frozenset[str]
    total_weight: Fraction


@dataclass(frozen=True)
class PrimTrace:
    """A witness that a tree is Prim-constructible: the order edges joined.

    Each listed edge, at its turn, joins the grown tree to a new vertex and
    is among the cheapest edges doing so.
    """

    start_vertex: int
    addition_order: tuple[str, ...]


def prim_mst(m: ContractedGraph, tie_break: TieBreak | None = None, start_vertex: int = 0) -> SpanningTree:
    """Grow a minimum spanning tree of ``m`` one cheapest crossing edge at a time.

    Ties between equally cheap crossing edges are broken by ``tie_break``
    (default: lexicographically smallest edge id), which makes the result a
    deterministic function of ``m``. Loops are never candidates.

    Raises ``DisconnectedError`` when ``m`` has no spanning tree.

    Examples
    --------
    >>> from busterfixer.graph import Edge, Multigraph, contract
    >>> base = Multigraph(3, (Edge("e3", 2, 0, Fraction(1)),))
    >>> m = contract(base, [Edge("e4", 0, 1, Fraction(1)), Edge("e5", 1, 2, Fraction(2))])
    >>> tree = prim_mst(m)
    >>> sorted(tree.edge_ids), tree.total_weight
    (['e4'], Fraction(1, 1))
    """
    key = tie_break or _default_tie_break
    in_tree = {start_vertex}
    chosen: list[Edge] = []
    while len(in_tree) < m.component_count:
        crossing = [e for e in m.edges if (e.u in in_tree) != (e.v in in_tree)]
        if not crossing:
            raise DisconnectedError("contracted multigraph has no spanning tree")
        best = min(crossing, key=lambda e: (e.weight, key(e)))
        chosen.append(best)
        in_tree.add(best.v if best.u in in_tree else best.u)
    return SpanningTree(
        edge_ids=frozenset(e.id for e in chosen),
        total_weight=sum((e.weight for e in chosen), Fraction(0)),
    )


def _is_spanning_tree(m: ContractedGraph, edges: tuple[Edge, ...]) -> bool:
    if len(edges) != m.component_count - 1:
        return False
    uf = _UnionFind(m.component_count)
    for e in edges:
        if not uf.union(e.u, e.v):
            return False
    return True


def all_spanning_trees(m: ContractedGraph) -> tuple[SpanningTree, ...]:
    """Every spanning tree of ``m``, minimum or not, by exhaustive search.

    Backtracks over all ``c - 1`` sized subsets of the non-loop edges;
    feasible because instances are tiny. Output is sorted by (weight,
    edge ids) so runs are reproducible.

    Raises ``DisconnectedError`` when there are none.
    """
    non_loops = tuple(e for e in m.edges if not e.is_loop)
    trees = []
    for subset in combinations(non_loops, m.component_count - 1):
        if _is_spanning_tree(m, subset):
            trees.append(
                SpanningTree(
                    edge_ids=frozenset(e.id for e in subset),
                    total_weight=sum((e.weight for e in subset), Fraction(0)),
                )
            )
    if not trees:
        raise DisconnectedError("contracted multigraph has no spanning tree")
    trees.sort(key=lambda t: (t.total_weight, tuple(sorted(t.edge_ids))))
    return tuple(trees)


def all_msts(m: ContractedGraph) -> tuple[SpanningTree, ...]:
    """Exactly the minimum-weight spanning trees of ``m``.

    Computed by enumerating all spanning trees and filtering to minimum
    weight; this is the oracle the Prim implementation is tested against.

    Examples
    --------
    >>> from busterfixer.graph import Edge, Multigraph, contract
    >>> base = Multigraph(2, ())
    >>> m = contract(base, [Edge("a", 0, 1, Fraction(1)), Edge("b", 0, 1, Fraction(1))])
    >>> [sorted(t.edge_ids) for t in all_msts(m)]
    [['a'], ['b']]
    """
    trees = all_spanning_trees(m)
    best = trees[0].total_weight
    return tuple(t for t in trees if t.total_weight == best)


def prim_reachable(
    m: ContractedGraph, t: SpanningTree, max_components: int = 6
) -> PrimTrace | None:
    """Search for an order in which Prim's algorithm could have built ``t``.

    Tries every start vertex and explores greedy-feasible addition orders,
    memoizing on the set of vertices already in the tree; returns a witness
    trace, or None when no run of Prim's algorithm can produce ``t``.

    Raises ``NotSpanningTreeError`` if ``t`` is not a spanning tree of ``m``,
    and ``CapExceededError`` above ``max_components`` (the ordering search
    is exponential in the component count).
    """
    if m.component_count > max_components:
        raise CapExceededError(
            f"{m.component_count} components exceeds the ordering-search cap {max_components}"
        )
    by_id = {e.id: e for e in m.edges}
    try:
        tree_edges = tuple(by_id[i] for i in sorted(t.edge_ids))
    except KeyError as exc:
        raise NotSpanningTreeError(f"edge {exc.args[0]} not in contracted graph") from exc
    if not _is_spanning_tree(m, tree_edges):
        raise NotSpanningTreeError("edge set is not a spanning tree of the graph")

    if m.component_count == 1:
        return PrimTrace(start_vertex=0, addition_order=())

    non_loops = tuple(e for e in m.edges if not e.is_loop)
    failed: set[frozenset[int]] = set()

    def extend(in_tree: frozenset[int], order: tuple[str, ...]) -> tuple[str, ...] | None:
        if len(in_tree) == m.component_count:
            return order
        if in_tree in failed:
            return None
        crossing_weights = [
            e.weight for e in non_loops if (e.u in in_tree) != (e.v in in_tree)
        ]
        cheapest = min(crossing_weights)
        for e in tree_edges:
            if (e.u in in_tree) == (e.v in in_tree):
                continue
            if e.weight != cheapest:
                continue
            joined = e.v if e.u in in_tree else e.u
            result = extend(in_tree | {joined}, order + (e.id,))
            if result is not None:
                return result
        failed.add(in_tree)
        return None

    for start in range(m.component_count):
        order = extend(frozenset({start}), ())
        if order is not None:
            return PrimTrace(start_vertex=start, addition_order=order)
    return None


def greedy_fixer_move(
    position: "Position", busted: frozenset[str], tie_break: TieBreak | None = None
) -> frozenset[str]:
    """The greedy response: reserve ids of a cheapest reconnecting subset.

    Returns the empty set when the busted graph is still connected;
    otherwise returns the origin ids of the deterministic minimum spanning
    tree of the contracted component multigraph. The result F always
    satisfies: busted graph plus F is connected, F has minimum weight among
    all connecting reserve subsets, and |F| is one less than the number of
    components.

    Raises ``BusterWinsError`` when even the full reserve cannot reconnect
    (callers record the empty response by convention), and
    ``IllegalMoveError`` when ``busted`` is not a nonempty subset of the
    graph.
    """
    graph = position.graph
    if not busted or not busted <= graph.ids:
        raise IllegalMoveError("busted must be a nonempty subset of the current graph")
    remaining = graph.without(busted)
    m = contract(remaining, position.reserve.edges)
    if m.component_count == 1:
        return frozenset()
    try:
        tree = prim_mst(m, tie_break=tie_break)
    except DisconnectedError:
        raise BusterWinsError("reserve cannot reconnect the busted graph") from None
    return frozenset(m.origin_of(i) for i in tree.edge_ids)
