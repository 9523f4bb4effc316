"""Exact-weight multigraphs with component, connectivity, and bridge queries.

Edges are identified by unique string ids, so removing a busted subset or
spending reserve edges stays unambiguous even when parallel edges share
endpoints and weights. Weights are ``fractions.Fraction`` values throughout:
minimum spanning trees and equal-weight tie enumeration need exact
comparisons, so binary floats never appear. Instance sizes are tiny by
design and every query recomputes from scratch.

All values are immutable after construction and every operation is a pure
function, so graphs can be shared freely between threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator

from .errors import IllegalMoveError

_DECIMAL_RE = re.compile(r"(-?)(\d+)(?:\.(\d+))?")


def parse_decimal_weight(text: str) -> Fraction:
    """Parse a plain decimal string into an exact nonnegative Fraction.

    Only ``digits`` or ``digits.digits`` are accepted; scientific notation
    is rejected so the value never takes a detour through binary floats.
    A syntactically valid but negative value raises ``ValueError`` with
    "negative" in the message, letting callers distinguish bad syntax from
    a bad value.
    """
    m = _DECIMAL_RE.fullmatch(text.strip())
    if m is None:
        raise ValueError(f"not a plain decimal weight: {text!r}")
    sign, whole, frac = m.groups()
    value = Fraction(int(whole))
    if frac:
        value += Fraction(int(frac), 10 ** len(frac))
    if sign:
        raise ValueError(f"negative weight: {text!r}")
    return value


def format_weight(value: Fraction) -> str:
    """Render a Fraction as ``3`` or ``7/2``; deterministic and exact."""
    return str(value)


def format_decimal_weight(value: Fraction) -> str:
    """Render a Fraction as the exact decimal string the scenario grammar takes.

    Only works when the denominator divides a power of ten (always true for
    values that came from :func:`parse_decimal_weight`); raises
    ``ValueError`` otherwise rather than rounding.
    """
    denominator = value.denominator
    twos = fives = 0
    while denominator % 2 == 0:
        denominator //= 2
        twos += 1
    while denominator % 5 == 0:
        denominator //= 5
        fives += 1
    if denominator != 1:
        raise ValueError(f"{value} has no exact decimal representation")
    places = max(twos, fives)
    scaled = value.numerator * 10**places // value.denominator
    if places == 0:
        return str(scaled)
    text = str(scaled).rjust(places + 1, "0")
    return f"{text[:-places]}.{text[-places:]}"


@dataclass(frozen=True)
class Edge:
    """A weighted edge between vertex indices, identified by a unique id.

    Loops (``u == v``) are representable; they arise naturally in contracted
    graphs. The weight must be a finite nonnegative rational. Ints are
    coerced to ``Fraction`` for convenience.
    """

    id: str
    u: int
    v: int
    weight: Fraction

    def __post_init__(self):
        if not isinstance(self.weight, Fraction):
            object.__setattr__(self, "weight", Fraction(self.weight))
        if self.weight < 0:
            raise ValueError(f"edge {self.id}: negative weight {self.weight}")
        if self.u < 0 or self.v < 0:
            raise ValueError(f"edge {self.id}: negative vertex index")

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def key(self) -> tuple[int, int, Fraction]:
        """Endpoint-sorted structural key ``(min, max, weight)``."""
        a, b = sorted((self.u, self.v))
        return (a, b, self.weight)


@dataclass(frozen=True)
class Multigraph:
    """A multiset of identified edges over vertices ``0..vertex_count-1``.

    Two distinct ids may share endpoints and weight (parallel edges); the
    id is the unit of membership for deletion and union. Edges are kept
    sorted by id so equal graphs compare and hash equal.
    """

    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("vertex_count must be positive")
        edges = tuple(sorted(self.edges, key=lambda e: e.id))
        ids = [e.id for e in edges]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge ids in multigraph")
        for e in edges:
            if e.u >= self.vertex_count or e.v >= self.vertex_count:
                raise ValueError(f"edge {e.id} references vertex outside 0..{self.vertex_count - 1}")
        object.__setattr__(self, "edges", edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    @cached_property
    def ids(self) -> frozenset[str]:
        return frozenset(e.id for e in self.edges)

    @cached_property
    def _by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    def edge(self, edge_id: str) -> Edge:
        return self._by_id[edge_id]

    def weight(self, ids: Iterable[str] | None = None) -> Fraction:
        """Total weight of the given ids (all edges when omitted)."""
        if ids is None:
            return sum((e.weight for e in self.edges), Fraction(0))
        by_id = self._by_id
        return sum((by_id[i].weight for i in ids), Fraction(0))

    def without(self, ids: Iterable[str]) -> Multigraph:
        """Multigraph minus the given edge ids; ids must all be present."""
        drop = frozenset(ids)
        missing = drop - self.ids
        if missing:
            raise IllegalMoveError(f"edges not in multigraph: {sorted(missing)}")
        return Multigraph(self.vertex_count, tuple(e for e in self.edges if e.id not in drop))

    def with_edges(self, new_edges: Iterable[Edge]) -> Multigraph:
        """Multigraph plus the given edges; ids must not collide."""
        return Multigraph(self.vertex_count, self.edges + tuple(new_edges))

    def signature(self) -> tuple[tuple[int, int, Fraction], ...]:
        """Canonical id-free structural key: sorted endpoint/weight triples."""
        return tuple(sorted(e.key() for e in self.edges))


@dataclass(frozen=True)
class ContractedGraph:
    """The multigraph of components: vertices are component indices.

    Built by :func:`contract`. Each edge keeps the id and weight of the
    reserve edge it came from, with endpoints re-expressed as component
    indices; ``origin`` maps the contracted edge id back to that reserve id
    (a bijection). Reserve edges internal to one component become loops.
    """

    component_count: int
    component_of: tuple[int, ...]
    edges: tuple[Edge, ...]
    origin: tuple[tuple[str, str], ...]

    def origin_of(self, contracted_id: str) -> str:
        for cid, rid in self.origin:
            if cid == contracted_id:
                return rid
        raise KeyError(contracted_id)


class _UnionFind:
    """Plain union-find over ``range(n)``; path compression, no ranks."""

    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def components(g: Multigraph) -> tuple[int, ...]:
    """Connected-component labels, one per vertex.

    Labels are dense (``0..c-1``) and canonical: components are numbered in
    increasing order of their minimum member vertex, so identical inputs
    always yield identical labelings.
    """
    uf = _UnionFind(g.vertex_count)
    for e in g.edges:
        uf.union(e.u, e.v)
    labels: dict[int, int] = {}
    out = []
    for v in range(g.vertex_count):
        root = uf.find(v)
        if root not in labels:
            labels[root] = len(labels)
        out.append(labels[root])
    return tuple(out)


def component_count(g: Multigraph) -> int:
    labels = components(g)
    return max(labels) + 1


def is_connected(g: Multigraph) -> bool:
    """True iff the graph has exactly one component; one vertex is connected."""
    return component_count(g) == 1


def bridges(g: Multigraph) -> frozenset[str]:
    """Edge ids whose removal increases the component count.

    Equivalently the edges lying on no cycle: loops and members of parallel
    pairs are never bridges. Uses a DFS lowpoint computation that tracks the
    incoming edge by id, so parallel edges are handled correctly.
    """
    adjacency: list[list[tuple[str, int]]] = [[] for _ in range(g.vertex_count)]
    for e in g.edges:
        if e.is_loop:
            continue
        adjacency[e.u].append((e.id, e.v))
        adjacency[e.v].append((e.id, e.u))

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    result: list[str] = []
    counter = 0

    for start in range(g.vertex_count):
        if start in disc:
            continue
        stack: list[tuple[int, str | None, Iterator[tuple[str, int]]]] = []
        disc[start] = low[start] = counter
        counter += 1
        stack.append((start, None, iter(adjacency[start])))
        while stack:
            vertex, in_edge, neighbours = stack[-1]
            advanced = False
            for edge_id, other in neighbours:
                if edge_id == in_edge:
                    continue
                if other not in disc:
                    disc[other] = low[other] = counter
                    counter += 1
                    stack.append((other, edge_id, iter(adjacency[other])))
                    advanced = True
                    break
                low[vertex] = min(low[vertex], disc[other])
            if not advanced:
                stack.pop()
                if stack:
                    parent, parent_in, _ = stack[-1]
                    low[parent] = min(low[parent], low[vertex])
                    if low[vertex] > disc[parent]:
                        result.append(in_edge)  # type: ignore[arg-type]
    return frozenset(result)


def contract(base: Multigraph, reserve: Iterable[Edge]) -> ContractedGraph:
    """Contract each component of ``base`` to a vertex and remap ``reserve``.

    The contracted graph has one vertex per component of ``base``; every
    reserve edge reappears with its endpoints replaced by the component
    indices that contain them, keeping its id and weight. Reserve edges with
    both endpoints in one component become loops.
    """
    labels = components(base)
    contracted = []
    origin = []
    for e in sorted(reserve, key=lambda e: e.id):
        contracted.append(Edge(e.id, labels[e.u], labels[e.v], e.weight))
        origin.append((e.id, e.id))
    return ContractedGraph(
        component_count=max(labels) + 1,
        component_of=labels,
        edges=tuple(contracted),
        origin=tuple(origin),
    )
