"""Round-by-round execution of Buster/Fixer series.

A series starts from a connected graph and a reserve pool of weighted
edges. Each round, Buster removes a nonempty multiset of graph edges. If
even the whole remaining reserve cannot reconnect what is left, Buster
wins and the round's fix is empty by convention. Otherwise Fixer adds a
(possibly empty) reserve subset that restores connectivity, and Buster
may then either continue or quit; quitting ends the series as a Fixer
win. Each round strictly shrinks the combined edge pool, so every series
terminates within ``|G| + |R|`` rounds.

Move sources and response policies are plain callables receiving the
current position and the history of rounds played so far; the ones
provided here (scripted, seeded-random, greedy) are stateless, deriving
everything from their arguments, so series may be played concurrently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import (
    CapExceededError,
    IdentityViolationError,
    IllegalMoveError,
    PolicyError,
)
from .graph import Multigraph, is_connected
from .reconnect import TieBreak, greedy_fixer_move

DEFAULT_MOVE_CAP = 12


class _QuitToken:
    """Buster's explicit decision to stop playing."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "QUIT"


QUIT = _QuitToken()

BusterAction = Union[frozenset, _QuitToken]


class Winner(Enum):
    FIXER = "Fixer"
    BUSTER = "Buster"


@dataclass(frozen=True)
class Position:
    """The pair (current graph, remaining reserve) over a fixed vertex set."""

    graph: Multigraph
    reserve: Multigraph

    def __post_init__(self):
        if self.graph.vertex_count != self.reserve.vertex_count:
            raise ValueError("graph and reserve must share a vertex set")
        overlap = self.graph.ids & self.reserve.ids
        if overlap:
            raise ValueError(f"graph and reserve ids overlap: {sorted(overlap)}")

    @property
    def total_edges(self) -> int:
        return len(self.graph) + len(self.reserve)


@dataclass(frozen=True)
class RoundRecord:
    """One round: the busted graph edges and the fixed reserve edges."""

    busted: frozenset[str]
    fixed: frozenset[str]

    def __post_init__(self):
        if not self.busted:
            raise ValueError("busted must be nonempty")


@dataclass(frozen=True)
class Series:
    """A complete play: initial position, ordered rounds, and the outcome.

    A Buster win means the final round's bust left the graph unreconnectable
    (that round's fix is empty). A Fixer win means Buster quit after the
    last recorded round. A zero-round Fixer win is the degenerate prefix
    used by the optimality machinery.
    """

    initial: Position
    rounds: tuple[RoundRecord, ...]
    outcome: Winner

    @property
    def length(self) -> int:
        return len(self.rounds)


@dataclass(frozen=True)
class OutcomeTriple:
    """(who won, total edges busted, total Fixer spend) for one series.

    This is the complete statistic for superiority comparisons: the sums
    are recoverable from the end state alone, since every busted edge
    leaves the combined pool and every fixed edge moves its weight out of
    the reserve.
    """

    fixer_win: bool
    total_busted: int
    fix_cost: Fraction


BusterPolicy = Callable[[Position, tuple[RoundRecord, ...]], BusterAction]
FixerPolicy = Callable[[Position, frozenset, tuple[RoundRecord, ...]], frozenset]


def apply_round(p: Position, busted: frozenset[str], fixed: frozenset[str]) -> Position:
    """Advance one round: remove ``busted`` from the graph, move ``fixed`` in.

    Connectivity of the result is deliberately not checked here; the
    verifier needs to build positions from responses that fail, so
    legality checks live in :func:`play_series` and the enumerators.

    Raises ``IllegalMoveError`` when ``busted`` is not a nonempty subset of
    the graph or ``fixed`` is not a subset of the reserve.
    """
    if not busted:
        raise IllegalMoveError("busted must be nonempty")
    if not busted <= p.graph.ids:
        raise IllegalMoveError(f"busted edges not in graph: {sorted(busted - p.graph.ids)}")
    if not fixed <= p.reserve.ids:
        raise IllegalMoveError(f"fixed edges not in reserve: {sorted(fixed - p.reserve.ids)}")
    moved = tuple(p.reserve.edge(i) for i in sorted(fixed))
    return Position(
        graph=p.graph.without(busted).with_edges(moved),
        reserve=p.reserve.without(fixed),
    )


def buster_wins(p: Position, busted: frozenset[str]) -> bool:
    """True iff no reserve spending can reconnect the graph after ``busted``."""
    if not busted:
        raise IllegalMoveError("busted must be nonempty")
    if not busted <= p.graph.ids:
        raise IllegalMoveError(f"busted edges not in graph: {sorted(busted - p.graph.ids)}")
    everything = p.graph.without(busted).with_edges(p.reserve.edges)
    return not is_connected(everything)


def enumerate_buster_moves(p: Position, cap: int = DEFAULT_MOVE_CAP) -> list[frozenset[str]]:
    """All nonempty sub-multisets of the current graph, smallest first.

    Order is deterministic: by size, then lexicographically on the sorted
    id tuple. The quit action is not part of this enumeration; it is the
    separate :data:`QUIT` token.

    Raises ``CapExceededError`` when the graph has more than ``cap`` edges.
    """
    ids = sorted(p.graph.ids)
    if len(ids) > cap:
        raise CapExceededError(f"graph has {len(ids)} edges, enumeration cap is {cap}")
    moves = []
    for mask in range(1, 1 << len(ids)):
        moves.append(frozenset(i for bit, i in enumerate(ids) if mask >> bit & 1))
    moves.sort(key=lambda m: (len(m), tuple(sorted(m))))
    return moves


def play_series(initial: Position, buster: BusterPolicy, fixer: FixerPolicy) -> Series:
    """Alternate Buster moves and Fixer responses until a win or a quit.

    Buster may quit only after surviving at least one round (a quit before
    any move is a ``PolicyError``). If the graph ever has no edges at all,
    Buster has no legal move and the series ends as a Fixer win. Illegal
    moves from either policy raise ``PolicyError`` with the round index.

    Per-round conservation of the combined pool is asserted; a violation
    raises ``IdentityViolationError`` and indicates an engine bug.
    """
    if not is_connected(initial.graph):
        raise IllegalMoveError("initial graph must be connected")
    rounds: list[RoundRecord] = []
    pos = initial
    while True:
        round_index = len(rounds) + 1
        if len(pos.graph) == 0:
            outcome = Winner.FIXER  # Buster cannot move; forced quit
            break
        action = buster(pos, tuple(rounds))
        if isinstance(action, _QuitToken):
            if not rounds:
                raise PolicyError("Buster may not quit before making any move", round_index)
            outcome = Winner.FIXER
            break
        busted = frozenset(action)
        if not busted or not busted <= pos.graph.ids:
            raise PolicyError("Buster move is not a nonempty subset of the graph", round_index)
        if buster_wins(pos, busted):
            rounds.append(RoundRecord(busted=busted, fixed=frozenset()))
            outcome = Winner.BUSTER
            break
        fixed = frozenset(fixer(pos, busted, tuple(rounds)))
        if not fixed <= pos.reserve.ids:
            raise PolicyError("Fixer response is not a subset of the reserve", round_index)
        before = pos.total_edges
        nxt = apply_round(pos, busted, fixed)
        if not is_connected(nxt.graph):
            raise PolicyError("Fixer response does not reconnect the graph", round_index)
        if nxt.total_edges != before - len(busted):
            raise IdentityViolationError("per-round edge conservation failed")
        if pos.reserve.weight() - nxt.reserve.weight() != pos.reserve.weight(fixed):
            raise IdentityViolationError("per-round reserve weight conservation failed")
        rounds.append(RoundRecord(busted=busted, fixed=fixed))
        pos = nxt
        if len(rounds) > initial.total_edges:
            raise IdentityViolationError("series exceeded its termination bound")
    return Series(initial=initial, rounds=tuple(rounds), outcome=outcome)


def replay_positions(s: Series) -> list[Position]:
    """Entering positions for each round plus the end state, with legality checks.

    Verifies the recorded rounds replay into a legal series: intermediate
    graphs are connected, and a Buster-win outcome matches an unreconnectable
    final bust. Raises ``IllegalMoveError`` on any violation.
    """
    positions = [s.initial]
    pos = s.initial
    for idx, record in enumerate(s.rounds):
        final = idx == len(s.rounds) - 1
        wins = buster_wins(pos, record.busted)
        if wins and not (final and s.outcome is Winner.BUSTER):
            raise IllegalMoveError(f"round {idx + 1}: unreconnectable bust inside a surviving series")
        if wins and record.fixed:
            raise IllegalMoveError(f"round {idx + 1}: Buster-win round must record an empty fix")
        pos = apply_round(pos, record.busted, record.fixed)
        if not wins and not is_connected(pos.graph):
            raise IllegalMoveError(f"round {idx + 1}: fix does not reconnect the graph")
        positions.append(pos)
    if s.outcome is Winner.BUSTER:
        if not s.rounds:
            raise IllegalMoveError("Buster win requires at least one round")
        if not buster_wins(positions[-2], s.rounds[-1].busted):
            raise IllegalMoveError("final round is reconnectable but outcome says Buster won")
    return positions


def series_totals(s: Series) -> OutcomeTriple:
    """The outcome triple, computed two independent ways that must agree.

    Direct route: sum busted cardinalities and fixed weights over rounds.
    End-state route: pool shrinkage ``|G1|+|R1|-|Gend|-|Rend|`` and reserve
    weight drop ``w(R1)-w(Rend)``. Disagreement raises
    ``IdentityViolationError`` (an engine bug, not a caller error).
    """
    direct_busted = sum(len(r.busted) for r in s.rounds)
    direct_cost = sum((s.initial.reserve.weight(r.fixed) for r in s.rounds), Fraction(0))
    end = replay_positions(s)[-1]
    identity_busted = s.initial.total_edges - end.total_edges
    identity_cost = s.initial.reserve.weight() - end.reserve.weight()
    if direct_busted != identity_busted or direct_cost != identity_cost:
        raise IdentityViolationError(
            f"totals identities disagree: direct ({direct_busted}, {direct_cost}) "
            f"vs end-state ({identity_busted}, {identity_cost})"
        )
    return OutcomeTriple(
        fixer_win=s.outcome is Winner.FIXER,
        total_busted=direct_busted,
        fix_cost=direct_cost,
    )


def scripted_buster(actions: Sequence[Iterable[str] | _QuitToken]) -> BusterPolicy:
    """Replay a fixed list of Buster actions; quits when the script runs out."""
    frozen: list[BusterAction] = [
        a if isinstance(a, _QuitToken) else frozenset(a) for a in actions
    ]

    def policy(position: Position, history: tuple[RoundRecord, ...]) -> BusterAction:
        index = len(history)
        if index >= len(frozen):
            return QUIT
        return frozen[index]

    return policy


def random_buster(seed: int, quit_probability: float = 0.15) -> BusterPolicy:
    """Seeded random Buster: uniform nonempty subset, occasional quit.

    Deterministic given (seed, round index, graph ids): the policy keeps no
    state between calls, so replays of the same series are identical.
    """

    def policy(position: Position, history: tuple[RoundRecord, ...]) -> BusterAction:
        ids = sorted(position.graph.ids)
        rng = random.Random(f"{seed}:{len(history)}:{','.join(ids)}")
        if history and rng.random() < quit_probability:
            return QUIT
        mask = rng.randrange(1, 1 << len(ids))
        return frozenset(i for bit, i in enumerate(ids) if mask >> bit & 1)

    return policy


def greedy_fixer(tie_break: TieBreak | None = None) -> FixerPolicy:
    """The cheapest-reconnection policy backed by :func:`greedy_fixer_move`."""

    def policy(position: Position, busted: frozenset[str], history: tuple[RoundRecord, ...]) -> frozenset[str]:
        return greedy_fixer_move(position, busted, tie_break)

    return policy


def scripted_fixer(responses: Sequence[Iterable[str]], then: FixerPolicy | None = None) -> FixerPolicy:
    """Replay fixed responses, then delegate to ``then`` (default: greedy)."""
    frozen = [frozenset(r) for r in responses]
    fallback = then or greedy_fixer()

    def policy(position: Position, busted: frozenset[str], history: tuple[RoundRecord, ...]) -> frozenset[str]:
        index = len(history)
        if index < len(frozen):
            return frozen[index]
        return fallback(position, busted, history)

    return policy
