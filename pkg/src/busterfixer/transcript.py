"""Series transcripts: fixed-width tables, parsing, and replay checks.

A transcript shows one series round by round with the schema

    j | G_j | R_j | B_j | F_j | sum|B| | sum w(F) | Winner

where G_j and R_j are the graph and reserve entering round j, the sum
columns are running totals, and each row's winner cell names who would
have won had the series ended there (so only a final Buster-win row says
"Buster"). Sets are rendered in id-sorted order and columns are padded to
the table's own widths, making the output byte-deterministic and suitable
for golden-file comparison. Header comment lines carry the scenario name
and the policy/seed identifiers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import (
    QUIT,
    Position,
    Series,
    Winner,
    play_series,
    replay_positions,
    scripted_buster,
    scripted_fixer,
    series_totals,
)
from .errors import ScenarioParseError
from .graph import format_weight

_COLUMNS = ("j", "G_j", "R_j", "B_j", "F_j", "sum|B|", "sum w(F)", "Winner")


def _render_ids(ids: frozenset[str]) -> str:
    return "{" + ",".join(sorted(ids)) + "}"


def _parse_ids(text: str) -> frozenset[str]:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ScenarioParseError(f"expected an id set, got {text!r}")
    inner = text[1:-1]
    return frozenset(part for part in inner.split(",") if part)


def render_transcript(s: Series, *, scenario: str = "scenario", policy: str = "") -> str:
    """Render one series as a deterministic fixed-width text table.

    A zero-round series renders as the headers plus a winner line only.
    """
    header = [f"# scenario: {scenario}"]
    if policy:
        header.append(f"# policy: {policy}")

    if not s.rounds:
        return "\n".join(header + [" | ".join(_COLUMNS), f"Winner: {s.outcome.value}"]) + "\n"

    positions = replay_positions(s)
    rows = []
    busted_total = 0
    cost_total = Fraction(0)
    for idx, record in enumerate(s.rounds):
        entering = positions[idx]
        busted_total += len(record.busted)
        cost_total += s.initial.reserve.weight(record.fixed)
        final = idx == len(s.rounds) - 1
        winner = s.outcome.value if final else Winner.FIXER.value
        rows.append(
            (
                str(idx + 1),
                _render_ids(entering.graph.ids),
                _render_ids(entering.reserve.ids),
                _render_ids(record.busted),
                _render_ids(record.fixed),
                str(busted_total),
                format_weight(cost_total),
                winner,
            )
        )

    widths = [max(len(col), *(len(row[i]) for row in rows)) for i, col in enumerate(_COLUMNS)]
    lines = header[:]
    lines.append(" | ".join(col.ljust(widths[i]) for i, col in enumerate(_COLUMNS)).rstrip())
    for row in rows:
        lines.append(" | ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TranscriptRow:
    round_index: int
    graph_ids: frozenset[str]
    reserve_ids: frozenset[str]
    busted: frozenset[str]
    fixed: frozenset[str]
    busted_total: int
    cost_total: Fraction
    winner: str


@dataclass(frozen=True)
class ParsedTranscript:
    scenario_name: str
    policy: str
    rows: tuple[TranscriptRow, ...]
    winner: str


def parse_transcript(text: str) -> ParsedTranscript:
    """Parse a rendered transcript back into structured rows."""
    scenario_name = ""
    policy = ""
    rows: list[TranscriptRow] = []
    saw_header = False
    winner = ""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("# scenario:"):
            scenario_name = line.split(":", 1)[1].strip()
            continue
        if line.startswith("# policy:"):
            policy = line.split(":", 1)[1].strip()
            continue
        if line.startswith("#"):
            continue
        if line.startswith("Winner:"):
            winner = line.split(":", 1)[1].strip()
            continue
        if line.split("|")[0].strip() == "j":
            # the sum|B| column name contains pipes, so match by first cell only
            saw_header = True
            continue
        cells = [cell.strip() for cell in line.split("|")]
        if len(cells) != len(_COLUMNS):
            raise ScenarioParseError("malformed transcript row", number)
        try:
            row = TranscriptRow(
                round_index=int(cells[0]),
                graph_ids=_parse_ids(cells[1]),
                reserve_ids=_parse_ids(cells[2]),
                busted=_parse_ids(cells[3]),
                fixed=_parse_ids(cells[4]),
                busted_total=int(cells[5]),
                cost_total=Fraction(cells[6]),
                winner=cells[7],
            )
        except ValueError as exc:
            raise ScenarioParseError(str(exc), number) from exc
        rows.append(row)
        winner = row.winner
    if not saw_header:
        raise ScenarioParseError("transcript has no column header")
    return ParsedTranscript(scenario_name=scenario_name, policy=policy, rows=tuple(rows), winner=winner)


def replay_transcript(initial: Position, parsed: ParsedTranscript) -> Series:
    """Re-execute a transcript and re-assert every recorded column.

    The busted/fixed columns drive scripted policies through the engine;
    the entering graph and reserve sets, the running totals, and the winner
    of every row must reproduce exactly. Any difference raises
    ``ScenarioParseError`` describing the first mismatching row.
    """
    script = [row.busted for row in parsed.rows]
    if parsed.winner == Winner.FIXER.value:
        script.append(QUIT)
    series = play_series(
        initial,
        scripted_buster(script),
        scripted_fixer([row.fixed for row in parsed.rows]),
    )
    if series.outcome.value != parsed.winner:
        raise ScenarioParseError(
            f"replayed winner {series.outcome.value} != recorded {parsed.winner}"
        )
    positions = replay_positions(series)
    busted_total = 0
    cost_total = Fraction(0)
    for idx, row in enumerate(parsed.rows):
        entering = positions[idx]
        busted_total += len(row.busted)
        cost_total += initial.reserve.weight(row.fixed)
        mismatches = []
        if entering.graph.ids != row.graph_ids:
            mismatches.append("graph")
        if entering.reserve.ids != row.reserve_ids:
            mismatches.append("reserve")
        if busted_total != row.busted_total:
            mismatches.append("sum|B|")
        if cost_total != row.cost_total:
            mismatches.append("sum w(F)")
        if mismatches:
            raise ScenarioParseError(
                f"round {idx + 1}: transcript disagrees with replay on {', '.join(mismatches)}"
            )
    totals = series_totals(series)
    final = parsed.rows[-1] if parsed.rows else None
    if final and (totals.total_busted != final.busted_total or totals.fix_cost != final.cost_total):
        raise ScenarioParseError("transcript totals disagree with replayed series totals")
    return series
