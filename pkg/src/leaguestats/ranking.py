"""Alternative league tables: rank teams by each descriptor instead of points.

The team with the smallest descriptor value is ranked 1. Ranks are dense
integers 1..20 with no shared ranks.

Tie-breaking
------------
Two rules are available:

``"published"`` (default)
    Ratio, profit and expenditure ties go to the higher-placed team (smaller
    official position). Ties in the two transfer-spend columns are broken by
    smaller foreign spend, then by team name. This is the rule under which
    every printed re-rank column of the eight corpus seasons is reproduced.

``"position"``
    Every tie goes to the higher-placed team.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .corpus import DESCRIPTORS, Descriptor, SeasonTable, TeamSeasonRecord

TIEBREAKS = ("published", "position")

_SPEND = (Descriptor.PLAYER_SPEND, Descriptor.FOREIGN_SPEND)


@dataclass(frozen=True)
class RankTable:
    season: str
    ranks: Mapping[Descriptor, tuple[int, ...]]

    def __getitem__(self, d: Descriptor) -> tuple[int, ...]:
        return self.ranks[d]


def _sort_key(r: TeamSeasonRecord, d: Descriptor, tiebreak: str):
    if tiebreak == "published" and d in _SPEND:
        return (r.value(d), r.foreign_spend, r.team)
    return (r.value(d), r.position)


def rerank(table: SeasonTable, d: Descriptor, tiebreak: str = "published") -> np.ndarray:
    """Rank of each team (indexed by official position) under descriptor ``d``."""
    if d is Descriptor.POINTS:
        raise ValueError("rerank takes one of the five descriptors, not points")
    if tiebreak not in TIEBREAKS:
        raise ValueError(f"tiebreak must be one of {TIEBREAKS}")
    order = sorted(range(len(table.records)), key=lambda i: _sort_key(table.records[i], d, tiebreak))
    ranks = np.empty(len(order), dtype=int)
    ranks[order] = np.arange(1, len(order) + 1)
    return ranks


def rerank_all(table: SeasonTable, tiebreak: str = "published") -> RankTable:
    return RankTable(
        table.season,
        {d: tuple(int(x) for x in rerank(table, d, tiebreak)) for d in DESCRIPTORS},
    )


def official_order(table: SeasonTable) -> list[str]:
    """Teams by descending points; equal points keep the recorded position.

    Goal difference is not in the data, so the stored position is the final
    word on ties.
    """
    recs = sorted(table.records, key=lambda r: (-r.points, r.position))
    return [r.team for r in recs]


def rank_displacement(table: SeasonTable, d: Descriptor, tiebreak: str = "published") -> np.ndarray:
    """Descriptor rank minus official position, per team. Always sums to zero."""
    positions = np.array([r.position for r in table.records])
    return rerank(table, d, tiebreak) - positions
