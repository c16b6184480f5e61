#!/usr/bin/env python3
"""
Census of Small Free Knot Diagrams

Runs the exhaustive property checks over every one-component chord diagram
up to a given number of chords: odd chord counts, L modulo 4 (and a tally
modulo 8), basepoint independence, invariance and parity axioms under every
removal move and R3 move, invariance under every R1 and R2 addition, and the
behaviour of F.
"""

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List

from lib.diagram import FreeLink, canonicalize, enumerate_knot_diagrams
from lib.invariant import basepoints, f_map, invariant_l
from lib.moves import (
    apply_move,
    find_r1_add_sites,
    find_r1_sites,
    find_r2_add_sites,
    find_r2_sites,
    find_r3_sites,
)
from lib.parity import check_parity_axioms, gaussian_parity, justified_parity

logger = logging.getLogger(__name__)


@dataclass
class CensusRow:
    """Counts for all diagrams with n chords"""
    n: int
    diagrams: int = 0
    moves_checked: int = 0
    additions_checked: int = 0
    odd_count_failures: int = 0
    mod4_failures: int = 0
    mod8_divisible: int = 0
    basepoint_failures: int = 0
    move_failures: int = 0
    axiom_violations: int = 0
    fmap_failures: int = 0
    l_distribution: Counter = field(default_factory=Counter)

    @property
    def failures(self) -> int:
        return (
            self.odd_count_failures
            + self.mod4_failures
            + self.basepoint_failures
            + self.move_failures
            + self.axiom_violations
            + self.fmap_failures
        )

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "diagrams": self.diagrams,
            "movesChecked": self.moves_checked,
            "additionsChecked": self.additions_checked,
            "oddCountFailures": self.odd_count_failures,
            "mod4Failures": self.mod4_failures,
            "mod8Divisible": self.mod8_divisible,
            "basepointFailures": self.basepoint_failures,
            "moveFailures": self.move_failures,
            "axiomViolations": self.axiom_violations,
            "fmapFailures": self.fmap_failures,
            "L": {str(k): v for k, v in sorted(self.l_distribution.items())},
        }


@dataclass
class CensusReport:
    rows: List[CensusRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(row.failures == 0 for row in self.rows)

    def to_json(self) -> Dict[str, Any]:
        return {"ok": self.ok, "rows": [row.to_json() for row in self.rows]}


def _check_diagram(link: FreeLink, row: CensusRow) -> None:
    result = invariant_l(link)
    value = result.L
    row.l_distribution[value] += 1

    if len(result.parity.odd_chords()) % 2:
        row.odd_count_failures += 1
    if value % 4:
        row.mod4_failures += 1
    if value % 8 == 0:
        row.mod8_divisible += 1

    if any(invariant_l(link, base).L != value for base in basepoints(link)):
        row.basepoint_failures += 1

    for move in find_r1_sites(link) + find_r2_sites(link) + find_r3_sites(link):
        after = apply_move(link, move)
        row.moves_checked += 1
        if invariant_l(after).L != value:
            row.move_failures += 1
        row.axiom_violations += len(
            check_parity_axioms(
                link, after, move, justified_parity(link), justified_parity(after)
            )
        )

    for move in find_r1_add_sites(link) + find_r2_add_sites(link):
        row.additions_checked += 1
        if invariant_l(apply_move(link, move)).L != value:
            row.move_failures += 1

    image = f_map(link)
    all_even = not gaussian_parity(link).odd_chords()
    if all_even != (image == canonicalize(link)):
        row.fmap_failures += 1
    elif not all_even and image.num_chords >= link.num_chords:
        row.fmap_failures += 1


def census_row(n: int) -> CensusRow:
    row = CensusRow(n)
    for link in enumerate_knot_diagrams(n):
        row.diagrams += 1
        _check_diagram(link, row)
    logger.info(
        f"Census n={n}: {row.diagrams} diagrams, {row.moves_checked} moves, "
        f"{row.additions_checked} additions, "
        f"{row.failures} failures"
    )
    return row


def run_census(max_chords: int, workers: int = 1) -> CensusReport:
    """Check every diagram with at most max_chords chords"""
    if max_chords < 0:
        raise ValueError("max_chords must be nonnegative")

    sizes = list(range(max_chords + 1))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(census_row, sizes))
    else:
        rows = [census_row(n) for n in sizes]
    return CensusReport(rows)
