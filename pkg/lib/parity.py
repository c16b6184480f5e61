#!/usr/bin/env python3
"""
Gaussian Parity and Justified Parity

Chord labels Even / OddB / OddBPrime computed from linking counts, the parity
axiom checker for single Reidemeister moves, and the cocycle view of parity
on one-component framed 4-graphs.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Union

import numpy as np

from lib.diagram import EdgeCycle, FreeLink, interlacement_matrix
from lib.exceptions import NotACycleError, UnknownChordError
from lib.moves import MoveDescriptor, MoveKind

logger = logging.getLogger(__name__)


class ParityLabel(Enum):
    """Parity of a chord, odd chords refined by their justified type"""
    EVEN = "Even"
    ODD_B = "OddB"
    ODD_B_PRIME = "OddBPrime"

    @property
    def letter(self) -> str:
        return _LETTERS[self]

    @property
    def is_odd(self) -> bool:
        return self is not ParityLabel.EVEN

    def flipped(self) -> "ParityLabel":
        """Swap the two odd types; Even is fixed"""
        if self is ParityLabel.ODD_B:
            return ParityLabel.ODD_B_PRIME
        if self is ParityLabel.ODD_B_PRIME:
            return ParityLabel.ODD_B
        return self


_LETTERS = {
    ParityLabel.EVEN: "a",
    ParityLabel.ODD_B: "b",
    ParityLabel.ODD_B_PRIME: "b'",
}


def letter_of(label: ParityLabel) -> str:
    return label.letter


@dataclass(frozen=True)
class ParityTable:
    """Chord identifier to parity label"""
    labels: Dict[str, ParityLabel] = field(default_factory=dict)

    def __getitem__(self, chord: str) -> ParityLabel:
        try:
            return self.labels[chord]
        except KeyError:
            raise UnknownChordError(f"No parity label for chord {chord}")

    def __contains__(self, chord: str) -> bool:
        return chord in self.labels

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def items(self):
        return self.labels.items()

    def odd_chords(self) -> List[str]:
        return [c for c, label in self.labels.items() if label.is_odd]

    def to_json(self) -> Dict[str, str]:
        return {chord: label.value for chord, label in self.labels.items()}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "ParityTable":
        return cls({chord: ParityLabel(value) for chord, value in data.items()})


def gaussian_parity(link: FreeLink) -> ParityTable:
    """Even iff linked with an even number of chords; odd chords get OddB"""
    chords, matrix = interlacement_matrix(link)
    degrees = matrix.sum(axis=1) % 2
    return ParityTable(
        {
            chord: ParityLabel.ODD_B if degree else ParityLabel.EVEN
            for chord, degree in zip(chords, degrees)
        }
    )


def justified_type(link: FreeLink, table: ParityTable) -> ParityTable:
    """
    Resolve odd chords into their two types

    An odd chord is OddB when it is linked with an even number of even chords,
    OddBPrime otherwise.
    """
    chords, matrix = interlacement_matrix(link)
    even = np.array([not table[c].is_odd for c in chords], dtype=np.uint8)
    even_links = (matrix.astype(np.int64) @ even) % 2 if len(chords) else even

    labels = {}
    for chord, count in zip(chords, even_links):
        if not table[chord].is_odd:
            labels[chord] = ParityLabel.EVEN
        elif count:
            labels[chord] = ParityLabel.ODD_B_PRIME
        else:
            labels[chord] = ParityLabel.ODD_B
    return ParityTable(labels)


def justified_parity(link: FreeLink) -> ParityTable:
    return justified_type(link, gaussian_parity(link))


class ViolationKind(Enum):
    """Parity axiom failures"""
    R1_ODD = "R1OddViolation"
    R2_LABEL_MISMATCH = "R2LabelMismatch"
    R3_PARITY_CHANGED = "R3ParityChanged"
    R3_ODD_COUNT = "R3OddCount"
    R3_TYPE_NOT_FLIPPED = "R3TypeNotFlipped"
    UNTOUCHED_LABEL_CHANGED = "UntouchedLabelChanged"


@dataclass
class Violation:
    """One failed check; kinds come from the parity axioms or the movie verifier"""
    kind: Enum
    message: str
    event: Optional[int] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        data = {"kind": self.kind.value, "message": self.message}
        if self.event is not None:
            data["event"] = self.event
        if self.details:
            data["details"] = self.details
        return data


def check_parity_axioms(
    before: FreeLink,
    after: FreeLink,
    move: MoveDescriptor,
    p_before: Union[ParityTable, Mapping[str, ParityLabel]],
    p_after: Union[ParityTable, Mapping[str, ParityLabel]],
) -> List[Violation]:
    """
    Check parity and justified parity axioms for one move

    Labels are inputs, so the same checker serves Gaussian labels and the
    lifetime labels of a movie.

    Returns:
        List of violations, empty when every axiom holds
    """
    violations: List[Violation] = []
    kind = move.kind

    if kind is MoveKind.R1_REMOVE:
        (chord,) = move.chords
        if p_before[chord].is_odd:
            violations.append(
                Violation(ViolationKind.R1_ODD, f"R1 loop {chord} is odd")
            )
    elif kind is MoveKind.R1_ADD:
        (chord,) = move.chords
        if p_after[chord].is_odd:
            violations.append(
                Violation(ViolationKind.R1_ODD, f"R1 loop {chord} is odd")
            )
    elif kind in (MoveKind.R2_REMOVE, MoveKind.R2_ADD):
        labels = p_before if kind is MoveKind.R2_REMOVE else p_after
        p, q = move.chords
        if labels[p] is not labels[q]:
            violations.append(
                Violation(
                    ViolationKind.R2_LABEL_MISMATCH,
                    f"R2 chords {p}, {q} carry {labels[p].value} and {labels[q].value}",
                )
            )
    elif kind is MoveKind.R3:
        violations.extend(_check_r3(move, p_before, p_after))

    participating = set(move.chords)
    for chord in before.chords:
        if chord in participating:
            continue
        image = move.image(chord)
        if image is None:
            continue
        if p_before[chord] is not p_after[image]:
            violations.append(
                Violation(
                    ViolationKind.UNTOUCHED_LABEL_CHANGED,
                    f"Chord {chord} changed from {p_before[chord].value} "
                    f"to {p_after[image].value}",
                )
            )

    if violations:
        logger.debug(f"{kind.value}: {len(violations)} parity axiom violations")
    return violations


def _check_r3(move, p_before, p_after) -> Iterable[Violation]:
    odd = [c for c in move.chords if p_before[c].is_odd]
    if len(odd) not in (0, 2):
        yield Violation(
            ViolationKind.R3_ODD_COUNT,
            f"R3 triangle {', '.join(move.chords)} has {len(odd)} odd chords",
        )

    for chord in move.chords:
        old, new = p_before[chord], p_after[move.image(chord)]
        if old.is_odd != new.is_odd:
            yield Violation(
                ViolationKind.R3_PARITY_CHANGED,
                f"R3 chord {chord} changed parity",
            )
        elif len(odd) == 2 and old.is_odd and new is not old.flipped():
            yield Violation(
                ViolationKind.R3_TYPE_NOT_FLIPPED,
                f"R3 odd chord {chord} kept type {old.value}",
            )


def whole_graph_cycle(link: FreeLink) -> EdgeCycle:
    seq = link.require_knot("Cocycle")
    return EdgeCycle(edges=frozenset(range(len(seq))), slots=tuple(range(len(seq))))


def cocycle_value(
    link: FreeLink,
    table: ParityTable,
    cycle: Union[EdgeCycle, Iterable[int]],
) -> int:
    """
    Evaluate the parity class on a Z2-cycle

    Sums the parity bits of the vertices where the cycle uses exactly two
    half-edges that are not opposite.
    """
    seq = link.require_knot("Cocycle")
    m = len(seq)
    edges = set(cycle.edges if isinstance(cycle, EdgeCycle) else cycle)

    for edge in edges:
        if not 0 <= edge < m:
            raise NotACycleError(f"Edge {edge} does not exist on {m} slots")

    value = 0
    for chord in link.chords:
        used_slots = []
        for _, slot in link.slot_positions(chord):
            if (slot - 1) % m in edges:
                used_slots.append(slot)
            if slot in edges:
                used_slots.append(slot)
        if len(used_slots) % 2:
            raise NotACycleError(
                f"Vertex {chord} meets the chain in {len(used_slots)} half-edges"
            )
        if len(used_slots) == 2 and used_slots[0] != used_slots[1]:
            value ^= int(table[chord].is_odd)
    return value
