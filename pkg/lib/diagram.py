#!/usr/bin/env python3
"""
Free Link Chord Diagrams

Free links are stored as chord diagrams: an ordered list of cyclic endpoint
sequences, each endpoint slot carrying a chord identifier that occurs exactly
twice overall. The two passages through a chord endpoint are the opposite
half-edge pairs of the framed 4-graph, so no separate graph structure is kept.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Tuple

import numpy as np

from lib.exceptions import (
    EmptyInputError,
    GaussCodeError,
    MultiComponentError,
    SameChordError,
    SiteInvalidError,
    TokenCountError,
    UnknownChordError,
)

logger = logging.getLogger(__name__)

TRIVIAL_TOKEN = "()"
COMPONENT_SEPARATOR = ";"

# (component index, position in the cyclic sequence)
Slot = Tuple[int, int]


@dataclass(frozen=True)
class FreeLink:
    """Multi-component chord diagram"""
    components: Tuple[Tuple[str, ...], ...]

    def __post_init__(self):
        counts = Counter(token for comp in self.components for token in comp)
        for token, count in counts.items():
            if count != 2:
                raise TokenCountError(token, count)

    @cached_property
    def _positions(self) -> Dict[str, Tuple[Slot, ...]]:
        positions: Dict[str, List[Slot]] = {}
        for comp_index, comp in enumerate(self.components):
            for index, token in enumerate(comp):
                positions.setdefault(token, []).append((comp_index, index))
        return {token: tuple(slots) for token, slots in positions.items()}

    @property
    def chords(self) -> Tuple[str, ...]:
        """Chord identifiers in order of first occurrence"""
        return tuple(self._positions)

    @property
    def num_chords(self) -> int:
        return len(self._positions)

    @property
    def is_knot(self) -> bool:
        return len(self.components) == 1

    def has_chord(self, chord: str) -> bool:
        return chord in self._positions

    def slot_positions(self, chord: str) -> Tuple[Slot, Slot]:
        """Both endpoint slots of a chord, in reading order"""
        try:
            first, second = self._positions[chord]
        except KeyError:
            raise UnknownChordError(f"Unknown chord: {chord}")
        return first, second

    def is_self_chord(self, chord: str) -> bool:
        first, second = self.slot_positions(chord)
        return first[0] == second[0]

    def gaps(self, component: int) -> range:
        """Gap g sits before slot g; a zero-slot component has the single gap 0"""
        return range(max(1, len(self.components[component])))

    def require_knot(self, operation: str) -> Tuple[str, ...]:
        if not self.is_knot:
            raise MultiComponentError(
                f"{operation} needs one component, got {len(self.components)}"
            )
        return self.components[0]

    def relabel(self, mapping: Mapping[str, str]) -> "FreeLink":
        return FreeLink(
            tuple(tuple(mapping[t] for t in comp) for comp in self.components)
        )

    def delete_chords(self, chords: Iterable[str]) -> "FreeLink":
        """Remove chords and re-join every circle through their endpoints"""
        doomed = set(chords)
        return FreeLink(
            tuple(
                tuple(t for t in comp if t not in doomed) for comp in self.components
            )
        )

    def to_code(self) -> str:
        return format_components(self.components)

    def __str__(self) -> str:
        return self.to_code()


@dataclass(frozen=True)
class Basepoint:
    """Marked point on a component plus a reading direction"""
    component: int = 0
    gap: int = 0
    reverse: bool = False

    def validate(self, link: FreeLink) -> None:
        if not 0 <= self.component < len(link.components):
            raise SiteInvalidError(f"No component {self.component} in {link}")
        if self.gap not in link.gaps(self.component):
            raise SiteInvalidError(
                f"Gap {self.gap} is not valid on component {self.component}"
            )

    def reading_order(self, link: FreeLink) -> List[int]:
        """Slot positions in the order they are met from this basepoint"""
        self.validate(link)
        m = len(link.components[self.component])
        if self.reverse:
            return [(self.gap - 1 - k) % m for k in range(m)]
        return [(self.gap + k) % m for k in range(m)]


@dataclass(frozen=True)
class EdgeCycle:
    """
    Z2-chain of edges of a one-component framed 4-graph.

    Edge i joins slot i to slot i + 1 (mod the number of slots). ``slots``
    lists the endpoint slots passed through, in traversal order.
    """
    edges: FrozenSet[int]
    slots: Tuple[int, ...] = ()


def format_components(components: Iterable[Iterable]) -> str:
    parts = []
    for comp in components:
        tokens = [str(t) for t in comp]
        parts.append(" ".join(tokens) if tokens else TRIVIAL_TOKEN)
    return f" {COMPONENT_SEPARATOR} ".join(parts)


def parse_gauss_code(text: str) -> FreeLink:
    """
    Parse a Gauss code into a free link

    Args:
        text: whitespace separated chord tokens, components separated by ';',
            '()' for a component without endpoints

    Returns:
        FreeLink with components in input order
    """
    if text is None or not text.strip():
        raise EmptyInputError("Empty Gauss code")

    components = []
    for group in text.split(COMPONENT_SEPARATOR):
        tokens = group.split()
        if not tokens:
            raise EmptyInputError(f"Empty component in Gauss code: {text!r}")
        if tokens == [TRIVIAL_TOKEN]:
            components.append(())
            continue
        if TRIVIAL_TOKEN in tokens:
            raise GaussCodeError(f"'()' must stand alone as a component: {group!r}")
        components.append(tuple(tokens))

    link = FreeLink(tuple(components))
    logger.debug(f"Parsed {link.num_chords} chords on {len(components)} components")
    return link


def as_link(value) -> FreeLink:
    """Accept either a FreeLink or its Gauss code"""
    if isinstance(value, FreeLink):
        return value
    return parse_gauss_code(value)


def linking_mod2(link: FreeLink, a: str, b: str) -> int:
    """1 iff the endpoints of b are separated by the endpoints of a"""
    link.require_knot("Linking")
    if a == b:
        raise SameChordError(f"Cannot link chord {a} with itself")

    (_, p), (_, q) = link.slot_positions(a)
    (_, r), (_, s) = link.slot_positions(b)
    return int((p < r < q) != (p < s < q))


def interlacement_matrix(link: FreeLink) -> Tuple[Tuple[str, ...], np.ndarray]:
    """Chords in first-occurrence order and their linking matrix mod 2"""
    link.require_knot("Interlacement")
    chords = link.chords
    if not chords:
        return chords, np.zeros((0, 0), dtype=np.uint8)

    first = np.array([link.slot_positions(c)[0][1] for c in chords])
    second = np.array([link.slot_positions(c)[1][1] for c in chords])
    lo, hi = first[:, None], second[:, None]
    first_inside = (first[None, :] > lo) & (first[None, :] < hi)
    second_inside = (second[None, :] > lo) & (second[None, :] < hi)
    matrix = (first_inside ^ second_inside).astype(np.uint8)
    np.fill_diagonal(matrix, 0)
    return chords, matrix


def _variants(seq: Tuple[str, ...]) -> List[Tuple[str, ...]]:
    if not seq:
        return [()]
    seen = []
    for oriented in (seq, seq[::-1]):
        for r in range(len(seq)):
            rotated = oriented[r:] + oriented[:r]
            if rotated not in seen:
                seen.append(rotated)
    return seen


def _relabel_key(components: Tuple[Tuple[str, ...], ...]) -> Tuple[Tuple[int, ...], ...]:
    mapping: Dict[str, int] = {}
    key = []
    for comp in components:
        row = []
        for token in comp:
            if token not in mapping:
                mapping[token] = len(mapping) + 1
            row.append(mapping[token])
        key.append(tuple(row))
    return tuple(key)


def canonical_key(link: FreeLink) -> Tuple[Tuple[int, ...], ...]:
    variants = [_variants(comp) for comp in link.components]
    best = None
    for order in itertools.permutations(range(len(variants))):
        for choice in itertools.product(*(variants[i] for i in order)):
            key = _relabel_key(choice)
            if best is None or key < best:
                best = key
    return best


def canonical_form(link: FreeLink) -> str:
    """
    Canonical Gauss code: minimal over rotations, reversals and component
    permutations, with chords renumbered 1..n by first occurrence.
    """
    return format_components(canonical_key(link))


def canonicalize(link: FreeLink) -> FreeLink:
    return FreeLink(
        tuple(tuple(str(t) for t in comp) for comp in canonical_key(link))
    )


def smooth_halves(link: FreeLink, v: str) -> Tuple[EdgeCycle, EdgeCycle]:
    """
    Split the core circle at the two endpoints of v.

    Each half is the arc between the endpoints closed up through the vertex v.
    """
    seq = link.require_knot("Smoothing")
    (_, p), (_, q) = link.slot_positions(v)
    m = len(seq)

    first = EdgeCycle(
        edges=frozenset(range(p, q)),
        slots=tuple(range(p + 1, q)),
    )
    second = EdgeCycle(
        edges=frozenset(list(range(q, m)) + list(range(0, p))),
        slots=tuple((q + 1 + k) % m for k in range(m - (q - p) - 1)),
    )
    return first, second


def _matchings(points: List[int]) -> Iterator[List[Tuple[int, int]]]:
    if not points:
        yield []
        return
    head, rest = points[0], points[1:]
    for i, partner in enumerate(rest):
        for tail in _matchings(rest[:i] + rest[i + 1:]):
            yield [(head, partner)] + tail


def enumerate_knot_diagrams(n: int) -> List[FreeLink]:
    """All one-component chord diagrams with n chords, up to isomorphism"""
    if n == 0:
        return [FreeLink(((),))]

    seen: Dict[str, FreeLink] = {}
    for matching in _matchings(list(range(2 * n))):
        seq = [""] * (2 * n)
        for label, (i, j) in enumerate(matching, start=1):
            seq[i] = seq[j] = str(label)
        link = FreeLink((tuple(seq),))
        code = canonical_form(link)
        if code not in seen:
            seen[code] = canonicalize(link)

    logger.debug(f"Census n={n}: {len(seen)} diagrams")
    return [seen[code] for code in sorted(seen, key=lambda c: canonical_key(seen[c]))]
