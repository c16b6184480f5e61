#!/usr/bin/env python3
"""
Reidemeister Moves on Free Links

Detection and application of the three Reidemeister moves on chord diagrams,
greedy simplification, and bounded breadth-first orbit and equivalence search.

Move sites are addressed by slots and gaps of the current link:
    R1Remove  ((comp, i),)                 loop occupying slots i, i+1
    R1Add     ((comp, gap),)               new loop inserted at gap
    R2Remove  ((comp, i), (comp', j))      bigon pairs starting at i and j
    R2Add     ((comp, gap), (comp', gap')) pairs inserted at two gaps
    R3        three (comp, i) pair starts  the small triangle
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Set, Tuple

from lib.diagram import FreeLink, Slot, as_link, canonical_form, canonicalize
from lib.exceptions import BudgetExceededError, SiteInvalidError

logger = logging.getLogger(__name__)


class MoveKind(Enum):
    """Reidemeister move kinds"""
    R1_ADD = "R1Add"
    R1_REMOVE = "R1Remove"
    R2_ADD = "R2Add"
    R2_REMOVE = "R2Remove"
    R3 = "R3"


@dataclass(frozen=True)
class MoveDescriptor:
    """A move together with its site and the chord correspondence"""
    kind: MoveKind
    chords: Tuple[str, ...]
    site: Tuple[Slot, ...]
    same_order: bool = False
    correspondence: Dict[str, str] = field(default_factory=dict, compare=False)

    def image(self, chord: str) -> Optional[str]:
        """Chord identifier after the move, None for removed chords"""
        if self.kind in (MoveKind.R1_REMOVE, MoveKind.R2_REMOVE) and chord in self.chords:
            return None
        return self.correspondence.get(chord, chord)

    def to_json(self) -> Dict[str, Any]:
        data = {
            "kind": self.kind.value,
            "chords": list(self.chords),
            "site": [list(s) for s in self.site],
        }
        if self.kind is MoveKind.R2_ADD:
            data["same"] = self.same_order
        return data


class Verdict(Enum):
    EQUIVALENT = "Equivalent"
    DISTINCT = "Distinct"
    UNKNOWN = "Unknown"


@dataclass
class EquivalenceResult:
    """Outcome of a bounded equivalence check"""
    verdict: Verdict
    explored: int = 0
    invariants: Optional[Tuple[int, int]] = None
    reason: str = ""

    def to_json(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "explored": self.explored,
            "invariants": list(self.invariants) if self.invariants else None,
            "reason": self.reason,
        }


def _identity(link: FreeLink, dropped: Iterable[str] = ()) -> Dict[str, str]:
    skip = set(dropped)
    return {c: c for c in link.chords if c not in skip}


def fresh_chord_ids(link: FreeLink, count: int, taken: Iterable[str] = ()) -> List[str]:
    """Unused numeric chord identifiers"""
    used = set(link.chords) | set(taken)
    numbers = [int(c) for c in used if c.isdigit()]
    start = max(numbers, default=0) + 1
    ids = []
    while len(ids) < count:
        if str(start) not in used:
            ids.append(str(start))
        start += 1
    return ids


def _pair_slots(link: FreeLink, comp: int, i: int) -> Tuple[Slot, Slot]:
    m = len(link.components[comp])
    return (comp, i), (comp, (i + 1) % m)


def _adjacent_pairs(link: FreeLink) -> List[Tuple[Slot, Tuple[str, str]]]:
    """Every pair of cyclically adjacent slots carrying two distinct chords"""
    pairs = []
    for comp, seq in enumerate(link.components):
        m = len(seq)
        if m < 2:
            continue
        for i in range(m if m > 2 else 1):
            a, b = seq[i], seq[(i + 1) % m]
            if a != b:
                pairs.append(((comp, i), (a, b)))
    return pairs


def find_r1_sites(link: FreeLink) -> List[MoveDescriptor]:
    """One R1Remove per chord whose endpoints are cyclically adjacent"""
    sites = []
    found: Set[str] = set()
    for comp, seq in enumerate(link.components):
        m = len(seq)
        if m < 2:
            continue
        for i in range(m):
            chord = seq[i]
            if chord == seq[(i + 1) % m] and chord not in found:
                found.add(chord)
                sites.append(
                    MoveDescriptor(
                        MoveKind.R1_REMOVE,
                        (chord,),
                        ((comp, i),),
                        correspondence=_identity(link, [chord]),
                    )
                )
    return sites


def find_r2_sites(link: FreeLink) -> List[MoveDescriptor]:
    """One R2Remove per chord pair forming a bigon, in either variant"""
    sites = []
    found: Set[frozenset] = set()
    pairs = _adjacent_pairs(link)
    for (start_a, chords_a), (start_b, chords_b) in combinations(pairs, 2):
        key = frozenset(chords_a)
        if key != frozenset(chords_b) or key in found:
            continue
        slots_a = set(_pair_slots(link, *start_a))
        slots_b = set(_pair_slots(link, *start_b))
        if slots_a & slots_b:
            continue
        found.add(key)
        sites.append(
            MoveDescriptor(
                MoveKind.R2_REMOVE,
                chords_a,
                (start_a, start_b),
                correspondence=_identity(link, chords_a),
            )
        )
    return sites


def find_r3_sites(link: FreeLink) -> List[MoveDescriptor]:
    """Small triangles: three adjacent pairs covering the three chord pairs"""
    sites = []
    pairs = _adjacent_pairs(link)
    for triple in combinations(pairs, 3):
        chord_sets = [frozenset(chords) for _, chords in triple]
        if len(set(chord_sets)) != 3:
            continue
        chords = frozenset().union(*chord_sets)
        if len(chords) != 3:
            continue
        slot_sets = [set(_pair_slots(link, *start)) for start, _ in triple]
        if any(a & b for a, b in combinations(slot_sets, 2)):
            continue
        sites.append(
            MoveDescriptor(
                MoveKind.R3,
                tuple(sorted(chords, key=link.chords.index)),
                tuple(start for start, _ in triple),
                correspondence=_identity(link),
            )
        )
    return sites


def find_r1_add_sites(link: FreeLink, fresh: Optional[str] = None) -> List[MoveDescriptor]:
    chord = fresh or fresh_chord_ids(link, 1)[0]
    return [
        MoveDescriptor(
            MoveKind.R1_ADD, (chord,), ((comp, gap),), correspondence=_identity(link)
        )
        for comp in range(len(link.components))
        for gap in link.gaps(comp)
    ]


def find_r2_add_sites(link: FreeLink) -> List[MoveDescriptor]:
    p, q = fresh_chord_ids(link, 2)
    gaps = [(comp, gap) for comp in range(len(link.components)) for gap in link.gaps(comp)]
    sites = []
    for index, first in enumerate(gaps):
        for second in gaps[index:]:
            for same in (True, False):
                sites.append(
                    MoveDescriptor(
                        MoveKind.R2_ADD,
                        (p, q),
                        (first, second),
                        same_order=same,
                        correspondence=_identity(link),
                    )
                )
    return sites


def all_moves(link: FreeLink, max_chords: Optional[int] = None) -> List[MoveDescriptor]:
    """Every applicable move; additions only while within max_chords"""
    moves = find_r1_sites(link) + find_r2_sites(link) + find_r3_sites(link)
    if max_chords is None or link.num_chords + 1 <= max_chords:
        moves += find_r1_add_sites(link)
    if max_chords is None or link.num_chords + 2 <= max_chords:
        moves += find_r2_add_sites(link)
    return moves


def _check_component(link: FreeLink, comp: int) -> Tuple[str, ...]:
    if not 0 <= comp < len(link.components):
        raise SiteInvalidError(f"No component {comp} in {link}")
    return link.components[comp]


def _check_pair(link: FreeLink, start: Slot, expected: Iterable[str]) -> None:
    comp, i = start
    seq = _check_component(link, comp)
    if len(seq) < 2 or not 0 <= i < len(seq):
        raise SiteInvalidError(f"No adjacent pair at {start} in {link}")
    held = {seq[i], seq[(i + 1) % len(seq)]}
    if held != set(expected):
        raise SiteInvalidError(f"Pair at {start} holds {sorted(held)}")


def _insert(link: FreeLink, insertions: List[Tuple[Slot, Tuple[str, ...], int]]) -> FreeLink:
    """Insert token blocks at gaps; equal gaps keep the given priority order"""
    components = [list(seq) for seq in link.components]
    ordered = sorted(insertions, key=lambda item: (item[0][0], item[0][1], item[2]), reverse=True)
    for (comp, gap), tokens, _ in ordered:
        components[comp][gap:gap] = list(tokens)
    return FreeLink(tuple(tuple(seq) for seq in components))


def apply_move(link: FreeLink, move: MoveDescriptor) -> FreeLink:
    """
    Rewrite a link by one Reidemeister move

    Raises:
        SiteInvalidError: when the descriptor does not fit the link
    """
    kind = move.kind

    if kind is MoveKind.R1_REMOVE:
        ((comp, i),) = move.site
        (chord,) = move.chords
        _check_pair(link, (comp, i), [chord])
        seq = link.components[comp]
        if not (seq[i] == seq[(i + 1) % len(seq)] == chord):
            raise SiteInvalidError(f"Chord {chord} is not a loop at {(comp, i)}")
        return link.delete_chords([chord])

    if kind is MoveKind.R1_ADD:
        ((comp, gap),) = move.site
        (chord,) = move.chords
        _check_component(link, comp)
        if not 0 <= gap <= len(link.components[comp]) or link.has_chord(chord):
            raise SiteInvalidError(f"Cannot add loop {chord} at {(comp, gap)}")
        return _insert(link, [((comp, gap), (chord, chord), 0)])

    if kind is MoveKind.R2_REMOVE:
        start_a, start_b = move.site
        _check_pair(link, start_a, move.chords)
        _check_pair(link, start_b, move.chords)
        if set(_pair_slots(link, *start_a)) & set(_pair_slots(link, *start_b)):
            raise SiteInvalidError(f"Bigon pairs overlap at {move.site}")
        return link.delete_chords(move.chords)

    if kind is MoveKind.R2_ADD:
        (comp_a, gap_a), (comp_b, gap_b) = move.site
        p, q = move.chords
        for comp, gap in move.site:
            _check_component(link, comp)
            if not 0 <= gap <= len(link.components[comp]):
                raise SiteInvalidError(f"Gap {gap} is not valid on component {comp}")
        if p == q or link.has_chord(p) or link.has_chord(q):
            raise SiteInvalidError(f"Chords {p}, {q} are not fresh")
        second = (p, q) if move.same_order else (q, p)
        return _insert(
            link,
            [((comp_a, gap_a), (p, q), 0), ((comp_b, gap_b), second, 1)],
        )

    if kind is MoveKind.R3:
        if len(move.site) != 3:
            raise SiteInvalidError("R3 needs three adjacent pairs")
        slot_sets = []
        for start in move.site:
            comp, i = start
            _check_component(link, comp)
            seq = link.components[comp]
            if len(seq) < 2 or not 0 <= i < len(seq):
                raise SiteInvalidError(f"No adjacent pair at {start}")
            held = {seq[i], seq[(i + 1) % len(seq)]}
            if len(held) != 2 or not held <= set(move.chords):
                raise SiteInvalidError(f"Pair at {start} is not part of the triangle")
            slot_sets.append((held, set(_pair_slots(link, *start))))
        if len({frozenset(h) for h, _ in slot_sets}) != 3 or any(
            a & b for (_, a), (_, b) in combinations(slot_sets, 2)
        ):
            raise SiteInvalidError(f"Pairs {move.site} do not form a triangle")

        components = [list(seq) for seq in link.components]
        for comp, i in move.site:
            j = (i + 1) % len(components[comp])
            components[comp][i], components[comp][j] = components[comp][j], components[comp][i]
        return FreeLink(tuple(tuple(seq) for seq in components))

    raise SiteInvalidError(f"Unknown move kind: {kind}")


def _reinsertion(link: FreeLink, comp: int, starts: List[int], removed: Set[str]):
    """Gap and ordering key of pairs starting at ``starts`` once ``removed`` is gone"""
    seq = link.components[comp]
    m = len(seq)
    survivors = [i for i, token in enumerate(seq) if token not in removed]
    result = []
    for start in starts:
        if not survivors:
            result.append((0, start))
            continue
        s0 = survivors[0]
        k = (start - s0) % m
        gap = sum(1 for s in survivors if (s - s0) % m < k) % len(survivors)
        result.append((gap, k))
    return result


def inverse_move(link: FreeLink, move: MoveDescriptor) -> MoveDescriptor:
    """Descriptor that undoes ``move`` on ``apply_move(link, move)``"""
    after = apply_move(link, move)
    kind = move.kind

    if kind is MoveKind.R1_REMOVE:
        ((comp, i),) = move.site
        ((gap, _),) = _reinsertion(link, comp, [i], set(move.chords))
        return MoveDescriptor(
            MoveKind.R1_ADD, move.chords, ((comp, gap),), correspondence=_identity(after)
        )

    if kind is MoveKind.R1_ADD:
        ((comp, gap),) = move.site
        return MoveDescriptor(
            MoveKind.R1_REMOVE,
            move.chords,
            ((comp, gap),),
            correspondence=_identity(after, move.chords),
        )

    if kind is MoveKind.R2_REMOVE:
        removed = set(move.chords)
        placed = []
        for comp, start in move.site:
            ((gap, order),) = _reinsertion(link, comp, [start], removed)
            seq = link.components[comp]
            tokens = (seq[start], seq[(start + 1) % len(seq)])
            placed.append(((comp, gap), order, tokens))
        first, second = placed
        if first[0] == second[0] and second[1] < first[1]:
            first, second = second, first
        return MoveDescriptor(
            MoveKind.R2_ADD,
            first[2],
            (first[0], second[0]),
            same_order=first[2][0] == second[2][0],
            correspondence=_identity(after),
        )

    if kind is MoveKind.R2_ADD:
        wanted = frozenset(move.chords)
        for site in find_r2_sites(after):
            if frozenset(site.chords) == wanted:
                return site
        raise SiteInvalidError(f"Added bigon {move.chords} not found in {after}")

    return MoveDescriptor(
        MoveKind.R3, move.chords, move.site, correspondence=_identity(after)
    )


def simplify(link: FreeLink) -> FreeLink:
    """Apply R1/R2 removals until none applies; result is canonical"""
    current = canonicalize(link)
    steps = 0
    while True:
        sites = find_r1_sites(current) or find_r2_sites(current)
        if not sites:
            break
        current = canonicalize(apply_move(current, sites[0]))
        steps += 1
    logger.debug(f"Simplified {link} to {current} in {steps} steps")
    return current


def _neighbours(code: str, max_chords: int) -> List[str]:
    link = as_link(code)
    return sorted({canonical_form(apply_move(link, m)) for m in all_moves(link, max_chords)})


def _bfs(
    start: FreeLink,
    max_chords: int,
    max_nodes: int,
    workers: int = 1,
    target: Optional[str] = None,
) -> Tuple[Set[str], bool]:
    origin = canonical_form(start)
    seen = {origin}
    if origin == target:
        return seen, True

    frontier = [origin]
    depth = 0
    while frontier:
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                expanded = list(executor.map(lambda c: _neighbours(c, max_chords), frontier))
        else:
            expanded = [_neighbours(code, max_chords) for code in frontier]

        next_frontier = []
        for neighbours in expanded:
            for code in neighbours:
                if code in seen:
                    continue
                if len(seen) >= max_nodes:
                    logger.warning(f"Orbit search stopped at {max_nodes} nodes")
                    raise BudgetExceededError(
                        f"Orbit of {origin} exceeds {max_nodes} nodes", partial=seen
                    )
                seen.add(code)
                next_frontier.append(code)
                if code == target:
                    return seen, True

        depth += 1
        frontier = sorted(next_frontier)
        logger.debug(f"Orbit layer {depth}: {len(frontier)} new, {len(seen)} total")

    return seen, False


def orbit(link, max_chords: int, max_nodes: int, workers: int = 1) -> Set[str]:
    """
    Canonical codes reachable by moves without exceeding max_chords

    Raises:
        BudgetExceededError: more than max_nodes codes; ``partial`` holds them
    """
    if max_chords <= 0 or max_nodes <= 0:
        raise ValueError("Orbit bounds must be positive")
    seen, _ = _bfs(as_link(link), max_chords, max_nodes, workers)
    logger.info(f"Orbit closed with {len(seen)} diagrams")
    return seen


def are_equivalent_bounded(
    d1, d2, max_chords: int, max_nodes: int, workers: int = 1
) -> EquivalenceResult:
    """Equivalent if orbits meet, Distinct on an invariant mismatch, else Unknown"""
    from lib.invariant import invariant_l  # lazy import to avoid circular dependency

    first, second = as_link(d1), as_link(d2)
    target = canonical_form(second)

    if len(first.components) != len(second.components):
        return EquivalenceResult(
            Verdict.DISTINCT,
            reason=f"{len(first.components)} vs {len(second.components)} components",
        )

    invariants = None
    if first.is_knot:
        invariants = (invariant_l(first).L, invariant_l(second).L)
        if invariants[0] != invariants[1]:
            return EquivalenceResult(
                Verdict.DISTINCT,
                invariants=invariants,
                reason=f"L differs: {invariants[0]} vs {invariants[1]}",
            )

    try:
        seen, found = _bfs(first, max_chords, max_nodes, workers, target=target)
    except BudgetExceededError as e:
        return EquivalenceResult(
            Verdict.UNKNOWN, len(e.partial), invariants, "node budget exhausted"
        )

    if found:
        return EquivalenceResult(Verdict.EQUIVALENT, len(seen), invariants, "orbits meet")
    return EquivalenceResult(
        Verdict.UNKNOWN, len(seen), invariants, "not reached within chord bound"
    )
