#!/usr/bin/env python3
"""
Movie Search and Generation

Bounded breadth-first search for slice movies (genus zero movies ending in
the empty level) and a seeded generator of random verified movies.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from lib.cobordism import Event, Movie, advance_link, assign_labels, verify
from lib.diagram import FreeLink, canonical_form
from lib.exceptions import InputError
from lib.invariant import invariant_l
from lib.moves import (
    MoveDescriptor,
    MoveKind,
    all_moves,
    apply_move,
    find_r1_sites,
    find_r2_sites,
    find_r3_sites,
    fresh_chord_ids,
)

logger = logging.getLogger(__name__)


@dataclass
class SliceSearchResult:
    """A verified slice movie, or the reason none was found"""
    movie: Optional[Movie] = None
    obstruction: Optional[int] = None
    explored: int = 0

    @property
    def found(self) -> bool:
        return self.movie is not None

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "result": "Found" if self.found else "NotFoundWithinBounds",
            "explored": self.explored,
        }
        if self.obstruction is not None:
            data["obstruction"] = {"L": self.obstruction}
        if self.movie is not None:
            data["movie"] = self.movie.to_json()
        return data


def _move_event(move: MoveDescriptor) -> Event:
    kind = move.kind
    if kind is MoveKind.R1_REMOVE:
        return Event.r1_remove(move.chords[0])
    if kind is MoveKind.R1_ADD:
        return Event.r1_add(move.site[0], chord=move.chords[0])
    if kind is MoveKind.R2_REMOVE:
        return Event.r2_remove(*move.chords)
    if kind is MoveKind.R2_ADD:
        return Event.r2_add(*move.site, same=move.same_order, chords=move.chords)
    return Event.r3(move.chords, move.site)


def _successors(link: FreeLink, max_chords: int) -> List[Tuple[Event, FreeLink]]:
    """Moves within the chord bound, splits of one circle, deaths of trivial circles"""
    result = []
    for move in all_moves(link, max_chords):
        result.append((_move_event(move), apply_move(link, move)))

    for comp, seq in enumerate(link.components):
        if not seq:
            event = Event.death(comp)
            result.append((event, advance_link(link, event)))
            continue
        for g1 in range(len(seq)):
            for g2 in range(g1 + 1, len(seq)):
                event = Event.saddle((comp, g1), (comp, g2))
                result.append((event, advance_link(link, event)))
    return result


def search_slice_movie(
    knot: FreeLink,
    max_events: int,
    max_chords: int,
    workers: int = 1,
) -> SliceSearchResult:
    """
    Breadth-first search for a verified genus zero movie from knot to nothing

    Knots with L != 0 are reported at once with L as the obstruction.
    Levels are deduplicated by canonical form before any labels exist, so a
    path that later fails to label can hide another path through the same
    level. NotFoundWithinBounds is therefore no proof that no movie exists.
    """
    knot.require_knot("searchSliceMovie")
    value = invariant_l(knot).L
    if value != 0:
        logger.info(f"{knot} has L = {value}; no slice movie exists")
        return SliceSearchResult(obstruction=value)

    seen = {canonical_form(knot)}
    frontier: List[Tuple[FreeLink, List[Event]]] = [(knot, [])]
    explored = 1

    for depth in range(max_events):
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as executor:
                expanded = list(
                    executor.map(lambda item: _successors(item[0], max_chords), frontier)
                )
        else:
            expanded = [_successors(link, max_chords) for link, _ in frontier]

        next_frontier = []
        for (_, path), successors in zip(frontier, expanded):
            for event, nxt in successors:
                candidate = path + [event]
                if not nxt.components:
                    movie = assign_labels(knot, candidate)
                    if movie is not None and verify(movie).ok:
                        logger.info(f"Slice movie of {len(candidate)} events for {knot}")
                        return SliceSearchResult(movie, explored=explored)
                    continue
                code = canonical_form(nxt)
                if code in seen:
                    continue
                seen.add(code)
                explored += 1
                next_frontier.append((nxt, candidate))

        logger.debug(f"Slice search depth {depth + 1}: {len(next_frontier)} new levels")
        frontier = next_frontier
        if not frontier:
            break

    return SliceSearchResult(explored=explored)


@dataclass
class MovieBounds:
    """Size limits for generated movies"""
    max_events: int = 8
    max_chords: int = 4
    max_components: int = 3
    genus: Optional[int] = 0
    max_attempts: int = 20


def _closed(seq) -> bool:
    return all(seq.count(token) == 2 for token in set(seq))


def _loops(link: FreeLink) -> List[Tuple[int, int, str]]:
    """R1 loops whose two slots do not wrap around the end of the sequence"""
    loops = []
    for site in find_r1_sites(link):
        comp, i = site.site[0]
        if i + 1 < len(link.components[comp]):
            loops.append((comp, i, site.chords[0]))
    return loops


def _bigons(link: FreeLink) -> List[Tuple[int, int, int, Tuple[str, str]]]:
    """Bigons on one component with both pairs away from the end of the sequence"""
    bigons = []
    for site in find_r2_sites(link):
        (ca, a), (cb, b) = site.site
        if ca != cb:
            continue
        a, b = sorted((a, b))
        if b >= a + 2 and b + 1 < len(link.components[ca]):
            bigons.append((ca, a, b, site.chords))
    return bigons


def _loop_addition(link: FreeLink, comp: int, i: int, chord: str) -> Tuple[Event, FreeLink]:
    return Event.r1_add((comp, i), chord=chord), link.delete_chords([chord])


def _bigon_addition(link: FreeLink, comp: int, a: int, b: int, chords) -> Tuple[Event, FreeLink]:
    seq = link.components[comp]
    event = Event.r2_add((comp, a), (comp, b - 2), seq[a] == seq[b], (seq[a], seq[a + 1]))
    return event, link.delete_chords(chords)


def _growth(link: FreeLink, comp: int) -> Optional[List[Tuple[Event, FreeLink]]]:
    """
    Additions that grow a trivial circle into component ``comp``, latest first

    Returns None when greedy removal of loops and bigons gets stuck.
    """
    steps = []
    while link.components[comp]:
        loops = [item for item in _loops(link) if item[0] == comp]
        bigons = [item for item in _bigons(link) if item[0] == comp]
        if loops:
            step = _loop_addition(link, *loops[0])
        elif bigons:
            step = _bigon_addition(link, *bigons[0])
        else:
            return None
        steps.append(step)
        link = step[1]
    return steps


@dataclass
class _BackwardBuilder:
    """
    Builds a movie from its last level towards its first

    Every step picks a forward event and an earlier level that the event
    takes exactly onto the current one. Bigons and triangles may span several
    circles; labels are only fixed afterwards by assign_labels, which rejects
    skeletons whose component words leave the x = 0 column.
    """
    rng: np.random.Generator
    bounds: MovieBounds
    link: FreeLink = field(default_factory=lambda: FreeLink(()))
    events: List[Event] = field(default_factory=list)

    def _pick(self, count: int) -> int:
        return int(self.rng.integers(count))

    def push(self, event: Event, earlier: FreeLink) -> None:
        self.events.append(event)
        self.link = earlier

    def options(self) -> List[str]:
        link, bounds = self.link, self.bounds
        count = len(link.components)
        options = []
        if count < bounds.max_components:
            options.append("death")
        if count >= 2:
            options.append("split")
        if 0 < count < bounds.max_components:
            options.append("merge_birth")
        if count and link.num_chords + 1 <= bounds.max_chords:
            options.append("loop")
        if count and link.num_chords + 2 <= bounds.max_chords:
            options.append("bigon")
        if count >= 2 and link.num_chords + 2 <= bounds.max_chords:
            options.append("cross_bigon")
        if self._triangles():
            options.append("triangle")
        if _loops(link):
            options.append("unloop")
        if _bigons(link):
            options.append("unbigon")
        return options

    def step(self, option: str) -> None:
        getattr(self, f"_{option}")()

    def _triangles(self) -> List[MoveDescriptor]:
        return find_r3_sites(self.link)

    def _death(self) -> None:
        k = self._pick(len(self.link.components) + 1)
        components = list(self.link.components)
        components.insert(k, ())
        self.push(Event.death(k), FreeLink(tuple(components)))

    def _split(self) -> None:
        """Forward: one circle splits off the last component"""
        components = list(self.link.components)
        last = components.pop()
        i = self._pick(len(components))
        head = components[i]
        components[i] = head + last
        self.push(Event.saddle((i, 0), (i, len(head))), FreeLink(tuple(components)))

    def _merge_birth(self) -> None:
        """Forward: a circle is born, grows by additions and merges into another"""
        i = self._pick(len(self.link.components))
        seq = self.link.components[i]
        flip = bool(self._pick(2))

        choices = []
        for s in range(len(seq) + 1):
            head, tail = seq[:s], seq[s:]
            if not (_closed(head) and _closed(tail)):
                continue
            components = list(self.link.components)
            components[i] = head
            components.append(tail[::-1] if flip else tail)
            earlier = FreeLink(tuple(components))
            growth = _growth(earlier, len(components) - 1)
            if growth is not None:
                choices.append((earlier, growth))

        if not choices:
            return
        earlier, growth = choices[self._pick(len(choices))]
        last = len(earlier.components) - 1
        self.push(Event.saddle((i, 0), (last, 0), flip), earlier)
        for event, link in growth:
            self.push(event, link)
        self.push(Event.birth(), FreeLink(self.link.components[:-1]))

    def _loop(self) -> None:
        i = self._pick(len(self.link.components))
        gap = self._pick(len(self.link.components[i]) + 1)
        (chord,) = fresh_chord_ids(self.link, 1)
        move = MoveDescriptor(MoveKind.R1_ADD, (chord,), ((i, gap),))
        self.push(Event.r1_remove(chord), apply_move(self.link, move))

    def _bigon(self) -> None:
        i = self._pick(len(self.link.components))
        m = len(self.link.components[i])
        ga, gb = sorted((self._pick(m + 1), self._pick(m + 1)))
        p, q = fresh_chord_ids(self.link, 2)
        move = MoveDescriptor(
            MoveKind.R2_ADD, (p, q), ((i, ga), (i, gb)), same_order=bool(self._pick(2))
        )
        self.push(Event.r2_remove(p, q), apply_move(self.link, move))

    def _cross_bigon(self) -> None:
        """Forward: a bigon with one pair on each of two circles is removed"""
        picked = self.rng.choice(len(self.link.components), size=2, replace=False)
        i, j = sorted(int(k) for k in picked)
        ga = self._pick(len(self.link.components[i]) + 1)
        gb = self._pick(len(self.link.components[j]) + 1)
        p, q = fresh_chord_ids(self.link, 2)
        move = MoveDescriptor(
            MoveKind.R2_ADD, (p, q), ((i, ga), (j, gb)), same_order=bool(self._pick(2))
        )
        self.push(Event.r2_remove(p, q), apply_move(self.link, move))

    def _triangle(self) -> None:
        sites = self._triangles()
        site = sites[self._pick(len(sites))]
        self.push(Event.r3(site.chords, site.site), apply_move(self.link, site))

    def _unloop(self) -> None:
        loops = _loops(self.link)
        self.push(*_loop_addition(self.link, *loops[self._pick(len(loops))]))

    def _unbigon(self) -> None:
        bigons = _bigons(self.link)
        self.push(*_bigon_addition(self.link, *bigons[self._pick(len(bigons))]))

    def handle(self) -> None:
        """Forward: a circle splits in two and the pieces merge again"""
        i = self._pick(len(self.link.components))
        seq = self.link.components[i]
        cuts = [s for s in range(len(seq) + 1) if _closed(seq[:s]) and _closed(seq[s:])]
        if not cuts:
            return
        s = cuts[self._pick(len(cuts))]
        head, tail = seq[:s], seq[s:]

        components = list(self.link.components)
        components[i] = head
        components.append(tail)
        self.push(
            Event.saddle((i, 0), (len(components) - 1, 0)), FreeLink(tuple(components))
        )
        components[i] = head + tail
        components.pop()
        self.push(Event.saddle((i, 0), (i, len(head))), FreeLink(tuple(components)))

    def finish(self) -> Movie:
        while len(self.link.components) > 1:
            self._split()
        return Movie(self.link, list(reversed(self.events)))


def _build(rng: np.random.Generator, bounds: MovieBounds, genus: int) -> Movie:
    builder = _BackwardBuilder(rng, bounds)
    builder.push(Event.death(0), FreeLink(((),)))

    steps = int(rng.integers(max(1, bounds.max_events)))
    handle_at = sorted(int(rng.integers(steps + 1)) for _ in range(genus))
    for index in range(steps + 1):
        while handle_at and handle_at[0] == index:
            handle_at.pop(0)
            builder.handle()
        if index == steps:
            break
        options = builder.options()
        if options:
            builder.step(options[int(rng.integers(len(options)))])
    return builder.finish()


def _fallback() -> Movie:
    """Trivial circle that dies at once"""
    return Movie(FreeLink(((),)), [Event.death(0)])


def random_valid_movie(seed: int, bounds: Optional[MovieBounds] = None) -> Movie:
    """
    Seeded random movie that passes verification

    The movie is built backwards from the empty level and then labelled.
    Attempts that fail to label or verify are retried; after max_attempts
    the fallback movie is returned.
    """
    bounds = bounds or MovieBounds()
    rng = np.random.default_rng(seed)

    for attempt in range(bounds.max_attempts):
        genus = bounds.genus
        if genus is None:
            genus = int(rng.random() < 0.2)
        try:
            skeleton = _build(rng, bounds, genus)
        except InputError as e:
            logger.debug(f"Seed {seed} attempt {attempt} restarted: {e}")
            continue

        movie = assign_labels(skeleton.initial, skeleton.events)
        if movie is None:
            logger.debug(f"Seed {seed} attempt {attempt}: no labelling")
            continue
        report = verify(movie)
        if report.ok and (bounds.genus is None or report.genus == bounds.genus):
            logger.debug(f"Seed {seed}: {len(movie.events)} events, genus {report.genus}")
            return movie

    logger.warning(f"Seed {seed}: no movie after {bounds.max_attempts} attempts, using fallback")
    return _fallback()
