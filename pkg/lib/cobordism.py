#!/usr/bin/env python3
"""
Cobordism Movies

A movie is an initial free knot followed by a sequence of events: the five
Reidemeister moves, births and deaths of trivial circles, and saddles. Every
chord present at some level belongs to a lifetime (a double line of the
spanning surface); parity is fixed per lifetime while the odd type of a chord
may change at R3 moves.

This module replays movies, checks them against the labelling axioms, computes
genus and the Reeb graph of the surface, and projects a movie onto its even
lines.
"""

import json
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from lib.config_manager import validate_document
from lib.diagram import FreeLink, Slot, as_link
from lib.exceptions import (
    DeathOnNonTrivialCircleError,
    FinalLevelNonEmptyError,
    InitialNotKnotError,
    InputError,
    LabellingError,
    MovieFormatError,
    NegativeGenusError,
    NonIntegralGenusError,
    NonZeroFirstCoordinateError,
    PreconditionNotMetError,
    SiteInvalidError,
)
from lib.group import CayleyPoint, eval_word
from lib.invariant import invariant_l
from lib.moves import (
    MoveDescriptor,
    MoveKind,
    apply_move,
    find_r1_sites,
    find_r2_sites,
    find_r3_sites,
    fresh_chord_ids,
)
from lib.parity import ParityLabel, Violation, check_parity_axioms, justified_parity

logger = logging.getLogger(__name__)

DEFAULT_LABEL_BUDGET = 10000


class EventKind(Enum):
    R1_ADD = "R1Add"
    R1_REMOVE = "R1Remove"
    R2_ADD = "R2Add"
    R2_REMOVE = "R2Remove"
    R3 = "R3"
    BIRTH = "Birth"
    DEATH = "Death"
    SADDLE = "Saddle"


_MOVE_KINDS = {
    EventKind.R1_ADD: MoveKind.R1_ADD,
    EventKind.R1_REMOVE: MoveKind.R1_REMOVE,
    EventKind.R2_ADD: MoveKind.R2_ADD,
    EventKind.R2_REMOVE: MoveKind.R2_REMOVE,
    EventKind.R3: MoveKind.R3,
}


class MovieViolationKind(Enum):
    """Failures found while verifying a movie"""
    EVENT_ERROR = "EventError"
    INITIAL_LABEL_MISMATCH = "InitialLabelMismatch"
    MISSING_LABEL = "MissingLabel"
    LIFETIME_PARITY_CHANGED = "LifetimeParityChanged"
    NONZERO_FIRST_COORDINATE = "NonzeroFirstCoordinate"
    COMPONENT_CLASS_CHANGED = "ComponentClassChanged"
    KLM_TRANSITION = "KlmTransition"
    STRICT_LABEL_MISMATCH = "StrictLabelMismatch"
    INITIAL_NOT_KNOT = "InitialNotKnot"
    FINAL_LEVEL_NON_EMPTY = "FinalLevelNonEmpty"
    NON_INTEGRAL_GENUS = "NonIntegralGenus"
    NEGATIVE_GENUS = "NegativeGenus"
    DISCONNECTED_SURFACE = "DisconnectedSurface"


class TheoremOutcome(Enum):
    CONSISTENT = "Consistent"
    COUNTEREXAMPLE = "CounterexampleFlag"


@dataclass(frozen=True)
class LifetimeLabel:
    """Parity of a double line, and its type while it is odd"""
    odd: bool = False
    prime: bool = False

    @property
    def label(self) -> ParityLabel:
        if not self.odd:
            return ParityLabel.EVEN
        return ParityLabel.ODD_B_PRIME if self.prime else ParityLabel.ODD_B

    @classmethod
    def of(cls, label: ParityLabel) -> "LifetimeLabel":
        return cls(label.is_odd, label is ParityLabel.ODD_B_PRIME)

    def to_json(self) -> Dict[str, str]:
        data = {"parity": "Odd" if self.odd else "Even"}
        if self.odd:
            data["type"] = "BPrime" if self.prime else "B"
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "LifetimeLabel":
        parity = data.get("parity")
        kind = data.get("type", "B")
        if parity not in ("Even", "Odd") or kind not in ("B", "BPrime"):
            raise MovieFormatError(f"Invalid lifetime label: {data}")
        odd = parity == "Odd"
        return cls(odd, odd and kind == "BPrime")


def _slot(value, name: str) -> Slot:
    try:
        comp, gap = value
        return int(comp), int(gap)
    except (TypeError, ValueError):
        raise MovieFormatError(f"'{name}' must be a [component, gap] pair, got {value!r}")


@dataclass(frozen=True)
class Event:
    """
    One step of a movie

    Field use by kind:
        R1Add     first = (component, gap), optional chords, lifetime, label
        R1Remove  chords = (chord,)
        R2Add     first, second, same, optional chords, lifetime, label
        R2Remove  chords = (p, q)
        R3        chords, optional pairs (three pair starts)
        Death     component
        Saddle    first, second, flip
    """
    kind: EventKind
    chords: Tuple[str, ...] = ()
    first: Optional[Slot] = None
    second: Optional[Slot] = None
    same: bool = True
    flip: bool = False
    component: Optional[int] = None
    lifetime: Optional[str] = None
    label: Optional[LifetimeLabel] = None
    pairs: Optional[Tuple[Slot, ...]] = None

    @classmethod
    def r1_add(cls, at: Slot, chord: str = None, lifetime: str = None,
               label: LifetimeLabel = None) -> "Event":
        return cls(EventKind.R1_ADD, (chord,) if chord else (), first=tuple(at),
                   lifetime=lifetime, label=label)

    @classmethod
    def r1_remove(cls, chord: str) -> "Event":
        return cls(EventKind.R1_REMOVE, (chord,))

    @classmethod
    def r2_add(cls, first: Slot, second: Slot, same: bool = True,
               chords: Sequence[str] = (), lifetime: str = None,
               label: LifetimeLabel = None) -> "Event":
        return cls(EventKind.R2_ADD, tuple(chords), first=tuple(first),
                   second=tuple(second), same=same, lifetime=lifetime, label=label)

    @classmethod
    def r2_remove(cls, p: str, q: str) -> "Event":
        return cls(EventKind.R2_REMOVE, (p, q))

    @classmethod
    def r3(cls, chords: Sequence[str], pairs: Sequence[Slot] = None) -> "Event":
        return cls(EventKind.R3, tuple(chords),
                   pairs=tuple(tuple(p) for p in pairs) if pairs else None)

    @classmethod
    def birth(cls) -> "Event":
        return cls(EventKind.BIRTH)

    @classmethod
    def death(cls, component: int) -> "Event":
        return cls(EventKind.DEATH, component=component)

    @classmethod
    def saddle(cls, first: Slot, second: Slot, flip: bool = False) -> "Event":
        return cls(EventKind.SADDLE, first=tuple(first), second=tuple(second), flip=flip)

    @property
    def is_morse(self) -> bool:
        return self.kind in (EventKind.BIRTH, EventKind.DEATH, EventKind.SADDLE)

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind.value}
        kind = self.kind
        if kind in (EventKind.R1_ADD, EventKind.R1_REMOVE) and self.chords:
            data["chord"] = self.chords[0]
        elif self.chords:
            data["chords"] = list(self.chords)
        if kind is EventKind.R1_ADD:
            data["at"] = list(self.first)
        if kind in (EventKind.R2_ADD, EventKind.SADDLE):
            data["first"] = list(self.first)
            data["second"] = list(self.second)
        if kind is EventKind.R2_ADD:
            data["same"] = self.same
        if kind is EventKind.SADDLE:
            data["flip"] = self.flip
        if kind is EventKind.DEATH:
            data["component"] = self.component
        if self.pairs:
            data["pairs"] = [list(p) for p in self.pairs]
        if self.lifetime is not None:
            data["lifetime"] = self.lifetime
        if self.label is not None:
            data["label"] = self.label.to_json()
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Event":
        try:
            kind = EventKind(data.get("kind"))
        except ValueError:
            raise MovieFormatError(f"Unknown event kind: {data.get('kind')!r}")

        label = data.get("label")
        common = {
            "lifetime": data.get("lifetime"),
            "label": LifetimeLabel.from_json(label) if label is not None else None,
        }

        if kind is EventKind.R1_REMOVE:
            if "chord" not in data:
                raise MovieFormatError("R1Remove needs 'chord'")
            return cls(kind, (str(data["chord"]),))
        if kind is EventKind.R1_ADD:
            if "at" not in data:
                raise MovieFormatError("R1Add needs 'at'")
            chords = (str(data["chord"]),) if "chord" in data else ()
            return cls(kind, chords, first=_slot(data["at"], "at"), **common)
        if kind is EventKind.R2_REMOVE:
            chords = tuple(str(c) for c in data.get("chords", ()))
            if len(chords) != 2:
                raise MovieFormatError("R2Remove needs two 'chords'")
            return cls(kind, chords)
        if kind is EventKind.R2_ADD:
            chords = tuple(str(c) for c in data.get("chords", ()))
            if chords and len(chords) != 2:
                raise MovieFormatError("R2Add takes two 'chords'")
            return cls(
                kind,
                chords,
                first=_slot(data.get("first"), "first"),
                second=_slot(data.get("second"), "second"),
                same=bool(data.get("same", True)),
                **common,
            )
        if kind is EventKind.R3:
            chords = tuple(str(c) for c in data.get("chords", ()))
            if len(chords) != 3:
                raise MovieFormatError("R3 needs three 'chords'")
            pairs = data.get("pairs")
            if pairs is not None:
                pairs = tuple(_slot(p, "pairs") for p in pairs)
            return cls(kind, chords, pairs=pairs)
        if kind is EventKind.BIRTH:
            return cls(kind)
        if kind is EventKind.DEATH:
            if not isinstance(data.get("component"), int):
                raise MovieFormatError("Death needs an integer 'component'")
            return cls(kind, component=data["component"])
        return cls(
            kind,
            first=_slot(data.get("first"), "first"),
            second=_slot(data.get("second"), "second"),
            flip=bool(data.get("flip", False)),
        )


@dataclass
class Movie:
    """Initial knot, events, and labels of lines born during the movie"""
    initial: FreeLink
    events: List[Event] = field(default_factory=list)
    labels: Dict[str, LifetimeLabel] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return {
            "initial": self.initial.to_code(),
            "labels": {lid: label.to_json() for lid, label in self.labels.items()},
            "events": [event.to_json() for event in self.events],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "Movie":
        if not isinstance(data, Mapping) or "initial" not in data:
            raise MovieFormatError("A movie needs an 'initial' Gauss code")
        events = data.get("events", [])
        if not isinstance(events, list):
            raise MovieFormatError("'events' must be a list")
        return cls(
            initial=as_link(data["initial"]),
            events=[Event.from_json(e) for e in events],
            labels={
                str(lid): LifetimeLabel.from_json(label)
                for lid, label in (data.get("labels") or {}).items()
            },
        )


def load_movie(path) -> Movie:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise MovieFormatError(f"Invalid JSON in movie file {path}: {e}")
    except OSError as e:
        raise MovieFormatError(f"Cannot read movie file {path}: {e}")
    validate_document("movie", data)
    movie = Movie.from_json(data)
    logger.debug(f"Loaded movie with {len(movie.events)} events from {path}")
    return movie


def dump_movie(movie: Movie, path) -> None:
    Path(path).write_text(json.dumps(movie.to_json(), indent=2) + "\n", encoding="utf-8")


@dataclass
class Level:
    """Link at one moment of a movie with the lifetime and label of every chord"""
    link: FreeLink
    lifetimes: Dict[str, str] = field(default_factory=dict)
    labels: Dict[str, ParityLabel] = field(default_factory=dict)

    def odd_chords(self) -> set:
        return {c for c, label in self.labels.items() if label.is_odd}


@dataclass
class ComponentWord:
    word: Tuple[str, ...]
    point: CayleyPoint
    L: int

    def to_json(self) -> Dict[str, Any]:
        return {"word": list(self.word), "x": self.point.x, "y": self.point.y, "L": self.L}


LabelSource = Callable[[str, Event], Optional[LifetimeLabel]]


def _no_labels(lifetime: str, event: Event) -> Optional[LifetimeLabel]:
    return event.label


def initial_level(link: FreeLink) -> Level:
    """Level 0: lifetimes named after chords, labels from justified parity"""
    if link.is_knot:
        labels = dict(justified_parity(link).labels)
    else:
        labels = {c: ParityLabel.EVEN for c in link.chords}
    return Level(link, {c: c for c in link.chords}, labels)


def _resolve_move(link: FreeLink, event: Event) -> MoveDescriptor:
    kind = event.kind
    if kind is EventKind.R1_REMOVE:
        for site in find_r1_sites(link):
            if site.chords == event.chords:
                return site
        raise SiteInvalidError(f"Chord {event.chords[0]} is not a loop in {link}")

    if kind is EventKind.R2_REMOVE:
        wanted = frozenset(event.chords)
        for site in find_r2_sites(link):
            if frozenset(site.chords) == wanted:
                return site
        raise SiteInvalidError(f"Chords {', '.join(event.chords)} form no bigon in {link}")

    if kind is EventKind.R3:
        if event.pairs:
            return MoveDescriptor(MoveKind.R3, event.chords, event.pairs)
        wanted = frozenset(event.chords)
        for site in find_r3_sites(link):
            if frozenset(site.chords) == wanted:
                return site
        raise SiteInvalidError(f"Chords {', '.join(event.chords)} form no triangle")

    if kind is EventKind.R1_ADD:
        chords = event.chords or tuple(fresh_chord_ids(link, 1))
        return MoveDescriptor(MoveKind.R1_ADD, chords, (event.first,))

    chords = event.chords or tuple(fresh_chord_ids(link, 2))
    return MoveDescriptor(
        MoveKind.R2_ADD, chords, (event.first, event.second), same_order=event.same
    )


def _check_component(link: FreeLink, comp) -> None:
    if not isinstance(comp, int) or not 0 <= comp < len(link.components):
        raise SiteInvalidError(f"No component {comp} in {link}")


def _saddle(link: FreeLink, event: Event) -> Tuple[FreeLink, bool]:
    """Apply a saddle; the flag is True for a split"""
    (ca, ga), (cb, gb) = event.first, event.second
    for comp, gap in ((ca, ga), (cb, gb)):
        _check_component(link, comp)
        if not 0 <= gap <= len(link.components[comp]):
            raise SiteInvalidError(f"Gap {gap} is not valid on component {comp}")

    components = list(link.components)
    if ca == cb:
        seq = components[ca]
        g1, g2 = sorted((ga, gb))
        components[ca] = seq[g1:g2]
        components.append(seq[g2:] + seq[:g1])
        return FreeLink(tuple(components)), True

    a, b = components[ca], components[cb]
    b = b[gb:] + b[:gb]
    if event.flip:
        b = b[::-1]
    lo, hi = sorted((ca, cb))
    components[lo] = a[ga:] + a[:ga] + b
    del components[hi]
    return FreeLink(tuple(components)), False


def _step(
    level: Level, event: Event, index: int, label_for: LabelSource = _no_labels
) -> Tuple[Level, Optional[MoveDescriptor], List[Violation]]:
    """Apply one event; parity axiom violations are returned, not raised"""
    link = level.link
    lifetimes = dict(level.lifetimes)
    labels = dict(level.labels)
    violations: List[Violation] = []
    kind = event.kind

    if kind in _MOVE_KINDS:
        move = _resolve_move(link, event)
        after = apply_move(link, move)

        if kind in (EventKind.R1_REMOVE, EventKind.R2_REMOVE):
            for chord in move.chords:
                lifetimes.pop(chord, None)
                labels.pop(chord, None)
        elif kind in (EventKind.R1_ADD, EventKind.R2_ADD):
            lifetime = event.lifetime or f"t{index}"
            label = label_for(lifetime, event)
            if label is None:
                if kind is EventKind.R2_ADD:
                    violations.append(
                        Violation(
                            MovieViolationKind.MISSING_LABEL,
                            f"No label for lifetime {lifetime}",
                            index,
                        )
                    )
                label = LifetimeLabel()
            for chord in move.chords:
                lifetimes[chord] = lifetime
                labels[chord] = label.label
        else:
            odd = [c for c in move.chords if labels[c].is_odd]
            if len(odd) == 2:
                for chord in odd:
                    labels[chord] = labels[chord].flipped()

        for violation in check_parity_axioms(link, after, move, level.labels, labels):
            violation.event = index
            violations.append(violation)
        return Level(after, lifetimes, labels), move, violations

    if kind is EventKind.BIRTH:
        return Level(FreeLink(link.components + ((),)), lifetimes, labels), None, violations

    if kind is EventKind.DEATH:
        _check_component(link, event.component)
        if link.components[event.component]:
            raise DeathOnNonTrivialCircleError(
                f"Component {event.component} of {link} still has chord endpoints"
            )
        components = link.components[: event.component] + link.components[event.component + 1:]
        return Level(FreeLink(components), lifetimes, labels), None, violations

    after, _ = _saddle(link, event)
    return Level(after, lifetimes, labels), None, violations


def apply_event(level: Level, event: Event, label_for: LabelSource = _no_labels) -> Level:
    """
    Advance a level by one event

    Raises:
        SiteInvalidError: the event does not fit the level
        DeathOnNonTrivialCircleError: Death on a component with endpoints
    """
    after, _, _ = _step(level, event, 0, label_for)
    return after


def advance_link(link: FreeLink, event: Event) -> FreeLink:
    """Structural effect of an event, ignoring labels"""
    level = Level(link, {c: c for c in link.chords}, {c: ParityLabel.EVEN for c in link.chords})
    return apply_event(level, event).link


def _movie_labels(movie: Movie) -> LabelSource:
    def label_for(lifetime: str, event: Event) -> Optional[LifetimeLabel]:
        if event.label is not None:
            return event.label
        return movie.labels.get(lifetime)

    return label_for


def _component_word(level: Level, comp: int) -> Tuple[Tuple[str, ...], CayleyPoint]:
    word = tuple(level.labels[c].letter for c in level.link.components[comp])
    return word, eval_word(word)


def component_words(level: Level) -> List[ComponentWord]:
    """
    Word, Cayley point and class of every component of a level

    Raises:
        NonZeroFirstCoordinateError: a component word of odd length or off the
            x = 0 column
    """
    words = []
    for comp in range(len(level.link.components)):
        word, point = _component_word(level, comp)
        if len(word) % 2 or point.x != 0:
            raise NonZeroFirstCoordinateError(
                f"Component {comp} reads {' '.join(word) or 'e'} ending at {point}"
            )
        words.append(ComponentWord(word, point, abs(point.y)))
    return words


def _level_classes(
    level: Level, index: int
) -> Tuple[List[Optional[int]], List[CayleyPoint], List[Violation]]:
    """Class of every component, None where the word leaves the x = 0 column"""
    classes: List[Optional[int]] = []
    points: List[CayleyPoint] = []
    violations = []
    for comp in range(len(level.link.components)):
        word, point = _component_word(level, comp)
        points.append(point)
        if len(word) % 2 or point.x != 0:
            classes.append(None)
            violations.append(
                Violation(
                    MovieViolationKind.NONZERO_FIRST_COORDINATE,
                    f"Component {comp} ends at {point} after {len(word)} letters",
                    index,
                    {"component": comp},
                )
            )
        else:
            classes.append(abs(point.y))
    return classes, points, violations


def _klm(k: int, m: int, n: int) -> bool:
    return abs(k) in (m + n, abs(m - n))


def _agree(before: Sequence[Optional[int]], after: Sequence[Optional[int]]) -> bool:
    if len(before) != len(after):
        return False
    return all(a is None or b is None or a == b for a, b in zip(before, after))


def _transition_checks(
    event: Event,
    before: List[Optional[int]],
    after: List[Optional[int]],
    index: int,
) -> List[Violation]:
    """Per-component class bookkeeping across one event"""
    kind = event.kind
    if kind in _MOVE_KINDS:
        if _agree(before, after):
            return []
        return [
            Violation(
                MovieViolationKind.COMPONENT_CLASS_CHANGED,
                f"{kind.value} changed component classes {before} -> {after}",
                index,
            )
        ]

    if kind is EventKind.BIRTH:
        expected = list(before) + [0]
        ok = _agree(expected, after)
    elif kind is EventKind.DEATH:
        expected = list(before)
        removed = expected.pop(event.component)
        ok = removed in (0, None) and _agree(expected, after)
    else:
        (ca, _), (cb, _) = event.first, event.second
        if ca == cb:
            k, m, n = before[ca], after[ca], after[-1]
            expected = list(before)
            expected[ca] = m
            expected.append(n)
        else:
            lo, hi = sorted((ca, cb))
            m, n, k = before[ca], before[cb], after[lo]
            expected = list(before)
            expected[lo] = k
            del expected[hi]
        ok = _agree(expected, after)
        if ok and None not in (k, m, n):
            ok = _klm(k, m, n)

    if ok:
        return []
    return [
        Violation(
            MovieViolationKind.KLM_TRANSITION,
            f"{kind.value} takes component classes {before} to {after}",
            index,
        )
    ]


class ReebGraphBuilder:
    """
    Reeb graph of the height function on the surface

    One node per interval between critical levels of a component history:
    each initial component, each birth, each merge result and both pieces of
    each split. Saddles contribute two edges.
    """

    def __init__(self, components: int):
        self.graph = nx.Graph()
        self.current: List[int] = []
        for _ in range(components):
            self.current.append(self._node(level=0, origin="initial"))

    def _node(self, level: int, origin: str) -> int:
        node = self.graph.number_of_nodes()
        self.graph.add_node(node, level=level, origin=origin)
        return node

    def record(self, event: Event, index: int) -> None:
        kind = event.kind
        if kind is EventKind.BIRTH:
            self.current.append(self._node(index + 1, "birth"))
        elif kind is EventKind.DEATH:
            self.graph.nodes[self.current.pop(event.component)]["death"] = index + 1
        elif kind is EventKind.SADDLE:
            (ca, _), (cb, _) = event.first, event.second
            if ca == cb:
                parent = self.current[ca]
                first, second = self._node(index + 1, "split"), self._node(index + 1, "split")
                self.graph.add_edge(parent, first)
                self.graph.add_edge(parent, second)
                self.current[ca] = first
                self.current.append(second)
            else:
                lo, hi = sorted((ca, cb))
                node = self._node(index + 1, "merge")
                self.graph.add_edge(self.current[ca], node)
                self.graph.add_edge(self.current[cb], node)
                self.current[lo] = node
                del self.current[hi]

    @property
    def is_tree(self) -> bool:
        return self.graph.number_of_nodes() > 0 and nx.is_tree(self.graph)

    @property
    def is_connected(self) -> bool:
        return self.graph.number_of_nodes() == 0 or nx.is_connected(self.graph)


@dataclass
class LevelReport:
    index: int
    event: Optional[str]
    code: str
    classes: List[Optional[int]]
    points: List[CayleyPoint] = field(default_factory=list)

    @property
    def components(self) -> int:
        return len(self.points)

    def to_json(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "event": self.event,
            "code": self.code,
            "components": self.components,
            "points": [[p.x, p.y] for p in self.points],
            "L": self.classes,
        }


@dataclass
class VerifierReport:
    """Outcome of verifying one movie"""
    ok: bool
    genus: Optional[Fraction]
    violations: List[Violation] = field(default_factory=list)
    levels: List[LevelReport] = field(default_factory=list)
    reeb_is_tree: bool = False
    counts: Dict[str, int] = field(default_factory=dict)

    @property
    def label_multisets(self) -> List[List[int]]:
        return [sorted(c for c in level.classes if c is not None) for level in self.levels]

    def violation_kinds(self) -> set:
        return {v.kind for v in self.violations}

    def to_json(self) -> Dict[str, Any]:
        genus = None
        if self.genus is not None:
            genus = int(self.genus) if self.genus.denominator == 1 else str(self.genus)
        return {
            "ok": self.ok,
            "genus": genus,
            "reebIsTree": self.reeb_is_tree,
            "counts": self.counts,
            "labelMultisets": self.label_multisets,
            "levels": [level.to_json() for level in self.levels],
            "violations": [v.to_json() for v in self.violations],
        }


def _genus_value(births: int, deaths: int, saddles: int) -> Fraction:
    return Fraction(saddles + 1 - births - deaths, 2)


def _count_events(events: Sequence[Event]) -> Dict[str, int]:
    counts = {"births": 0, "deaths": 0, "saddles": 0, "merges": 0, "splits": 0}
    for event in events:
        if event.kind is EventKind.BIRTH:
            counts["births"] += 1
        elif event.kind is EventKind.DEATH:
            counts["deaths"] += 1
        elif event.kind is EventKind.SADDLE:
            counts["saddles"] += 1
            split = event.first[0] == event.second[0]
            counts["splits" if split else "merges"] += 1
    return counts


class MovieVerifier:
    """
    Replay a movie and collect every violation

    Labels at level 0 are the justified parity of the initial knot; lines born
    later take the label given inline on their event or in ``movie.labels``.
    In strict mode the lifetime labels of every one-component level must also
    agree with that level's own justified parity.
    """

    def __init__(self, movie: Movie, strict: bool = False):
        self.movie = movie
        self.strict = strict
        self.label_for = _movie_labels(movie)

    def _initial(self, violations: List[Violation]) -> Level:
        initial = self.movie.initial
        level = initial_level(initial)
        if not initial.is_knot:
            violations.append(
                Violation(
                    MovieViolationKind.INITIAL_NOT_KNOT,
                    f"Initial level has {len(initial.components)} components",
                )
            )
            return level

        for chord, label in level.labels.items():
            declared = self.movie.labels.get(chord)
            if declared is not None and declared.label is not label:
                violations.append(
                    Violation(
                        MovieViolationKind.INITIAL_LABEL_MISMATCH,
                        f"Chord {chord} is {label.value}, declared {declared.label.value}",
                        details={"chord": chord},
                    )
                )
        return level

    def _strict(self, level: Level, index: int) -> List[Violation]:
        if not level.link.is_knot:
            return []
        table = justified_parity(level.link)
        return [
            Violation(
                MovieViolationKind.STRICT_LABEL_MISMATCH,
                f"Chord {chord} carries {level.labels[chord].value}, "
                f"parity gives {table[chord].value}",
                index,
                {"chord": chord},
            )
            for chord in level.link.chords
            if level.labels[chord] is not table[chord]
        ]

    def run(self) -> VerifierReport:
        violations: List[Violation] = []
        level = self._initial(violations)
        classes, points, found = _level_classes(level, None)
        violations.extend(found)
        reports = [LevelReport(0, None, level.link.to_code(), classes, points)]

        reeb = ReebGraphBuilder(len(level.link.components))
        parities = {lid: level.labels[c].is_odd for c, lid in level.lifetimes.items()}
        replayed: List[Event] = []
        stopped = False

        for index, event in enumerate(self.movie.events):
            try:
                nxt, move, found = _step(level, event, index, self.label_for)
            except InputError as e:
                logger.debug(f"Replay stopped at event {index}: {e}")
                violations.append(Violation(MovieViolationKind.EVENT_ERROR, str(e), index))
                stopped = True
                break
            violations.extend(found)

            if event.kind in (EventKind.R1_ADD, EventKind.R2_ADD):
                violations.extend(self._register(nxt, move, index, parities))

            next_classes, points, found = _level_classes(nxt, index)
            violations.extend(found)
            violations.extend(_transition_checks(event, classes, next_classes, index))
            if self.strict:
                violations.extend(self._strict(nxt, index))

            reeb.record(event, index)
            replayed.append(event)
            reports.append(
                LevelReport(
                    index + 1, event.kind.value, nxt.link.to_code(), next_classes, points
                )
            )
            level, classes = nxt, next_classes

        counts = _count_events(replayed)
        genus = None
        if not stopped:
            genus = self._genus(level, counts, violations)
            if not reeb.is_connected:
                violations.append(
                    Violation(
                        MovieViolationKind.DISCONNECTED_SURFACE,
                        f"Reeb graph has {nx.number_connected_components(reeb.graph)} components",
                    )
                )

        ok = (
            not violations
            and genus is not None
            and genus.denominator == 1
            and genus >= 0
        )
        report = VerifierReport(ok, genus, violations, reports, reeb.is_tree, counts)
        logger.info(
            f"Verified movie of {len(self.movie.events)} events: "
            f"{'ok' if ok else f'{len(violations)} violations'}, genus {genus}"
        )
        return report

    def _register(self, level: Level, move: MoveDescriptor, index: int,
                  parities: Dict[str, bool]) -> List[Violation]:
        chord = move.chords[0]
        lifetime = level.lifetimes[chord]
        odd = level.labels[chord].is_odd
        if lifetime not in parities:
            parities[lifetime] = odd
            return []
        if parities[lifetime] != odd:
            return [
                Violation(
                    MovieViolationKind.LIFETIME_PARITY_CHANGED,
                    f"Lifetime {lifetime} changes parity",
                    index,
                )
            ]
        return [
            Violation(
                MovieViolationKind.EVENT_ERROR, f"Lifetime {lifetime} is born twice", index
            )
        ]

    def _genus(self, final: Level, counts: Dict[str, int],
               violations: List[Violation]) -> Optional[Fraction]:
        if final.link.components:
            violations.append(
                Violation(
                    MovieViolationKind.FINAL_LEVEL_NON_EMPTY,
                    f"Final level is {final.link.to_code()}",
                )
            )
            return None
        if not self.movie.initial.is_knot:
            return None

        genus = _genus_value(counts["births"], counts["deaths"], counts["saddles"])
        if genus.denominator != 1:
            violations.append(
                Violation(MovieViolationKind.NON_INTEGRAL_GENUS, f"Genus {genus} is not integral")
            )
        elif genus < 0:
            violations.append(
                Violation(MovieViolationKind.NEGATIVE_GENUS, f"Genus {genus} is negative")
            )
        return genus


def verify(movie: Movie, strict: bool = False) -> VerifierReport:
    return MovieVerifier(movie, strict).run()


def replay(movie: Movie) -> Tuple[List[Level], List[Optional[MoveDescriptor]]]:
    """
    Levels before and after every event, and the resolved move of R-events

    Raises:
        SiteInvalidError: an event does not fit its level
    """
    label_for = _movie_labels(movie)
    levels = [initial_level(movie.initial)]
    moves: List[Optional[MoveDescriptor]] = []
    for index, event in enumerate(movie.events):
        nxt, move, _ = _step(levels[-1], event, index, label_for)
        levels.append(nxt)
        moves.append(move)
    return levels, moves


def genus(movie: Movie) -> Fraction:
    """
    Genus of the spanning surface, (saddles + 1 - births - deaths) / 2

    Raises:
        InitialNotKnotError, FinalLevelNonEmptyError, NonIntegralGenusError,
        NegativeGenusError
    """
    if not movie.initial.is_knot:
        raise InitialNotKnotError(
            f"Initial level has {len(movie.initial.components)} components"
        )
    levels, _ = replay(movie)
    if levels[-1].link.components:
        raise FinalLevelNonEmptyError(f"Final level is {levels[-1].link.to_code()}")

    counts = _count_events(movie.events)
    value = _genus_value(counts["births"], counts["deaths"], counts["saddles"])
    if value.denominator != 1:
        raise NonIntegralGenusError(f"Genus {value} is not integral")
    if value < 0:
        raise NegativeGenusError(f"Genus {value} is negative")
    return value


def reeb_graph(movie: Movie) -> nx.Graph:
    replay(movie)
    builder = ReebGraphBuilder(len(movie.initial.components))
    for index, event in enumerate(movie.events):
        builder.record(event, index)
    return builder.graph


def main_theorem_check(movie: Movie) -> TheoremOutcome:
    """
    A verified genus-zero movie must start from a knot with L = 0

    Raises:
        PreconditionNotMetError: the movie does not verify or has positive genus
    """
    report = verify(movie)
    if not report.ok or report.genus != 0:
        raise PreconditionNotMetError(
            f"Needs a verified genus 0 movie (ok={report.ok}, genus={report.genus})"
        )

    value = invariant_l(movie.initial).L
    if value != 0:
        logger.error(f"Verified slice movie starts from {movie.initial} with L = {value}")
        return TheoremOutcome.COUNTEREXAMPLE
    return TheoremOutcome.CONSISTENT


def _label_candidates(level: Level, event: Event, index: int) -> List[LifetimeLabel]:
    """Labels to try for a new R2 line, justified parity of its circle first"""
    order = [ParityLabel.EVEN, ParityLabel.ODD_B, ParityLabel.ODD_B_PRIME]
    try:
        after, move, _ = _step(level, event, index, lambda lid, e: LifetimeLabel())
    except InputError:
        return [LifetimeLabel.of(label) for label in order]

    chord = move.chords[0]
    (comp, _), _ = after.link.slot_positions(chord)
    seq = after.link.components[comp]
    if all(after.link.is_self_chord(c) for c in set(seq)):
        preferred = justified_parity(FreeLink((seq,)))[chord]
        order.remove(preferred)
        order.insert(0, preferred)
    return [LifetimeLabel.of(label) for label in order]


def assign_labels(
    initial: FreeLink,
    events: Sequence[Event],
    max_nodes: int = DEFAULT_LABEL_BUDGET,
) -> Optional[Movie]:
    """
    Find lifetime labels under which every event passes the local checks

    Level 0 is forced to justified parity and R1 lines are even. Each new R2
    line tries the justified parity of its circle first, then the other labels,
    backtracking depth first.

    Returns:
        Labelled movie, or None when no labelling exists within the budget
    """
    if not initial.is_knot:
        return None

    start = initial_level(initial)
    classes, _, found = _level_classes(start, None)
    if found:
        return None

    chosen: Dict[int, LifetimeLabel] = {}
    budget = [max_nodes]

    def search(index: int, level: Level, current: List[Optional[int]]) -> bool:
        if index == len(events):
            return True
        budget[0] -= 1
        if budget[0] < 0:
            return False

        event = events[index]
        candidates: List[Optional[LifetimeLabel]] = [None]
        if event.kind is EventKind.R2_ADD:
            candidates = _label_candidates(level, event, index)

        for candidate in candidates:
            try:
                nxt, _, violations = _step(level, event, index, lambda lid, e: candidate)
            except InputError:
                return False
            if violations:
                continue
            next_classes, _, found = _level_classes(nxt, index)
            if found or _transition_checks(event, current, next_classes, index):
                continue
            if search(index + 1, nxt, next_classes):
                if candidate is not None:
                    chosen[index] = candidate
                return True
        return False

    if not search(0, start, classes):
        logger.debug(f"No labelling of {len(events)} events from {initial}")
        return None

    labelled: List[Event] = []
    labels: Dict[str, LifetimeLabel] = {}
    for index, event in enumerate(events):
        if event.kind in (EventKind.R1_ADD, EventKind.R2_ADD):
            lifetime = f"t{index}"
            labels[lifetime] = chosen.get(index, LifetimeLabel())
            event = replace(event, lifetime=lifetime, label=None)
        labelled.append(event)
    return Movie(initial, labelled, labels)


def _project_gap(link: FreeLink, comp: int, gap: int, odd: set) -> int:
    return sum(1 for token in link.components[comp][:gap] if token not in odd)


def f_project_movie(movie: Movie) -> Movie:
    """
    Delete every odd line from a verified movie

    Each projected level is the corresponding level with its odd chords
    removed. R2 moves on odd lines and R3 moves with two odd chords become
    trivial and are dropped; every other event is re-addressed on the
    surviving slots and the result is relabelled.

    Raises:
        PreconditionNotMetError: the movie does not verify
        LabellingError: the projected events admit no labelling
    """
    report = verify(movie)
    if not report.ok:
        raise PreconditionNotMetError(
            f"Only verified movies can be projected ({len(report.violations)} violations)"
        )

    levels, moves = replay(movie)
    initial = levels[0].link.delete_chords(levels[0].odd_chords())
    events: List[Event] = []

    for index, event in enumerate(movie.events):
        level, move = levels[index], moves[index]
        link, odd = level.link, level.odd_chords()

        def gap(slot: Slot) -> Slot:
            comp, position = slot
            return comp, _project_gap(link, comp, position, odd)

        kind = event.kind
        if kind is EventKind.R1_REMOVE:
            events.append(Event.r1_remove(move.chords[0]))
        elif kind is EventKind.R1_ADD:
            events.append(Event.r1_add(gap(move.site[0]), chord=move.chords[0]))
        elif kind is EventKind.R2_REMOVE:
            if move.chords[0] not in odd:
                events.append(Event.r2_remove(*move.chords))
        elif kind is EventKind.R2_ADD:
            if not levels[index + 1].labels[move.chords[0]].is_odd:
                first, second = move.site
                events.append(
                    Event.r2_add(gap(first), gap(second), move.same_order, move.chords)
                )
        elif kind is EventKind.R3:
            if not any(c in odd for c in move.chords):
                events.append(Event.r3(move.chords, [gap(p) for p in move.site]))
        elif kind is EventKind.SADDLE:
            events.append(Event.saddle(gap(event.first), gap(event.second), event.flip))
        else:
            events.append(event)

    projected = assign_labels(initial, events)
    if projected is None:
        raise LabellingError(f"Projected movie from {initial} admits no labelling")
    logger.info(
        f"Projected {len(movie.events)} events onto {len(projected.events)} "
        f"even-line events"
    )
    return projected
