#!/usr/bin/env python3
"""
Free Knot Invariants

The word read along a one-component diagram, the compact invariant L (the
conjugacy class of that word), the long-knot invariant l, and the map F that
deletes every odd chord.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from lib.diagram import Basepoint, FreeLink, canonicalize
from lib.group import CayleyPoint, conj_class_l, eval_word
from lib.parity import ParityTable, gaussian_parity, justified_parity

logger = logging.getLogger(__name__)


@dataclass
class InvariantResult:
    """Word, Cayley point, class and parity table of one diagram"""
    word: Tuple[str, ...]
    point: CayleyPoint
    L: int
    parity: ParityTable
    base: Basepoint = field(default_factory=Basepoint)

    def to_json(self) -> Dict[str, Any]:
        return {
            "word": list(self.word),
            "x": self.point.x,
            "y": self.point.y,
            "L": self.L,
            "parity": self.parity.to_json(),
        }


def gamma_word(
    link: FreeLink,
    base: Optional[Basepoint] = None,
    table: Optional[ParityTable] = None,
) -> Tuple[str, ...]:
    """Letter of each endpoint met when reading from the basepoint"""
    seq = link.require_knot("gammaWord")
    base = base or Basepoint()
    table = table or justified_parity(link)
    return tuple(table[seq[i]].letter for i in base.reading_order(link))


def basepoints(link: FreeLink) -> List[Basepoint]:
    """Every basepoint and direction of a one-component link"""
    link.require_knot("basepoints")
    return [
        Basepoint(0, gap, reverse)
        for gap in link.gaps(0)
        for reverse in (False, True)
    ]


def invariant_l(link: FreeLink, base: Optional[Basepoint] = None) -> InvariantResult:
    """
    Compute L for a one-component diagram

    The value does not depend on the basepoint; ``base`` only fixes which
    word is reported.
    """
    link.require_knot("invariantL")
    base = base or Basepoint()
    table = justified_parity(link)
    word = gamma_word(link, base, table)
    point = eval_word(word)
    result = InvariantResult(word, point, conj_class_l(point), table, base)
    logger.debug(f"L({link}) = {result.L} at {point}")
    return result


def long_invariant(link: FreeLink, base: Basepoint) -> int:
    """Signed y of the word read from a fixed basepoint"""
    return eval_word(gamma_word(link, base)).y


def f_map(link: FreeLink) -> FreeLink:
    """Delete every odd chord; surviving chords are renumbered canonically"""
    link.require_knot("fMap")
    odd = gaussian_parity(link).odd_chords()
    return canonicalize(link.delete_chords(odd))


def f_star(link: FreeLink) -> FreeLink:
    """Iterate F until every chord is even"""
    current = canonicalize(link)
    rounds = 0
    while True:
        image = f_map(current)
        if image.num_chords == current.num_chords:
            logger.debug(f"F* reached {image} after {rounds} rounds")
            return image
        current = image
        rounds += 1
