#!/usr/bin/env python3
"""
The Group G = <a, b, b' | a^2 = b^2 = b'^2 = e, ab = b'a>

Elements are kept as alternating words over {a, b} (b' is rewritten as a b a),
which makes G the free product Z/2 * Z/2. The Cayley graph is a vertical strip
of width two; points of the strip are the coordinates used by the invariants.
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from lib.exceptions import NonZeroFirstCoordinateError, UnknownLetterError, WordSyntaxError

logger = logging.getLogger(__name__)

A, B, B_PRIME = "a", "b", "b'"
LETTERS = (A, B, B_PRIME)

_TOKEN = re.compile(r"b'|b′|[A-Za-z]\w*'?|\(|\)|\^\s*\d+|\S")


@dataclass(frozen=True)
class CayleyPoint:
    """Vertex of the Cayley strip: x in {0, 1}, y any integer"""
    x: int = 0
    y: int = 0

    def __post_init__(self):
        if self.x not in (0, 1):
            raise ValueError(f"Cayley point needs x in {{0, 1}}, got {self.x}")

    def to_json(self) -> Dict[str, int]:
        return {"x": self.x, "y": self.y}

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


def step_right(p: CayleyPoint, g: str) -> CayleyPoint:
    """
    Multiply a point by one generator on the right

    a flips x. b moves up when x + y is even and down otherwise; b' does the
    opposite, so every generator is an involution.
    """
    if g == A:
        return CayleyPoint(1 - p.x, p.y)

    even = (p.x + p.y) % 2 == 0
    if g == B:
        return CayleyPoint(p.x, p.y + 1 if even else p.y - 1)
    if g == B_PRIME:
        return CayleyPoint(p.x, p.y - 1 if even else p.y + 1)
    raise UnknownLetterError(f"Unknown letter: {g!r}")


def eval_word(letters: Iterable[str]) -> CayleyPoint:
    point = CayleyPoint()
    for letter in letters:
        point = step_right(point, letter)
    return point


def conj_class_l(p: CayleyPoint) -> int:
    """|y| of a point on the x = 0 column; names the class {(0,l), (0,-l)}"""
    if p.x != 0:
        raise NonZeroFirstCoordinateError(f"Point {p} is off the x = 0 column")
    return abs(p.y)


def reduce_word(letters: Iterable[str]) -> Tuple[str, ...]:
    """Alternating {a, b} normal form"""
    stack: List[str] = []
    for letter in letters:
        if letter not in LETTERS:
            raise UnknownLetterError(f"Unknown letter: {letter!r}")
        for g in (A, B, A) if letter == B_PRIME else (letter,):
            if stack and stack[-1] == g:
                stack.pop()
            else:
                stack.append(g)
    return tuple(stack)


@dataclass(frozen=True)
class GroupElement:
    """Element of G as a reduced alternating word"""
    word: Tuple[str, ...] = ()

    @classmethod
    def from_letters(cls, letters: Iterable[str]) -> "GroupElement":
        return cls(reduce_word(letters))

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls()

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement.from_letters(self.word + other.word)

    def inverse(self) -> "GroupElement":
        return GroupElement(tuple(reversed(self.word)))

    def conjugate(self, by: "GroupElement") -> "GroupElement":
        """by^-1 * self * by"""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return not self.word

    def coordinates(self) -> CayleyPoint:
        return eval_word(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return format_word(self.word) or "e"


def multiply(u: GroupElement, v: GroupElement) -> GroupElement:
    return u * v


def coordinates(u: GroupElement) -> CayleyPoint:
    return u.coordinates()


def format_word(letters: Sequence[str]) -> str:
    return " ".join(letters)


def parse_word(text: str) -> List[str]:
    """
    Parse a letter sequence with repetition groups

    Args:
        text: letters a, b, b' separated by whitespace; "( ... )^n" repeats a
            group, "x^n" a single letter, "e" is the identity

    Returns:
        Flat list of letters
    """
    tokens = _TOKEN.findall(text or "")
    letters, position = _parse_sequence(tokens, 0, text)
    if position != len(tokens):
        raise WordSyntaxError(f"Unbalanced ')' in word: {text!r}")
    return letters


def _parse_sequence(tokens: List[str], position: int, text: str) -> Tuple[List[str], int]:
    letters: List[str] = []
    while position < len(tokens):
        token = tokens[position]
        if token == ")":
            return letters, position
        if token == "(":
            group, position = _parse_sequence(tokens, position + 1, text)
            if position >= len(tokens) or tokens[position] != ")":
                raise WordSyntaxError(f"Missing ')' in word: {text!r}")
            atom = group
        elif token.startswith("^"):
            raise WordSyntaxError(f"Exponent without a group in word: {text!r}")
        elif token == "e":
            atom = []
        else:
            letter = B_PRIME if token == "b′" else token
            if letter not in LETTERS:
                raise UnknownLetterError(f"Unknown letter: {token!r}")
            atom = [letter]
        position += 1

        if position < len(tokens) and tokens[position].startswith("^"):
            atom = atom * int(tokens[position][1:].strip())
            position += 1
        letters.extend(atom)
    return letters, position
