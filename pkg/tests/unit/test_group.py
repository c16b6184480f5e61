#!/usr/bin/env python3
"""
Unit tests for FreeKnots group words
"""

import itertools
import os
import sys
import unittest

import numpy as np

# Add lib directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from lib.exceptions import NonZeroFirstCoordinateError, UnknownLetterError, WordSyntaxError
from lib.group import (
    LETTERS,
    CayleyPoint,
    GroupElement,
    conj_class_l,
    eval_word,
    format_word,
    multiply,
    parse_word,
    reduce_word,
    step_right,
)

K1_WORD = "(b' a)^7 b' b (a b)^7"


class TestCayleyWalk(unittest.TestCase):
    """Test cases for points of the Cayley strip"""

    def test_generator_steps(self):
        origin = CayleyPoint()
        self.assertEqual(step_right(origin, "a"), CayleyPoint(1, 0))
        self.assertEqual(step_right(origin, "b"), CayleyPoint(0, 1))
        self.assertEqual(step_right(origin, "b'"), CayleyPoint(0, -1))
        self.assertEqual(step_right(CayleyPoint(1, 0), "b"), CayleyPoint(1, -1))
        self.assertEqual(step_right(CayleyPoint(1, 0), "b'"), CayleyPoint(1, 1))

    def test_generators_are_involutions(self):
        for letter in ("a", "b", "b'"):
            for x, y in itertools.product((0, 1), range(-3, 4)):
                with self.subTest(letter=letter, x=x, y=y):
                    point = CayleyPoint(x, y)
                    self.assertEqual(step_right(step_right(point, letter), letter), point)

    def test_relation(self):
        # ab = b'a
        for x, y in itertools.product((0, 1), range(-3, 4)):
            point = CayleyPoint(x, y)
            self.assertEqual(
                step_right(step_right(point, "a"), "b"),
                step_right(step_right(point, "b'"), "a"),
            )

    def test_invalid_point_and_letter(self):
        with self.assertRaises(ValueError):
            CayleyPoint(2, 0)
        with self.assertRaises(UnknownLetterError):
            step_right(CayleyPoint(), "c")

    def test_k1_word(self):
        letters = parse_word(K1_WORD)
        self.assertEqual(len(letters), 30)
        point = eval_word(letters)
        self.assertEqual(point, CayleyPoint(0, -16))
        self.assertEqual(conj_class_l(point), 16)

    def test_class_needs_zero_column(self):
        with self.assertRaises(NonZeroFirstCoordinateError):
            conj_class_l(CayleyPoint(1, 3))


class TestWords(unittest.TestCase):
    """Test cases for word parsing and reduction"""

    def test_parse_groups(self):
        self.assertEqual(parse_word("(a b)^2"), ["a", "b", "a", "b"])
        self.assertEqual(parse_word("b'^3"), ["b'"] * 3)
        self.assertEqual(parse_word("((a)^2 b)^2"), ["a", "a", "b", "a", "a", "b"])
        self.assertEqual(parse_word("e"), [])
        self.assertEqual(parse_word(""), [])

    def test_parse_errors(self):
        for text in ("(a b", "a b)", "^2"):
            with self.subTest(text=text):
                with self.assertRaises(WordSyntaxError):
                    parse_word(text)
        with self.assertRaises(UnknownLetterError):
            parse_word("a c")

    def test_reduce(self):
        self.assertEqual(reduce_word(["b", "b"]), ())
        self.assertEqual(reduce_word(["b'"]), ("a", "b", "a"))
        self.assertEqual(reduce_word(["a", "b'"]), ("b", "a"))
        self.assertEqual(format_word(reduce_word(["a", "b", "b", "a", "b"])), "b")

    def test_reduce_preserves_point(self):
        for word in itertools.product(("a", "b", "b'"), repeat=4):
            with self.subTest(word=word):
                self.assertEqual(eval_word(reduce_word(word)), eval_word(word))


class TestGroupElement(unittest.TestCase):
    """Test cases for group elements"""

    TRANSLATIONS = [("a", "b", "a", "b"), ("b", "a", "b", "a"), ("a", "b") * 4, ()]

    def test_inverse(self):
        for word in itertools.product(("a", "b", "b'"), repeat=3):
            element = GroupElement.from_letters(word)
            with self.subTest(word=word):
                self.assertTrue((element * element.inverse()).is_identity())
                self.assertTrue(multiply(element.inverse(), element).is_identity())

    def test_conjugation_keeps_class(self):
        conjugators = [
            GroupElement.from_letters(word)
            for n in range(4)
            for word in itertools.product(("a", "b"), repeat=n)
        ]
        for word in self.TRANSLATIONS:
            element = GroupElement.from_letters(word)
            value = conj_class_l(element.coordinates())
            for by in conjugators:
                with self.subTest(word=word, by=str(by)):
                    point = element.conjugate(by).coordinates()
                    self.assertEqual(point.x, 0)
                    self.assertEqual(conj_class_l(point), value)

    def test_reversal_keeps_class(self):
        for word in self.TRANSLATIONS:
            with self.subTest(word=word):
                self.assertEqual(
                    conj_class_l(eval_word(word)), conj_class_l(eval_word(word[::-1]))
                )

    def test_reflections_are_not_conjugation_invariant(self):
        # b sits at (0,1) but its conjugate by ab sits at (0,3)
        element = GroupElement.from_letters(["b"])
        conjugate = element.conjugate(GroupElement.from_letters(["a", "b"]))
        self.assertEqual(element.coordinates(), CayleyPoint(0, 1))
        self.assertEqual(conjugate.coordinates(), CayleyPoint(0, 3))

    def test_str(self):
        self.assertEqual(str(GroupElement.identity()), "e")
        self.assertEqual(str(GroupElement.from_letters(["a", "b"])), "a b")
        self.assertEqual(len(GroupElement.from_letters(["b'"])), 3)


class TestRandomWords(unittest.TestCase):
    """Test cases on seeded random words of length at most 20"""

    def setUp(self):
        rng = np.random.default_rng(2024)
        self.words = [
            [LETTERS[i] for i in rng.integers(3, size=int(rng.integers(21)))]
            for _ in range(10000)
        ]

    def test_relation_rewrites(self):
        rng = np.random.default_rng(7)
        for word in self.words:
            point = eval_word(word)
            i = int(rng.integers(len(word) + 1))
            g = LETTERS[int(rng.integers(3))]
            self.assertEqual(eval_word(word[:i] + [g, g] + word[i:]), point, word)

            for j in range(len(word) - 1):
                if word[j : j + 2] == ["a", "b"]:
                    rewritten = word[:j] + ["b'", "a"] + word[j + 2 :]
                    self.assertEqual(eval_word(rewritten), point, word)
                    break

    def test_translations(self):
        # even length and an even number of a: the point is (0, y) with y even
        for word in self.words:
            if len(word) % 2 or word.count("a") % 2:
                continue
            point = eval_word(word)
            self.assertEqual((point.x, point.y % 2), (0, 0), word)
            self.assertEqual(eval_word(word[::-1]), CayleyPoint(0, -point.y), word)
            for g in LETTERS:
                self.assertEqual(conj_class_l(eval_word([g] + word + [g])), abs(point.y), word)


if __name__ == "__main__":
    unittest.main()
