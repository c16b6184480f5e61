#!/usr/bin/env python3
"""
Unit tests for FreeKnots chord diagrams
"""

import os
import sys
import unittest

import numpy as np

# Add lib directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from lib.diagram import (
    Basepoint,
    FreeLink,
    canonical_form,
    enumerate_knot_diagrams,
    interlacement_matrix,
    linking_mod2,
    parse_gauss_code,
    smooth_halves,
)
from lib.exceptions import (
    EmptyInputError,
    GaussCodeError,
    MultiComponentError,
    SameChordError,
    SiteInvalidError,
    TokenCountError,
    UnknownChordError,
)


class TestParseGaussCode(unittest.TestCase):
    """Test cases for the Gauss code reader"""

    def test_single_component(self):
        link = parse_gauss_code("1 2 1 2")
        self.assertEqual(link.components, (("1", "2", "1", "2"),))
        self.assertEqual(link.num_chords, 2)
        self.assertTrue(link.is_knot)

    def test_multi_component_and_trivial_circle(self):
        link = parse_gauss_code("1 2 ; 1 2 ; ()")
        self.assertEqual(len(link.components), 3)
        self.assertEqual(link.components[2], ())
        self.assertFalse(link.is_knot)
        self.assertFalse(link.is_self_chord("1"))
        self.assertEqual(link.to_code(), "1 2 ; 1 2 ; ()")

    def test_unknot(self):
        link = parse_gauss_code("()")
        self.assertEqual(link.components, ((),))
        self.assertEqual(link.num_chords, 0)
        self.assertEqual(list(link.gaps(0)), [0])

    def test_token_count(self):
        with self.assertRaises(TokenCountError) as ctx:
            parse_gauss_code("1 2 1")
        self.assertEqual(ctx.exception.token, "2")
        self.assertEqual(ctx.exception.count, 1)

        with self.assertRaises(TokenCountError):
            parse_gauss_code("1 1 1")

    def test_malformed_input(self):
        for text in ("", "   ", "1 1 ;"):
            with self.subTest(text=text):
                with self.assertRaises(EmptyInputError):
                    parse_gauss_code(text)

        with self.assertRaises(GaussCodeError):
            parse_gauss_code("1 () 1")

    def test_unknown_chord(self):
        link = parse_gauss_code("1 1")
        with self.assertRaises(UnknownChordError):
            link.slot_positions("7")

    def test_delete_chords_rejoins_circle(self):
        link = parse_gauss_code("1 2 1 2")
        self.assertEqual(link.delete_chords(["2"]).to_code(), "1 1")
        self.assertEqual(link.delete_chords(["1", "2"]).to_code(), "()")

    def test_empty_link(self):
        link = FreeLink(())
        self.assertEqual(link.num_chords, 0)
        self.assertEqual(link.to_code(), "")


class TestCanonicalForm(unittest.TestCase):
    """Test cases for canonical codes"""

    def test_rotation_reflection_relabel(self):
        cases = [
            ("1 2 1 2", "2 1 2 1"),
            ("1 2 2 1", "1 1 2 2"),
            ("a b c a b c", "3 2 1 3 2 1"),
            ("1 2 ; 1 2", "2 1 ; 1 2"),
        ]
        for first, second in cases:
            with self.subTest(first=first, second=second):
                self.assertEqual(
                    canonical_form(parse_gauss_code(first)),
                    canonical_form(parse_gauss_code(second)),
                )

    def test_known_values(self):
        self.assertEqual(canonical_form(parse_gauss_code("1 2 2 1")), "1 1 2 2")
        self.assertEqual(canonical_form(parse_gauss_code("x y x y")), "1 2 1 2")
        self.assertEqual(canonical_form(parse_gauss_code("()")), "()")

    def test_distinct_diagrams(self):
        self.assertNotEqual(
            canonical_form(parse_gauss_code("1 2 1 2")),
            canonical_form(parse_gauss_code("1 1 2 2")),
        )


class TestLinking(unittest.TestCase):
    """Test cases for linking numbers mod 2"""

    def test_linked_and_unlinked(self):
        self.assertEqual(linking_mod2(parse_gauss_code("1 2 1 2"), "1", "2"), 1)
        self.assertEqual(linking_mod2(parse_gauss_code("1 1 2 2"), "1", "2"), 0)

    def test_errors(self):
        with self.assertRaises(SameChordError):
            linking_mod2(parse_gauss_code("1 2 1 2"), "1", "1")
        with self.assertRaises(MultiComponentError):
            linking_mod2(parse_gauss_code("1 2 ; 1 2"), "1", "2")

    def test_interlacement_matrix(self):
        link = parse_gauss_code("1 2 1 3 2 3")
        chords, matrix = interlacement_matrix(link)
        self.assertEqual(chords, ("1", "2", "3"))
        expected = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.uint8)
        np.testing.assert_array_equal(matrix, expected)

        for a_index, a in enumerate(chords):
            for b_index, b in enumerate(chords):
                if a != b:
                    self.assertEqual(matrix[a_index, b_index], linking_mod2(link, a, b))

    def test_interlacement_matrix_unknot(self):
        chords, matrix = interlacement_matrix(parse_gauss_code("()"))
        self.assertEqual(chords, ())
        self.assertEqual(matrix.shape, (0, 0))


class TestBasepoint(unittest.TestCase):
    """Test cases for basepoints and smoothing"""

    def test_reading_order(self):
        link = parse_gauss_code("1 2 1 2")
        self.assertEqual(Basepoint(0, 1).reading_order(link), [1, 2, 3, 0])
        self.assertEqual(Basepoint(0, 0, reverse=True).reading_order(link), [3, 2, 1, 0])

    def test_invalid_basepoint(self):
        link = parse_gauss_code("1 1")
        with self.assertRaises(SiteInvalidError):
            Basepoint(1, 0).validate(link)
        with self.assertRaises(SiteInvalidError):
            Basepoint(0, 5).validate(link)

    def test_smooth_halves(self):
        first, second = smooth_halves(parse_gauss_code("1 2 1 2"), "1")
        self.assertEqual(first.edges, frozenset({0, 1}))
        self.assertEqual(first.slots, (1,))
        self.assertEqual(second.edges, frozenset({2, 3}))
        self.assertEqual(second.slots, (3,))


class TestEnumeration(unittest.TestCase):
    """Test cases for the census of one-component diagrams"""

    def test_counts(self):
        # chord diagrams up to rotation and reflection
        for n, count in enumerate([1, 1, 2, 5, 17]):
            with self.subTest(n=n):
                diagrams = enumerate_knot_diagrams(n)
                self.assertEqual(len(diagrams), count)
                self.assertTrue(all(d.num_chords == n and d.is_knot for d in diagrams))

    def test_canonical_and_unique(self):
        diagrams = enumerate_knot_diagrams(4)
        codes = [canonical_form(d) for d in diagrams]
        self.assertEqual(len(set(codes)), len(codes))
        self.assertEqual(codes, [d.to_code() for d in diagrams])


if __name__ == "__main__":
    unittest.main()
