#!/usr/bin/env python3
"""
Unit tests for FreeKnots invariants
"""

import os
import sys
import unittest

# Add lib directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from lib.diagram import (
    Basepoint,
    canonical_form,
    enumerate_knot_diagrams,
    parse_gauss_code,
)
from lib.exceptions import MultiComponentError
from lib.group import CayleyPoint, parse_word
from lib.invariant import (
    basepoints,
    f_map,
    f_star,
    gamma_word,
    invariant_l,
    long_invariant,
)
from lib.moves import Verdict, all_moves, apply_move, are_equivalent_bounded, simplify
from lib.parity import gaussian_parity

K1 = "1 5 1 6 2 7 2 8 3 9 3 10 4 11 4 12 11 13 10 12 9 13 8 14 7 15 6 14 5 15"


class TestInvariantL(unittest.TestCase):
    """Test cases for L"""

    def setUp(self):
        self.k1 = parse_gauss_code(K1)

    def test_k1(self):
        result = invariant_l(self.k1)
        self.assertEqual(result.L, 16)
        self.assertEqual(result.point, CayleyPoint(0, -16))
        self.assertEqual(list(result.word), parse_word("(b' a)^7 b' b (a b)^7"))
        self.assertEqual(len(result.parity.odd_chords()), 8)

    def test_k1_parity(self):
        parity = invariant_l(self.k1).parity.to_json()
        for chord in ("1", "2", "3", "4"):
            self.assertEqual(parity[chord], "OddBPrime")
        for chord in ("12", "13", "14", "15"):
            self.assertEqual(parity[chord], "OddB")
        for chord in ("5", "6", "7", "8", "9", "10", "11"):
            self.assertEqual(parity[chord], "Even")

    def test_small_knots(self):
        cases = {
            "()": 0,
            "1 1": 0,
            "1 2 1 2": 0,
            "1 2 3 1 2 3": 0,
            "1 2 1 3 2 3": 0,
            "1 2 2 1 3 3": 0,
        }
        for code, value in cases.items():
            with self.subTest(code=code):
                self.assertEqual(invariant_l(parse_gauss_code(code)).L, value)

    def test_bigon_word(self):
        result = invariant_l(parse_gauss_code("1 2 1 2"))
        self.assertEqual(result.word, ("b", "b", "b", "b"))
        self.assertEqual(result.to_json()["x"], 0)

    def test_basepoint_independence(self):
        points = basepoints(self.k1)
        self.assertEqual(len(points), 60)
        for base in points:
            with self.subTest(gap=base.gap, reverse=base.reverse):
                self.assertEqual(invariant_l(self.k1, base).L, 16)

    def test_relabel_and_rotation(self):
        rotated = parse_gauss_code(" ".join(K1.split()[7:] + K1.split()[:7]))
        self.assertEqual(invariant_l(rotated).L, 16)
        self.assertEqual(invariant_l(parse_gauss_code(canonical_form(self.k1))).L, 16)

    def test_long_invariant(self):
        self.assertEqual(long_invariant(self.k1, Basepoint()), -16)
        word = gamma_word(self.k1, Basepoint(0, 0, reverse=True))
        self.assertEqual(len(word), 30)

    def test_requires_knot(self):
        with self.assertRaises(MultiComponentError):
            invariant_l(parse_gauss_code("1 2 ; 1 2"))


class TestFMap(unittest.TestCase):
    """Test cases for deleting odd chords"""

    def test_mixed_parity(self):
        link = parse_gauss_code("1 2 1 3 2 3")
        self.assertEqual(f_map(link).to_code(), "1 1")
        self.assertEqual(f_star(link).to_code(), "1 1")

    def test_all_even_fixed(self):
        link = parse_gauss_code("1 2 3 1 2 3")
        self.assertEqual(f_map(link).to_code(), canonical_form(link))

    def test_k1_image(self):
        image = f_map(parse_gauss_code(K1))
        self.assertEqual(image.num_chords, 7)
        self.assertEqual(gaussian_parity(image).odd_chords(), [])
        self.assertEqual(invariant_l(image).L, 0)
        self.assertEqual(simplify(image).to_code(), "()")

    def test_f_star_reaches_even_diagram(self):
        image = f_star(parse_gauss_code("1 2 1 2"))
        self.assertEqual(image.to_code(), "()")

    def test_f_star_respects_moves(self):
        # one move on the diagram leaves the image in the same orbit
        for n in range(5):
            for link in enumerate_knot_diagrams(n):
                image = f_star(link)
                for move in all_moves(link, n + 1):
                    after = f_star(apply_move(link, move))
                    result = are_equivalent_bounded(image, after, n + 1, 10000)
                    with self.subTest(link=link.to_code(), move=move.kind.value):
                        self.assertIs(result.verdict, Verdict.EQUIVALENT)


if __name__ == "__main__":
    unittest.main()
