#!/usr/bin/env python3
"""
Unit tests for FreeKnots Reidemeister moves and bounded search
"""

import os
import sys
import unittest

# Add lib directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from lib.diagram import canonical_form, enumerate_knot_diagrams, parse_gauss_code
from lib.exceptions import BudgetExceededError, SiteInvalidError
from lib.invariant import invariant_l
from lib.moves import (
    MoveDescriptor,
    MoveKind,
    Verdict,
    all_moves,
    apply_move,
    are_equivalent_bounded,
    find_r1_add_sites,
    find_r1_sites,
    find_r2_add_sites,
    find_r2_sites,
    find_r3_sites,
    fresh_chord_ids,
    inverse_move,
    orbit,
    simplify,
)

K1 = "1 5 1 6 2 7 2 8 3 9 3 10 4 11 4 12 11 13 10 12 9 13 8 14 7 15 6 14 5 15"


class TestMoveSites(unittest.TestCase):
    """Test cases for move detection and application"""

    def test_r1_sites(self):
        self.assertEqual(len(find_r1_sites(parse_gauss_code("1 1 2 2"))), 2)
        sites = find_r1_sites(parse_gauss_code("1 2 2 1"))
        self.assertEqual(sorted(s.chords for s in sites), [("1",), ("2",)])
        self.assertEqual(find_r1_sites(parse_gauss_code("1 2 1 2")), [])

    def test_r1_remove(self):
        link = parse_gauss_code("1 1 2 2")
        move = [s for s in find_r1_sites(link) if s.chords == ("1",)][0]
        self.assertEqual(apply_move(link, move).to_code(), "2 2")
        self.assertIsNone(move.image("1"))
        self.assertEqual(move.image("2"), "2")

    def test_r2_sites(self):
        for code in ("1 2 1 2", "1 2 2 1", "1 2 ; 2 1"):
            with self.subTest(code=code):
                link = parse_gauss_code(code)
                (site,) = find_r2_sites(link)
                self.assertEqual(set(site.chords), {"1", "2"})
                after = apply_move(link, site)
                self.assertEqual(after.num_chords, 0)
                self.assertEqual(len(after.components), len(link.components))

    def test_r3_sites(self):
        link = parse_gauss_code("1 2 2 3 3 1")
        (site,) = find_r3_sites(link)
        self.assertEqual(site.chords, ("1", "2", "3"))
        self.assertEqual(apply_move(link, site).to_code(), "2 1 3 2 1 3")
        self.assertEqual(len(find_r3_sites(parse_gauss_code("1 2 1 3 2 3"))), 2)

    def test_additions(self):
        link = parse_gauss_code("1 1")
        self.assertEqual(fresh_chord_ids(link, 2), ["2", "3"])

        r1 = find_r1_add_sites(link)
        self.assertEqual(len(r1), 2)
        self.assertEqual(apply_move(link, r1[0]).to_code(), "2 2 1 1")

        r2 = find_r2_add_sites(parse_gauss_code("()"))
        codes = {apply_move(parse_gauss_code("()"), m).to_code() for m in r2}
        self.assertEqual(codes, {"1 2 1 2", "1 2 2 1"})

    def test_all_moves_respects_bound(self):
        link = parse_gauss_code("1 1")
        self.assertFalse(any(m.kind is MoveKind.R1_ADD for m in all_moves(link, 1)))
        self.assertTrue(any(m.kind is MoveKind.R1_ADD for m in all_moves(link, 2)))
        self.assertFalse(any(m.kind is MoveKind.R2_ADD for m in all_moves(link, 2)))

    def test_invalid_sites(self):
        link = parse_gauss_code("1 2 1 2")
        cases = [
            MoveDescriptor(MoveKind.R1_REMOVE, ("1",), ((0, 0),)),
            MoveDescriptor(MoveKind.R1_ADD, ("1",), ((0, 0),)),
            MoveDescriptor(MoveKind.R1_ADD, ("9",), ((0, 7),)),
            MoveDescriptor(MoveKind.R2_REMOVE, ("1", "2"), ((0, 0), (0, 1))),
            MoveDescriptor(MoveKind.R2_ADD, ("8", "9"), ((1, 0), (0, 0))),
            MoveDescriptor(MoveKind.R3, ("1", "2"), ((0, 0),)),
        ]
        for move in cases:
            with self.subTest(kind=move.kind.value, site=move.site):
                with self.assertRaises(SiteInvalidError):
                    apply_move(link, move)


class TestInverseMoves(unittest.TestCase):
    """Test cases for undoing moves"""

    def test_inverse_restores_diagram(self):
        for n in range(4):
            for link in enumerate_knot_diagrams(n):
                for move in all_moves(link, n + 2):
                    with self.subTest(code=link.to_code(), move=move.to_json()):
                        after = apply_move(link, move)
                        back = apply_move(after, inverse_move(link, move))
                        self.assertEqual(canonical_form(back), canonical_form(link))

    def test_moves_preserve_l(self):
        for n in range(5):
            for link in enumerate_knot_diagrams(n):
                value = invariant_l(link).L
                for move in all_moves(link, n + 2):
                    with self.subTest(code=link.to_code(), move=move.to_json()):
                        self.assertEqual(invariant_l(apply_move(link, move)).L, value)


class TestSearch(unittest.TestCase):
    """Test cases for simplification and bounded search"""

    def test_simplify(self):
        self.assertEqual(simplify(parse_gauss_code("1 2 2 1")).to_code(), "()")
        self.assertEqual(simplify(parse_gauss_code("1 2 1 2")).to_code(), "()")
        self.assertEqual(simplify(parse_gauss_code(K1)).num_chords, 15)

    def test_orbit(self):
        members = orbit(parse_gauss_code("1 1"), max_chords=2, max_nodes=100)
        self.assertTrue({"()", "1 1", "1 1 2 2", "1 2 1 2"} <= members)
        for code in members:
            self.assertLessEqual(parse_gauss_code(code).num_chords, 2)

    def test_orbit_parallel_matches(self):
        link = parse_gauss_code("1 2 1 2")
        self.assertEqual(
            orbit(link, max_chords=3, max_nodes=1000),
            orbit(link, max_chords=3, max_nodes=1000, workers=4),
        )

    def test_orbit_budget(self):
        with self.assertRaises(BudgetExceededError) as ctx:
            orbit(parse_gauss_code("1 1"), max_chords=3, max_nodes=2)
        self.assertEqual(len(ctx.exception.partial), 2)

        with self.assertRaises(ValueError):
            orbit(parse_gauss_code("1 1"), max_chords=0, max_nodes=2)

    def test_equivalent(self):
        result = are_equivalent_bounded("1 1", "()", max_chords=2, max_nodes=100)
        self.assertEqual(result.verdict, Verdict.EQUIVALENT)
        self.assertEqual(result.invariants, (0, 0))

        result = are_equivalent_bounded("1 2 1 2", "1 2 2 1", max_chords=2, max_nodes=100)
        self.assertEqual(result.verdict, Verdict.EQUIVALENT)

    def test_distinct(self):
        result = are_equivalent_bounded(K1, "()", max_chords=15, max_nodes=10)
        self.assertEqual(result.verdict, Verdict.DISTINCT)
        self.assertEqual(result.invariants, (16, 0))
        self.assertEqual(result.to_json()["invariants"], [16, 0])

        result = are_equivalent_bounded("1 2 ; 1 2", "()", max_chords=2, max_nodes=10)
        self.assertEqual(result.verdict, Verdict.DISTINCT)

    def test_unknown(self):
        result = are_equivalent_bounded("1 2 3 1 2 3", "()", max_chords=6, max_nodes=3)
        self.assertEqual(result.verdict, Verdict.UNKNOWN)
        self.assertEqual(result.reason, "node budget exhausted")


if __name__ == "__main__":
    unittest.main()
