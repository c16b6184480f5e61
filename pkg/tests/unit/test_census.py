#!/usr/bin/env python3
"""
Unit tests for the FreeKnots census
"""

import os
import sys
import unittest

# Add lib directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from lib.census import CensusRow, census_row, run_census
from lib.config_manager import validate_document


class TestCensus(unittest.TestCase):
    """Test cases for the exhaustive census"""

    @classmethod
    def setUpClass(cls):
        cls.report = run_census(4)

    def test_passes(self):
        self.assertTrue(self.report.ok)
        for row in self.report.rows:
            with self.subTest(n=row.n):
                self.assertEqual(row.failures, 0)

    def test_diagram_counts(self):
        self.assertEqual([row.diagrams for row in self.report.rows], [1, 1, 2, 5, 17])

    def test_l_distribution(self):
        for row in self.report.rows:
            with self.subTest(n=row.n):
                self.assertEqual(sum(row.l_distribution.values()), row.diagrams)
                self.assertTrue(all(value % 4 == 0 for value in row.l_distribution))
                self.assertLessEqual(row.mod8_divisible, row.diagrams)

    def test_moves_checked(self):
        self.assertEqual(self.report.rows[0].moves_checked, 0)
        # the kink has a single R1 loop
        self.assertEqual(self.report.rows[1].moves_checked, 1)

    def test_additions_checked(self):
        # one loop and two bigons on the empty circle
        self.assertEqual(self.report.rows[0].additions_checked, 3)
        # the kink has two gaps: two loops and three gap pairs of bigons
        self.assertEqual(self.report.rows[1].additions_checked, 8)
        self.assertEqual(self.report.to_json()["rows"][1]["additionsChecked"], 8)

    def test_json(self):
        data = self.report.to_json()
        validate_document("census_report", data)
        self.assertTrue(data["ok"])
        self.assertEqual(data["rows"][1]["L"], {"0": 1})

    def test_parallel_matches(self):
        parallel = run_census(3, workers=3)
        self.assertEqual(parallel.to_json()["rows"], self.report.to_json()["rows"][:4])

    def test_negative_bound(self):
        with self.assertRaises(ValueError):
            run_census(-1)


class TestCensusRow(unittest.TestCase):
    """Test cases for single census rows"""

    def test_failures_sum(self):
        row = CensusRow(3, mod4_failures=1, fmap_failures=2, mod8_divisible=5)
        self.assertEqual(row.failures, 3)

    def test_empty_diagram(self):
        row = census_row(0)
        self.assertEqual(row.diagrams, 1)
        self.assertEqual(row.l_distribution[0], 1)
        self.assertEqual(row.mod8_divisible, 1)


if __name__ == "__main__":
    unittest.main()
