#!/usr/bin/env python3
"""
Unit tests for the FreeKnots catalog
"""

import os
import shutil
import sys
import tempfile
import unittest
from pathlib import Path

# Add lib directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", ".."))

from lib.catalog import CatalogEntry, find_entry, load_catalog, validate_catalog
from lib.exceptions import ConfigurationError, ValidationError


class TestCatalog(unittest.TestCase):
    """Test cases for loading and checking catalog entries"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def write(self, content):
        path = Path(self.temp_dir) / "catalog.yml"
        path.write_text(content, encoding="utf-8")
        return path

    def test_bundled_catalog(self):
        entries = load_catalog()
        names = [entry.name for entry in entries]
        self.assertIn("K1", names)
        self.assertEqual(len(names), len(set(names)))
        self.assertEqual(validate_catalog(entries), [])

    def test_k1_entry(self):
        entry = find_entry(load_catalog(), "K1")
        self.assertEqual(entry.expected_l, 16)
        self.assertEqual(entry.computed_l(), 16)
        self.assertEqual(entry.to_json()["computedL"], 16)

    def test_relative_path(self):
        self.assertEqual(len(load_catalog("config/catalog.yml")), len(load_catalog()))

    def test_find_missing(self):
        with self.assertRaises(ValidationError):
            find_entry(load_catalog(), "no-such-knot")

    def test_wrong_expectation(self):
        path = self.write(
            """
entries:
  - name: kink
    code: "1 1"
    expected_l: 4
  - name: bigon
    code: "1 2 1 2"
"""
        )
        self.assertEqual(validate_catalog(load_catalog(path)), ["kink"])

    def test_bad_code_is_reported(self):
        entries = [CatalogEntry("broken", "1 2"), CatalogEntry("link", "1 2 ; 1 2")]
        self.assertEqual(validate_catalog(entries), ["broken"])
        self.assertIsNone(entries[1].computed_l())

    def test_duplicate_names(self):
        path = self.write(
            """
entries:
  - name: kink
    code: "1 1"
  - name: kink
    code: "1 2 2 1"
"""
        )
        with self.assertRaises(ConfigurationError):
            load_catalog(path)

    def test_schema_errors(self):
        path = self.write(
            """
entries:
  - name: kink
    code: "1 1"
    colour: red
"""
        )
        with self.assertRaises(ValidationError):
            load_catalog(path)

    def test_missing_and_malformed(self):
        with self.assertRaises(ConfigurationError):
            load_catalog(Path(self.temp_dir) / "absent.yml")
        with self.assertRaises(ConfigurationError):
            load_catalog(self.write("entries: [unclosed"))


if __name__ == "__main__":
    unittest.main()
