#!/usr/bin/env python3
"""
Catalog of Named Free Knots

Fixtures loaded from config/catalog.yml. Every entry is checked against the
catalog_entry schema and, when it records an expected L, against the
computed invariant.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from lib.config_manager import DEFAULT_CONFIG_DIR, get_config_manager
from lib.diagram import FreeLink, parse_gauss_code
from lib.exceptions import ConfigurationError, InputError, ValidationError
from lib.invariant import invariant_l

logger = logging.getLogger(__name__)

DEFAULT_CATALOG = DEFAULT_CONFIG_DIR / "catalog.yml"


@dataclass
class CatalogEntry:
    name: str
    code: str
    expected_l: Optional[int] = None
    note: str = ""

    @property
    def link(self) -> FreeLink:
        return parse_gauss_code(self.code)

    def computed_l(self) -> Optional[int]:
        link = self.link
        return invariant_l(link).L if link.is_knot else None

    def check(self) -> bool:
        """True when the code parses and any expected L matches"""
        if self.expected_l is None:
            return bool(parse_gauss_code(self.code).components)
        return self.computed_l() == self.expected_l

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "code": self.code,
            "expectedL": self.expected_l,
            "computedL": self.computed_l(),
            "note": self.note,
        }


def load_catalog(path=None) -> List[CatalogEntry]:
    """
    Load and validate catalog entries

    Raises:
        ConfigurationError: missing or malformed file, or duplicate names
        ValidationError: an entry does not match the catalog_entry schema
    """
    path = Path(path) if path else DEFAULT_CATALOG
    if not path.is_absolute() and not path.exists():
        path = DEFAULT_CONFIG_DIR.parent / path
    if not path.exists():
        raise ConfigurationError(f"Catalog file not found: {path}")

    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigurationError(f"Invalid YAML in catalog {path}: {e}")

    manager = get_config_manager()
    entries = []
    names = set()
    for raw in data.get("entries", []):
        manager.validate_document("catalog_entry", raw)
        if raw["name"] in names:
            raise ConfigurationError(f"Duplicate catalog entry: {raw['name']}")
        names.add(raw["name"])
        entries.append(
            CatalogEntry(raw["name"], raw["code"], raw.get("expected_l"), raw.get("note", ""))
        )

    logger.debug(f"Loaded {len(entries)} catalog entries from {path}")
    return entries


def validate_catalog(entries: List[CatalogEntry]) -> List[str]:
    """Names of entries whose code or expected L is wrong"""
    failures = []
    for entry in entries:
        try:
            ok = entry.check()
        except InputError as e:
            logger.error(f"Catalog entry {entry.name} does not parse: {e}")
            ok = False
        if not ok:
            failures.append(entry.name)
    return failures


def find_entry(entries: List[CatalogEntry], name: str) -> CatalogEntry:
    for entry in entries:
        if entry.name == name:
            return entry
    raise ValidationError(f"No catalog entry named {name!r}")
