#!/usr/bin/env python3
"""
FreeKnots Configuration Manager

Centralized configuration management with schema validation and
environment-specific overrides. The same schema file also carries the JSON
schemas for movie files, the catalog and the --json reports.
"""

import logging
import os
import sys
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

import jsonschema
import yaml

from lib.exceptions import ConfigurationError, ValidationError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_DIR = Path(__file__).resolve().parent.parent / "config"


@dataclass
class ConfigMetadata:
    """Configuration metadata for tracking and validation"""
    version: str
    schema_version: str
    loaded_at: datetime
    source_files: List[str]
    environment: str
    validation_passed: bool


class ConfigurationManager:
    """
    Centralized configuration management with schema validation

    Features:
    - Schema-based validation using JSON Schema
    - Environment-specific configuration overrides (FREEKNOTS_ENV)
    - Optional user settings file merged over the schema defaults
    - Validation of movie files and reports against named schemas
    """

    def __init__(self, config_dir: str = None, environment: str = None):
        self.config_dir = Path(config_dir) if config_dir else DEFAULT_CONFIG_DIR
        self.environment = environment or os.getenv("FREEKNOTS_ENV", "production")
        self.schema_cache: Dict[str, Dict] = {}
        self.config_cache: Dict[str, Dict] = {}
        self.metadata: Optional[ConfigMetadata] = None

        self._load_schema()

    def _load_schema(self) -> None:
        """Load and cache the configuration schema"""
        schema_path = self.config_dir / "schema.yml"

        if not schema_path.exists():
            raise ConfigurationError(f"Schema file not found: {schema_path}")

        try:
            with open(schema_path, "r", encoding="utf-8") as f:
                self.schema_cache["main"] = yaml.safe_load(f) or {}

            logger.debug(f"Loaded configuration schema from {schema_path}")

        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML in schema file {schema_path}: {e}")
        except OSError as e:
            raise ConfigurationError(f"Failed to load schema file {schema_path}: {e}")

    def load_configuration(self, config_path: str = None) -> Dict[str, Any]:
        """
        Load and validate configuration with environment overrides

        Args:
            config_path: Optional settings file; the schema defaults apply alone
                when omitted

        Returns:
            Validated and merged configuration dictionary
        """
        base_config: Dict[str, Any] = {}
        sources = [str(self.config_dir / "schema.yml")]

        if config_path is not None:
            path = Path(config_path)
            if not path.exists():
                raise ConfigurationError(f"Configuration file not found: {path}")
            try:
                with open(path, "r", encoding="utf-8") as f:
                    base_config = yaml.safe_load(f)
            except yaml.YAMLError as e:
                raise ConfigurationError(f"Invalid YAML in configuration file {path}: {e}")

            if base_config is None:
                raise ConfigurationError(f"Configuration file is empty: {path}")
            if not isinstance(base_config, dict):
                raise ConfigurationError(f"Configuration file must hold a mapping: {path}")
            sources.append(str(path))

        config = self._apply_environment_overrides(base_config)
        config = self._merge_schema_defaults(config)
        self._validate_configuration(config)

        self.metadata = ConfigMetadata(
            version=config["freeknots"].get("version", "1.0"),
            schema_version=config["freeknots"].get("schema_version", "1.0"),
            loaded_at=datetime.now(),
            source_files=sources,
            environment=self.environment,
            validation_passed=True,
        )
        self.config_cache[str(config_path)] = config

        logger.debug(f"Loaded configuration for environment {self.environment}")
        return config

    def _apply_environment_overrides(self, base_config: Dict[str, Any]) -> Dict[str, Any]:
        """Apply environment-specific configuration overrides"""
        environments = self.schema_cache["main"].get("environments", {})
        if self.environment not in environments:
            raise ConfigurationError(f"Unknown environment: {self.environment}")

        env_overrides = environments.get(self.environment) or {}
        if not env_overrides:
            return base_config

        logger.debug(f"Applied environment overrides for: {self.environment}")
        return self._deep_merge(base_config, env_overrides)

    def _merge_schema_defaults(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """Merge schema defaults into configuration"""
        defaults = self.schema_cache["main"].get("freeknots", {})
        config = dict(config)
        config["freeknots"] = self._deep_merge(defaults, config.get("freeknots") or {})
        return config

    def _validate_configuration(self, config: Dict[str, Any]) -> None:
        self.validate_document("settings", config)

    def validate_document(self, kind: str, document: Any) -> None:
        """
        Validate a document against one of the named schemas

        Raises:
            ConfigurationError: no schema of that name
            ValidationError: the document does not match, with the failing path
        """
        schema = self.schema_cache["main"].get("schemas", {}).get(kind)
        if not schema:
            raise ConfigurationError(f"No schema named {kind!r}")

        try:
            jsonschema.validate(document, schema)
        except jsonschema.ValidationError as e:
            error_msg = f"{kind} validation failed: {e.message}"
            if e.absolute_path:
                error_msg += f" at path: {'.'.join(str(p) for p in e.absolute_path)}"
            raise ValidationError(error_msg)

    def schema_names(self) -> List[str]:
        return sorted(self.schema_cache["main"].get("schemas", {}))

    def _deep_merge(self, base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
        """Deep merge two dictionaries"""
        result = base.copy()

        for key, value in override.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._deep_merge(result[key], value)
            else:
                result[key] = value

        return result

    def get_metadata(self) -> Optional[ConfigMetadata]:
        """Get configuration metadata"""
        return self.metadata

    def reload_configuration(self, config_path: str = None) -> Dict[str, Any]:
        """Reload configuration and clear caches"""
        self.config_cache.clear()
        self.schema_cache.clear()
        self._load_schema()
        return self.load_configuration(config_path)


# Global configuration manager instance
_config_manager: Optional[ConfigurationManager] = None


def get_config_manager(config_dir: str = None, environment: str = None) -> ConfigurationManager:
    """Get or create global configuration manager instance"""
    global _config_manager

    if _config_manager is None:
        _config_manager = ConfigurationManager(config_dir, environment)

    return _config_manager


def load_config(config_path: str = None, environment: str = None) -> Dict[str, Any]:
    """Convenience function to load configuration"""
    manager = get_config_manager(environment=environment)
    return manager.load_configuration(config_path)


def validate_document(kind: str, document: Any) -> None:
    """Convenience function to validate a movie file or report"""
    get_config_manager().validate_document(kind, document)


if __name__ == "__main__":
    import argparse

    parser = argparse.ArgumentParser(description="FreeKnots Configuration Manager")
    parser.add_argument("--config", "-c", help="Configuration file path")
    parser.add_argument("--environment", "-e", help="Environment (development, test, production)")
    args = parser.parse_args()

    try:
        config = ConfigurationManager(environment=args.environment).load_configuration(args.config)
        print(yaml.safe_dump(config, sort_keys=True))
    except (ConfigurationError, ValidationError) as e:
        print(f"✗ {e}", file=sys.stderr)
        sys.exit(1)
