"""
Settings management for quadnet.
Defaults come from a YAML file (configs/default.yaml); CLI flags override them.
"""
from __future__ import annotations
from dataclasses import dataclass, field
from pathlib import Path
import logging

import yaml

from quadnet.errors import ConfigError

log = logging.getLogger("quadnet.settings")


@dataclass(frozen=True)
class Settings:
    """
    Settings class

    :var Example:
        >>> from quadnet.settings import Settings
        >>> settings = Settings.load("configs/default.yaml")
        >>> settings.p("raster.max_iter", 50)
        50
    """
    config: dict = field(default_factory=dict)

    @staticmethod
    def load(path: str | Path) -> "Settings":
        """
        Load settings from a YAML file.
        """
        path = Path(path)
        try:
            with path.open("r", encoding="utf-8") as f:
                cfg = yaml.safe_load(f) or {}
        except FileNotFoundError as e:
            raise ConfigError("--config", f"config file not found: {path}") from e
        except yaml.YAMLError as e:
            raise ConfigError("--config", f"unreadable YAML in {path}: {e}") from e
        if not isinstance(cfg, dict):
            raise ConfigError("--config", f"{path} must contain a mapping")
        return Settings(config=cfg)

    @staticmethod
    def load_optional(path: str | Path | None) -> "Settings":
        """Like :meth:`load`, but an absent default file yields empty settings."""
        if path is None or not Path(path).exists():
            if path is not None:
                log.debug("no config at %s, using built-in defaults", path)
            return Settings()
        return Settings.load(path)

    def p(self, key_path: str, default=None):
        """
        Get nested config keys using dot notation.
        Example: p("raster.escape_radius")
        """
        node = self.config
        for key in key_path.split("."):
            if not isinstance(node, dict) or key not in node:
                return default
            node = node[key]
        return node
