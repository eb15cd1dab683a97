"""
Utility functions for logging
"""
from __future__ import annotations
import logging
import logging.config
from pathlib import Path
import yaml

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"


def setup_logging(logging_cfg_path: str | Path | None = None, level: int | None = None) -> None:
    """
    Setup logging configuration.

    :param logging_cfg_path: Path to the logging configuration YAML file
    :type logging_cfg_path: str | Path | None
    :param level: Optional override for the ``quadnet`` logger level (``--verbose``)
    :type level: int | None
    """
    if logging_cfg_path and Path(logging_cfg_path).exists():
        with open(logging_cfg_path, "r", encoding="utf-8") as f:
            cfg = yaml.safe_load(f)
        # file handlers need their directory before dictConfig opens them
        for handler in cfg.get("handlers", {}).values():
            filename = handler.get("filename")
            if filename:
                Path(filename).parent.mkdir(parents=True, exist_ok=True)
        logging.config.dictConfig(cfg)
    else:
        logging.basicConfig(level=logging.INFO, format=LOG_FORMAT)
    if level is not None:
        logging.getLogger("quadnet").setLevel(level)
