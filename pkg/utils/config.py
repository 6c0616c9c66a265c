"""
Configuration management for zlift
"""
import os
import json
import hashlib
from dataclasses import dataclass, asdict, field
from typing import Any, Dict, List, Optional

from sympy import isprime

from utils.constants import SUITE_DEFAULTS, SUITES, ErrorCode
from utils.errors import VerificationError


@dataclass
class Config:
    """Toolkit-wide configuration"""
    # Get the project root directory
    SDK_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    CONFIG_FILE = os.path.join(SDK_ROOT, "zlift_config.json")
    LATTICE_DIR = os.path.join(SDK_ROOT, "lattices")

    # Logging configuration
    log_level: str = "INFO"
    log_file: Optional[str] = os.path.join(SDK_ROOT, "zlift.log")
    console_log: bool = True
    reset_logs: bool = True

    # Computation
    cache_dir: str = os.path.join(SDK_ROOT, ".zlift_cache")
    lattice_dir: str = LATTICE_DIR
    closure_rounds: int = 12

    def save(self):
        """Save configuration to file with comments"""
        config_data = asdict(self)

        os.makedirs(os.path.dirname(self.CONFIG_FILE), exist_ok=True)

        comments = {
            "log_level": "Console logging level (DEBUG/INFO/ERROR)",
            "log_file": "Log file path (null disables file logging)",
            "reset_logs": "Reset logs on startup",
            "console_log": "Enable console logging",
            "cache_dir": "Directory for content-addressed piece caches",
            "lattice_dir": "Directory searched for lattice .cfg files",
            "closure_rounds": "Round limit for integral form closure",
        }

        commented_config = {
            "_comment": "zlift configuration",
            "_instructions": "Delete cache_dir to force recomputation of cached pieces",
            "config": config_data
        }

        for key, comment in comments.items():
            commented_config[f"_{key}_comment"] = comment

        try:
            with open(self.CONFIG_FILE, 'w') as f:
                json.dump(commented_config, f, indent=2, sort_keys=False)
        except OSError as e:
            print(f"Error saving config: {e}")

    @classmethod
    def load(cls) -> 'Config':
        """Load configuration from file or create default"""
        try:
            with open(cls.CONFIG_FILE, 'r') as f:
                data = json.load(f)
                config_data = data.get("config", {})
                return cls(**config_data)
        except (FileNotFoundError, json.JSONDecodeError):
            config = cls()
            config.save()
            return config
        except TypeError as e:
            print(f"Unexpected keys in config: {e}")
            return cls()


@dataclass
class SuiteConfig:
    """Parameters of one verification suite run"""
    suite: str
    params: Dict[str, Any] = field(default_factory=dict)
    cache_dir: Optional[str] = None
    json_output: bool = False

    @classmethod
    def with_defaults(cls, suite: str, overrides: Optional[Dict[str, Any]] = None, **kwargs) -> 'SuiteConfig':
        """Merge suite defaults with explicit overrides (None values ignored)"""
        params = dict(SUITE_DEFAULTS.get(suite, {}))
        for key, value in (overrides or {}).items():
            if value is not None:
                params[key] = value
        return cls(suite=suite, params=params, **kwargs)

    def validate(self):
        """Raise CONFIG_INVALID for unknown suites, non-positive bounds or non-primes"""
        if self.suite != "all" and self.suite not in SUITES:
            raise VerificationError(ErrorCode.CONFIG_INVALID, f"unknown suite {self.suite!r}")
        for key in ("order", "weight", "n", "degree"):
            value = self.params.get(key)
            if value is not None and (not isinstance(value, int) or value < 1):
                raise VerificationError(ErrorCode.CONFIG_INVALID, f"{key} must be a positive integer, got {value!r}")
        window = self.params.get("window")
        if window is not None and (not isinstance(window, int) or window < 1):
            raise VerificationError(ErrorCode.CONFIG_INVALID, f"window must be a positive integer, got {window!r}")
        primes: List[int] = self.params.get("primes") or []
        bad = [p for p in primes if not isprime(p)]
        if bad:
            raise VerificationError(ErrorCode.CONFIG_INVALID, f"prime list contains non-primes {bad}")

    def content_hash(self) -> str:
        """Hash of the suite id and parameters (cache location and output format excluded)"""
        body = json.dumps({"suite": self.suite, "params": self.params}, sort_keys=True, default=str)
        return hashlib.sha256(body.encode()).hexdigest()
