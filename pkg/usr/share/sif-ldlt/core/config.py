"""
SIF Configuration Module
Solver and benchmark defaults with an optional JSON file following XDG standards
"""

import os
import json
import logging
from pathlib import Path
from typing import Dict, Any, Optional, List

from .models import BK_CONSTANT, DEFAULT_ALPHA, FactorizeOptions, StabilityConfig

logger = logging.getLogger(__name__)


class Config:
    """Application configuration manager"""

    # Application version and metadata
    APP_VERSION = "1.0.0"
    APP_NAME = "sif-ldlt"
    APP_FULL_NAME = "sif-ldlt - Sparse Symmetric Indefinite LBL^T Factorization"
    APP_DESCRIPTION = "Minimum degree pivoting with 1x1 and 2x2 stability thresholds"

    def __init__(self, config_dir: Optional[Path] = None):
        self._setup_directories(config_dir)
        self._load_defaults()
        self.load()

    def _setup_directories(self, config_dir: Optional[Path] = None):
        """Locate the configuration directory following XDG standards"""
        if config_dir is not None:
            self.config_dir = Path(config_dir)
            return

        override = os.environ.get('SIF_LDLT_CONFIG_DIR')
        if override:
            self.config_dir = Path(override)
            return

        xdg_config_home = os.environ.get('XDG_CONFIG_HOME')
        if xdg_config_home:
            self.config_dir = Path(xdg_config_home) / 'sif-ldlt'
        else:
            self.config_dir = Path.home() / '.config' / 'sif-ldlt'

    def _load_defaults(self):
        """Load default configuration values"""
        self._config = {
            # Stability
            'alpha': DEFAULT_ALPHA,
            'bk_constant': BK_CONSTANT,

            # Dense phase
            'dense_switch_density': 1.0,
            'dense_switch_min_dim': 0,

            # Benchmark sweep
            'bench_sizes': [100],
            'bench_densities': [0.30, 0.20, 0.10, 0.05],
            'bench_instances': 20,
            'bench_seed': 42,
            'bench_workers': 1,

            # Generator
            'value_low': -1.0,
            'value_high': 1.0,

            # Output
            'float_format': '.17g',
        }

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value"""
        return self._config.get(key, default)

    def set(self, key: str, value: Any) -> None:
        """Set configuration value"""
        self._config[key] = value

    def update(self, updates: Dict[str, Any]) -> None:
        """Update multiple configuration values, skipping None"""
        self._config.update({k: v for k, v in updates.items() if v is not None})

    def reset(self, key: Optional[str] = None) -> None:
        """Reset configuration to defaults"""
        if key:
            current = dict(self._config)
            self._load_defaults()
            defaults = self._config
            self._config = current
            if key in defaults:
                self._config[key] = defaults[key]
        else:
            self._load_defaults()

    @property
    def config_file(self) -> Path:
        """Path to the configuration file"""
        return self.config_dir / 'config.json'

    def save(self) -> bool:
        """Save configuration to file"""
        try:
            self.config_dir.mkdir(parents=True, exist_ok=True)
            with open(self.config_file, 'w', encoding='utf-8') as f:
                json.dump(self._config, f, indent=2, sort_keys=True)
            return True
        except OSError as e:
            logger.warning("Error saving configuration: %s", e)
            return False

    def load(self) -> bool:
        """Load configuration from file"""
        try:
            if self.config_file.exists():
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    saved_config = json.load(f)
                self._config.update(saved_config)
            return True
        except (OSError, json.JSONDecodeError) as e:
            logger.warning("Error loading configuration: %s", e)
            return False

    def export_config(self, file_path: str) -> bool:
        """Export configuration to file"""
        try:
            with open(file_path, 'w', encoding='utf-8') as f:
                json.dump(self._config, f, indent=2, sort_keys=True)
            return True
        except OSError as e:
            logger.warning("Error exporting configuration: %s", e)
            return False

    def import_config(self, file_path: str) -> bool:
        """Import configuration from file"""
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                imported_config = json.load(f)
            self._config.update(imported_config)
            return True
        except (OSError, json.JSONDecodeError) as e:
            logger.warning("Error importing configuration: %s", e)
            return False

    # Typed accessors
    def get_alpha(self) -> float:
        return float(self.get('alpha', DEFAULT_ALPHA))

    def get_bench_sizes(self) -> List[int]:
        return [int(v) for v in self.get('bench_sizes', [100])]

    def get_bench_densities(self) -> List[float]:
        return [float(v) for v in self.get('bench_densities', [0.30, 0.20, 0.10, 0.05])]

    def get_float_format(self) -> str:
        return self.get('float_format', '.17g')

    def stability(self) -> StabilityConfig:
        """Build the stability settings from the current values"""
        return StabilityConfig(self.get_alpha(), float(self.get('bk_constant', BK_CONSTANT)))

    def factorize_options(self) -> FactorizeOptions:
        """Build factorization options from the current values"""
        return FactorizeOptions(
            self.stability(),
            float(self.get('dense_switch_density', 1.0)),
            int(self.get('dense_switch_min_dim', 0)),
        )
