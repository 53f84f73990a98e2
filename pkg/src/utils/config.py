"""
Configuration utilities for the kernel's generator, law suite and CLI logging.
Reads from config/config.json; HYPERNET_CONFIG (environment or .env) points elsewhere.
"""
import json
import os
from pathlib import Path
from typing import Any, Dict

from dotenv import load_dotenv

# Load environment variables
load_dotenv()

CONFIG_ENV_VAR = "HYPERNET_CONFIG"


def get_config_path() -> Path:
    """Get the path to config.json config file."""
    override = os.getenv(CONFIG_ENV_VAR)
    if override:
        return Path(override)
    # Find project root (where main.py lives)
    current = Path(__file__).resolve().parent
    while current != current.parent:
        if (current / "main.py").exists():
            return current / "config" / "config.json"
        current = current.parent
    # Fallback
    return Path("config/config.json")


def load_config() -> Dict[str, Any]:
    """Load the kernel configuration from config.json."""
    config_path = get_config_path()
    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    with open(config_path, 'r', encoding='utf-8') as f:
        return json.load(f)


def save_config(config: Dict[str, Any]) -> None:
    """Save the kernel configuration to config.json."""
    config_path = get_config_path()
    config_path.parent.mkdir(parents=True, exist_ok=True)

    with open(config_path, 'w', encoding='utf-8') as f:
        json.dump(config, f, indent=2, ensure_ascii=False)


# ===== GENERATOR =====

def get_generator_defaults() -> Dict[str, Any]:
    """Get the default knobs for the seeded model generator."""
    config = load_config()
    return dict(config["generator"])


def set_generator_default(key: str, value: Any) -> None:
    """Set one generator default."""
    config = load_config()
    if key not in config["generator"]:
        raise ValueError(f"Generator setting {key} not in config")
    config["generator"][key] = value
    save_config(config)


# ===== LAW SUITE =====

def get_law_settings() -> Dict[str, int]:
    """Get the sweep sizes for the property suite."""
    config = load_config()
    return dict(config["law_suite"])


def get_law_examples() -> int:
    """Get the number of generated models each law is checked against."""
    return get_law_settings()["law_examples"]


def get_seed_sweep() -> int:
    """Get how many consecutive seeds the generator sweep validates."""
    return get_law_settings()["seed_sweep"]


# ===== LOGGING =====

def get_log_settings() -> Dict[str, Any]:
    """Get the CLI logging settings (log_dir, log_to_file, verbose)."""
    config = load_config()
    return dict(config["logging"])


# ===== CORPUS =====

def get_corpus_settings() -> Dict[str, Any]:
    """Get the corpus dump directory and default count."""
    config = load_config()
    return dict(config["corpus"])


# ===== CONVENIENCE FUNCTIONS =====

def print_current_config() -> None:
    """Print the current configuration (useful for debugging)."""
    config = load_config()
    print("\n" + "="*60)
    print("CURRENT KERNEL CONFIGURATION")
    print("="*60)
    for section in ("generator", "law_suite", "logging", "corpus"):
        for key, value in config[section].items():
            print(f"{section + '.' + key:<40} {value}")
    print("="*60 + "\n")
