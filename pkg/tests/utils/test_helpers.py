"""Shared loaders for the test suite."""
from pathlib import Path

from src.notation import load_text

ROOT = Path(__file__).resolve().parents[2]
MODELS_DIR = ROOT / "models"
GOLDEN_DIR = ROOT / "tests" / "fixtures" / "golden"


def model_path(name: str) -> Path:
    return MODELS_DIR / name


def load_model(name: str):
    """Build a model from models/ and fail loudly if it does not validate."""
    h, report = load_text(model_path(name).read_text(encoding="utf-8"))
    assert report.ok, report.lines()
    return h


def load_source(text: str):
    """Build inline `.hn` text, asserting a clean report."""
    h, report = load_text(text)
    assert report.ok, report.lines()
    return h


def golden_text(name: str) -> str:
    return (GOLDEN_DIR / name).read_text(encoding="utf-8")
