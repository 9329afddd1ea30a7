"""Bundled example presentations F1..F7."""

from importlib import resources

from ..core import Presentation, parse_presentation

NAMES = ("F1", "F2", "F3", "F4", "F5", "F6", "F7")


def fixture_text(name: str) -> str:
    return resources.files(__package__).joinpath(f"{name}.dsl").read_text()


def load(name: str) -> Presentation:
    return parse_presentation(fixture_text(name))
