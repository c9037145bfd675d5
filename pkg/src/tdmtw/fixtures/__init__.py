"""Small bundled inputs for examples and tests."""
from importlib.resources import files


def fixture_path(name: str):
    return files(__name__) / name
