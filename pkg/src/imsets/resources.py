"""Bundled reference data: the configuration-matrix and counts golden files
and the 3x3 σ-indecomposable example grid."""

from __future__ import annotations

from importlib.resources import files

from .representation import RepGrid, grid_from_json

DATA_FILES = ("table1.csv", "table2.csv", "counterexample.json")


def read_data(name: str) -> str:
    if name not in DATA_FILES:
        raise KeyError(f"no bundled file {name!r}")
    return files("imsets").joinpath("data", name).read_text(encoding="utf-8")


def data_path(name: str):
    return files("imsets").joinpath("data", name)


def counterexample() -> RepGrid:
    return grid_from_json(read_data("counterexample.json"))
