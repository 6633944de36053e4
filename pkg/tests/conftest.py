import sys
from functools import lru_cache
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from adakit import load_algebra  # noqa: E402

FIXTURES = ["point", "loop", "kronecker", "a5_rad2", "a6_rad2", "double_a4_rad2", "mixed6_rad2"]

# window budgets that keep the whole suite fast
BUDGETS = {"point": 10, "loop": 10, "kronecker": 30, "a5_rad2": 200, "a6_rad2": 200,
           "double_a4_rad2": 40, "mixed6_rad2": 60}


def data_path(name):
    return str(resources.files("adakit") / "data" / f"{name}.alg")


@lru_cache(maxsize=None)
def alg(name):
    return load_algebra(data_path(name))


@lru_cache(maxsize=None)
def window(name, budget=None):
    from adakit import knit
    return knit(alg(name), budget=budget or BUDGETS[name])


@pytest.fixture
def a5_rad2():
    return alg("a5_rad2")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
