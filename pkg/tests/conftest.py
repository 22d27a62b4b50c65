import json

import pytest

from knotconf.application import Application
from knotconf.arnold import Coefficients, RingParams


@pytest.fixture
def ring():
    """Build RingParams, n = 3 over the integers unless told otherwise."""

    def make(q: int, n: int = 3, coefficients: str = "integers"):
        return RingParams(n, q, Coefficients.from_str(coefficients))

    return make


@pytest.fixture
def example_records():
    """Pairings for the connect-sum example on C_{4,0}."""
    return [
        {"q": 0, "t": 0, "monomial": "1", "class": "a1", "value": 2},
        {"q": 0, "t": 0, "monomial": "1", "class": "a2", "value": 13},
        {"q": 2, "t": 0, "monomial": "w(1,2)", "class": "a1", "value": 5},
        {"q": 2, "t": 0, "monomial": "w(1,2)", "class": "a2", "value": 7},
        {
            "q": 4,
            "t": 0,
            "monomial": "w(1,2)*w(3,4)",
            "class": "a1",
            "value": 11,
        },
        {
            "q": 4,
            "t": 0,
            "monomial": "w(1,2)*w(3,4)",
            "class": "a2",
            "value": 3,
        },
    ]


@pytest.fixture
def example_table_file(tmp_path, example_records):
    path = tmp_path / "ex.json"
    path.write_text(json.dumps(example_records, indent=2), encoding="utf-8")
    return path


@pytest.fixture
def cli(capsys):
    """Run the command line, returning the exit status and stdout."""

    def run(*args: str):
        status = Application().run(["knotconf", *args])
        return status, capsys.readouterr().out

    return run
