import json
import os
import pathlib
import subprocess

import pytest

DATA = pathlib.Path(os.environ.get("GZ_TEST_DATA", pathlib.Path(__file__).parents[1] / "data"))
SCHEMAS = pathlib.Path(os.environ.get("GZFIBER_SCHEMAS", pathlib.Path(__file__).parents[2] / "schemas"))
CLI = os.environ.get("GZFIBER_CLI")

SO5 = {"flavor": "orthogonal", "rows": [["0"], ["1"], ["1", "-1"], ["2", "1"]]}
SMALL_U = {"flavor": "unitary", "rows": [["2"], ["5/2", "3/2"], ["3", "2", "1"]]}


@pytest.fixture
def u10():
    return json.loads((DATA / "u10.json").read_text())


@pytest.fixture
def o23():
    return json.loads((DATA / "o23.json").read_text())


@pytest.fixture
def so5():
    return SO5


@pytest.fixture
def schema():
    def load(name):
        return json.loads((SCHEMAS / f"{name}.schema.json").read_text())
    return load


@pytest.fixture
def cli():
    if not CLI:
        pytest.skip("GZFIBER_CLI not set")

    def run(*args, stdin=None):
        doc = None if stdin is None else json.dumps(stdin)
        return subprocess.run([CLI, *args], input=doc, capture_output=True, text=True)
    return run
