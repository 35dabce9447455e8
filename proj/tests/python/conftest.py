import json
import os
import pathlib

import pytest

SOURCE = pathlib.Path(os.environ.get("BOUSSINESQ_SOURCE", pathlib.Path(__file__).resolve().parents[2]))


@pytest.fixture(scope="session")
def source_dir():
    return SOURCE


@pytest.fixture(scope="session")
def schema():
    return json.loads((SOURCE / "schema" / "run_config.schema.json").read_text())


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("BOUSSINESQ_CLI")
    if not path:
        pytest.skip("BOUSSINESQ_CLI not set")
    return path
