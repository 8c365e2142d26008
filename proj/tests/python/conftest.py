import os
import pathlib
import sys

import pytest

_build = pathlib.Path(os.environ.get("EPRSTEER_BUILD_DIR", pathlib.Path(__file__).resolve().parents[2] / "build"))
if (_build / "python").is_dir():
    sys.path.insert(0, str(_build / "python"))


@pytest.fixture(scope="session")
def cli():
    path = os.environ.get("EPRSTEER_CLI", str(_build / "tools" / "eprsteer"))
    if not os.path.exists(path):
        pytest.skip("command-line tool not built")
    return path
