import os
import sys
import tempfile
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

# The ledger location is read when src.config is first imported.
_LEDGER_DIR = tempfile.mkdtemp(prefix="ap3lab-ledger-")
os.environ["AP3LAB_LEDGER_PATH"] = os.path.join(_LEDGER_DIR, "runs.db")

import pytest  # noqa: E402

from src.config import CONFIG  # noqa: E402

CONFIG["app"]["log_file"] = None


@pytest.fixture
def ledger_path(tmp_path):
    return str(tmp_path / "ledger.db")
