import os
import sys

import pytest
from loguru import logger

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))


@pytest.fixture
def captured_warnings():
    """Collect loguru WARNING records emitted during a test."""
    records = []
    handler_id = logger.add(lambda message: records.append(message.record), level="WARNING")
    yield records
    logger.remove(handler_id)


@pytest.fixture(autouse=True)
def _drop_cli_sinks():
    # the CLI points loguru at whatever sys.stderr was during its test
    yield
    logger.remove()
