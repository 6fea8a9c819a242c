from pathlib import Path

import pytest

from sample_fixture import write_sample


@pytest.fixture
def sample_records(tmp_path) -> Path:
    return write_sample(tmp_path / "records.jsonl")
