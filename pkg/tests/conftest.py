import os
from pathlib import Path

import pytest

GOLDEN_DIR = Path(__file__).parent / "golden"


class GoldenChecker:
    """Byte-compare content against files under tests/golden.

    Set UPDATE_GOLDENS=1 to (re)write the stored files instead of comparing.
    """

    def check(self, name: str, content: str) -> None:
        path = GOLDEN_DIR / name
        if os.environ.get("UPDATE_GOLDENS") == "1":
            GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
            path.write_text(content, encoding="utf-8")
            return
        if not path.exists():
            pytest.fail(
                f"golden file {name} missing; run UPDATE_GOLDENS=1 pytest to create it"
            )
        assert content == path.read_text(encoding="utf-8"), f"golden mismatch: {name}"


@pytest.fixture
def golden():
    return GoldenChecker()
