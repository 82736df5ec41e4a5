import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo",
    max_examples=int(os.environ.get("FRAMEDKV_HYPOTHESIS_EXAMPLES", "25")),
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def report(capsys):
    """Print one verdict line straight to the terminal, bypassing capture."""

    def emit(number: int, ok: bool, text: str) -> None:
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {text}")

    return emit
