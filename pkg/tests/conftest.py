import random

import hypothesis
import pytest

SEED = 20260811

hypothesis.settings.register_profile(
    "formalitykit", max_examples=50, derandomize=True, deadline=None
)
hypothesis.settings.load_profile("formalitykit")


def pytest_report_header(config):
    return (
        f"formalitykit suite seed: {SEED} "
        "(hypothesis derandomized; plain random loops use the printed seed)"
    )


@pytest.fixture
def rng():
    return random.Random(SEED)
