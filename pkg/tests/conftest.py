import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))  # for oracles.py

settings.register_profile(
    "ci",
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

DATA_DIR = Path(__file__).parent / "data"


def pytest_terminal_summary(terminalreporter):
    import _acceptance_log

    if _acceptance_log.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_log.VERDICTS:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def heart_csv() -> str:
    return str(DATA_DIR / "synthetic_heart.csv")


@pytest.fixture(scope="session")
def prepared(heart_csv):
    """Default-config pipeline front half, shared across tests for speed."""
    from hgaclust.experiment import ExperimentConfig, prepare_points

    config = ExperimentConfig(input=heart_csv)
    data, features, labels, projected, _ = prepare_points(config)
    return data, features, labels, projected
