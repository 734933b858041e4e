from pathlib import Path

import pytest

from perfreq.ingestion import load_models

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def telescope():
    models, errors = load_models(FIXTURES / "telescope.csv")
    return models, errors


@pytest.fixture
def telescope_models(telescope):
    return {m.model_id: m for m in telescope[0]}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, ok in sorted(RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {name}")
