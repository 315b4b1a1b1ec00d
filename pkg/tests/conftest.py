"""Shared pytest fixtures for domino tests."""

import pytest

from domino.graph import Graph, complete, cycle, empty, path, star


@pytest.fixture
def petersen():
    """The Petersen graph: 3-regular, order 10."""
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


@pytest.fixture
def named_graphs():
    """Small graphs with hand-checked parameters."""
    return {
        "K1": empty(1),
        "K2": complete(2),
        "K3": complete(3),
        "K4": complete(4),
        "P3": path(3),
        "P4": path(4),
        "C4": cycle(4),
        "C5": cycle(5),
        "C6": cycle(6),
        "K1,3": star(3),
    }


@pytest.fixture
def four_variable_cnf():
    """Four variables, four clauses; satisfiable."""
    return "c four-variable example\np cnf 4 4\n1 2 -3 0\n4 -2 -1 0\n3 4 -2 0\n-4 -3 -1 0\n"


@pytest.fixture
def mock_qsettings(tmp_path, monkeypatch):
    """Patch QSettings to use a temp file for isolated config testing."""
    config_file = tmp_path / "domino.conf"

    try:
        from PyQt6.QtCore import QSettings
    except ImportError:
        pytest.skip("PyQt6 not available")

    class MockQSettings(QSettings):
        def __init__(self, *args, **kwargs):
            # Use IniFormat with our temp path
            super().__init__(str(config_file), QSettings.Format.IniFormat)

    monkeypatch.setattr("domino.settings.QSettings", MockQSettings)
    monkeypatch.delenv("DOMINO_JOBS", raising=False)
    return config_file
