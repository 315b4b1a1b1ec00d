import os

from PyQt6.QtCore import QSettings

JOBS_ENV = "DOMINO_JOBS"


class Settings:
    """Persistent defaults using Qt's QSettings.

    Stores config in ~/.config/domino/domino.conf (on Linux).
    """

    DEFAULTS = {
        "jobs": 1,
        "seed": 7,
        "node_budget": 5_000_000,
        "n_max": 6,
        "progress": True,
    }
    MAX_JOBS = 256
    MIN_NODE_BUDGET = 1000
    MAX_N = 8  # exhaustive enumeration cap

    def __init__(self):
        self._settings = QSettings("domino", "domino")

    @property
    def jobs(self) -> int:
        """Worker count; DOMINO_JOBS overrides the stored value."""
        raw = os.environ.get(JOBS_ENV) or self._settings.value("jobs", self.DEFAULTS["jobs"])
        try:
            value = int(raw)
        except (TypeError, ValueError):
            value = self.DEFAULTS["jobs"]
        return max(1, min(self.MAX_JOBS, value))

    @jobs.setter
    def jobs(self, value: int):
        self._settings.setValue("jobs", value)

    @property
    def seed(self) -> int:
        value = int(self._settings.value("seed", self.DEFAULTS["seed"]))
        return max(0, value)

    @seed.setter
    def seed(self, value: int):
        self._settings.setValue("seed", value)

    @property
    def node_budget(self) -> int:
        value = int(self._settings.value("node_budget", self.DEFAULTS["node_budget"]))
        return max(self.MIN_NODE_BUDGET, value)

    @node_budget.setter
    def node_budget(self, value: int):
        self._settings.setValue("node_budget", value)

    @property
    def n_max(self) -> int:
        value = int(self._settings.value("n_max", self.DEFAULTS["n_max"]))
        return max(1, min(self.MAX_N, value))

    @n_max.setter
    def n_max(self, value: int):
        self._settings.setValue("n_max", value)

    @property
    def progress(self) -> bool:
        return self._settings.value("progress", self.DEFAULTS["progress"], type=bool)

    @progress.setter
    def progress(self, value: bool):
        self._settings.setValue("progress", value)

    def as_dict(self) -> dict:
        return {key: getattr(self, key) for key in self.DEFAULTS}

    def set_from_text(self, key: str, text: str) -> None:
        """Store one key parsed from a command-line string."""
        if key not in self.DEFAULTS:
            raise KeyError(key)
        if isinstance(self.DEFAULTS[key], bool):
            lowered = text.strip().lower()
            if lowered not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(f"{key} expects true or false, got {text!r}")
            setattr(self, key, lowered in ("true", "1", "yes"))
        else:
            setattr(self, key, int(text))

    def sync(self):
        """Force write settings to disk."""
        self._settings.sync()
