"""Domain-configurable dialog manager.

    >>> engine = Engine.load("data/train.domain", "data/timetable.facts")
    >>> s = engine.session()
    >>> s.say("When does a train depart to Rome?")["text"]
    'Where do you depart from?'
"""

from __future__ import annotations

import json
from pathlib import Path

from . import _dialogm
from ._dialogm import Error

__all__ = ["Engine", "Error", "Session", "query", "translate"]


class Session:
    def __init__(self, core: _dialogm.Engine, sid: str):
        self._core = core
        self.id = sid

    def say(self, text: str) -> dict:
        """One user turn; returns the system reply with the open goals."""
        return json.loads(self._core.say(self.id, text))

    def state(self) -> dict:
        return json.loads(self._core.state(self.id))

    def transcript(self) -> str:
        return self._core.transcript(self.id)


class Engine:
    def __init__(self, domain_source: str, facts_source: str):
        self._core = _dialogm.Engine(domain_source, facts_source)

    @classmethod
    def load(cls, domain_path: str | Path, facts_path: str | Path) -> "Engine":
        return cls(Path(domain_path).read_text(), Path(facts_path).read_text())

    def session(self) -> Session:
        return Session(self._core, self._core.create_session())


def translate(domain_source: str) -> str:
    """FIL theory of a terminology, one named formula per line."""
    return _dialogm.translate(domain_source)


def query(facts_source: str, text: str, domain_source: str | None = None) -> list[dict]:
    return json.loads(_dialogm.query(facts_source, text, domain_source))
