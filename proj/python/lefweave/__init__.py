"""Symbolic calculus for Weinstein Lefschetz presentations.

Thin wrapper over the compiled ``_lefweave`` module: results come back as
plain dicts and ints.
"""

import json

from . import _lefweave
from ._lefweave import LefweaveError

__all__ = ["LefweaveError", "Workspace", "pretty", "run"]


def run(text, file="<input>", depth=None, width=None, threads=1):
    """Run every command in a script. Returns (outputs, exit_code)."""
    lines, code = _lefweave.run(text, file, depth, width, threads)
    return [json.loads(line) for line in lines], code


def pretty(text, file="<input>"):
    return _lefweave.pretty(text, file)


class Workspace:
    """Fibers, data and scripts defined by a script text."""

    def __init__(self, text, file="<input>"):
        self._ws = _lefweave.Workspace(text, file)

    @classmethod
    def from_file(cls, path):
        with open(path, encoding="utf-8") as f:
            return cls(f.read(), str(path))

    @property
    def fibers(self):
        return self._ws.fibers()

    @property
    def data(self):
        return self._ws.data()

    @property
    def scripts(self):
        return self._ws.scripts()

    def presentation(self, datum):
        return self._ws.presentation(datum)

    def classes(self, datum):
        return [[int(x) for x in row] for row in self._ws.classes(datum)]

    def invariants(self, datum):
        return json.loads(self._ws.invariants(datum))

    def verify(self, script):
        return json.loads(self._ws.verify(script))

    def search(self, datum, depth=4, width=10000, threads=1):
        return json.loads(self._ws.search(datum, depth, width, threads))

    def flexify(self, datum, disks):
        return json.loads(self._ws.flexify(datum, disks))
