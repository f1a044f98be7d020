"""Symbolic basins of attraction, commitment sets and phenotypes of Boolean networks."""

import json

from . import _core
from ._core import DomainError, Error, ParseError, ResourceError

__all__ = ["Model", "Error", "ParseError", "DomainError", "ResourceError"]


class Model:
    """A Boolean network with its asynchronous or synchronous transition system.

    Result methods return the same JSON documents the command-line tool
    writes, decoded into dicts and lists.
    """

    def __init__(self, bnet, update="async", node_limit=1 << 24):
        self._m = _core.Model(bnet, update, node_limit)

    @classmethod
    def load(cls, path, update="async", node_limit=1 << 24):
        self = cls.__new__(cls)
        self._m = _core.Model.load(str(path), update, node_limit)
        return self

    @property
    def variables(self):
        return self._m.variables

    @property
    def update(self):
        return self._m.update

    @property
    def space_size(self):
        return int(self._m._space_size)

    @property
    def partial(self):
        return self._m.partial

    def import_attractors(self, seeds):
        """Use the given states or subspaces instead of searching.

        `seeds` is a list of bit strings or {name: 0/1} dicts, or the JSON
        text of such a list. Diagrams become partial afterwards.
        """
        if not isinstance(seeds, str):
            seeds = json.dumps(seeds)
        self._m.import_attractors(seeds)

    def attractors(self, style="isop"):
        return json.loads(self._m._attractors(style))

    def basins(self):
        return json.loads(self._m._basins())

    def commitment(self, style="isop"):
        return json.loads(self._m._commitment(style))

    def phenotypes(self, markers, style="isop"):
        return json.loads(self._m._phenotypes(_markers(markers), style))

    def check(self, formula, style="isop"):
        return json.loads(self._m._check(formula, style))

    def simulate(self, markers, walks=10000, seed=0, stratify=False, threads=0):
        return json.loads(self._m._simulate(_markers(markers), walks, seed, stratify, threads))

    def commitment_dot(self):
        return self._m.commitment_dot()

    def commitment_pie_svg(self):
        return self._m.commitment_pie_svg()

    def basin_barplot_svg(self):
        return self._m.basin_barplot_svg()

    def strong_basin_pie_svg(self):
        return self._m.strong_basin_pie_svg()

    def stg_dot(self):
        return self._m.stg_dot()


def _markers(markers):
    return markers if isinstance(markers, str) else ",".join(markers)
