"""Topology of Gelfand-Zeitlin fibers.

Every function takes a staircase (or equality pattern) as a dict or JSON
string and returns decoded JSON.
"""

import json

from . import _core

__version__ = _core.__version__
StructureError = _core.StructureError


def _doc(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def validate(doc):
    return json.loads(_core.validate(_doc(doc)))


def pattern(doc):
    return json.loads(_core.pattern(_doc(doc)))


def render(doc, format="ascii"):
    return _core.render(_doc(doc), format)


def fiber(doc):
    return json.loads(_core.fiber(_doc(doc)))


def fiber_text(doc):
    return _core.fiber_text(_doc(doc))


def invariants(doc):
    return json.loads(_core.invariants(_doc(doc)))


def eigencheck(doc, tol=1e-9):
    return json.loads(_core.eigencheck(_doc(doc), tol))


def faces(doc, n_bound=4):
    return json.loads(_core.faces(_doc(doc), n_bound))


def report(doc, tol=1e-9):
    return json.loads(_core.report(_doc(doc), tol))
