"""Steiner 2-TC-spanners of hypergrid posets, from Python.

Posets and spanners are plain dicts in the same shape as the CLI's JSON
files (1-based coordinates and ids).
"""

import json

from . import _core
from ._core import GuardError, InputError

__version__ = _core.version()


def _j(x):
    return x if isinstance(x, str) else json.dumps(x)


def hypergrid(m, d):
    return json.loads(_core.hypergrid(m, d))


def canonicalize(poset):
    return json.loads(_core.canonicalize(_j(poset)))


def sample_poset(n, d, seed=0, trial=0):
    return json.loads(_core.sample_poset(n, d, seed, trial))


def build(poset):
    """Prefix construction; the poset must already be canonical."""
    return json.loads(_core.build(_j(poset)))


def verify(spanner, poset, k=2, threads=1):
    return json.loads(_core.verify(_j(spanner), _j(poset), k, threads))


def oracle(poset, k=2):
    return json.loads(_core.oracle(_j(poset), k))


def certify(m, d):
    return json.loads(_core.certify(m, d))


def jump_count(poset):
    return _core.jump_count(_j(poset))


def jump_stats(n, d, trials, seed=0, threads=1):
    return json.loads(_core.jump_stats(n, d, trials, seed, threads))


__all__ = [
    "GuardError", "InputError", "build", "canonicalize", "certify", "hypergrid",
    "jump_count", "jump_stats", "oracle", "sample_poset", "verify",
]
