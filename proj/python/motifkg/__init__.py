"""Python bindings for the motif library."""

import json

from ._core import (
    KnowledgeGraph,
    MotifError,
    catalog_names,
    lift,
    motif_names,
    rp_core,
    score_link,
    separate,
)
from . import _core

__all__ = [
    "KnowledgeGraph",
    "MotifError",
    "catalog_names",
    "connecthub",
    "lift",
    "motif_names",
    "refinement_report",
    "rp_core",
    "score_link",
    "separate",
    "ultra_equiv",
]


def refinement_report(from_spec, to_spec):
    return json.loads(_core._refinement_report(from_spec, to_spec))


def connecthub(k, l=0, graphs=1, seed=0, eval=(), t=2, layers=2, augment=True):
    return json.loads(_core._connecthub(k, l, graphs, seed, list(eval), t, layers, augment))


def ultra_equiv(trials=20, seed=0, t=4, l=4, augment=True):
    return json.loads(_core._ultra_equiv(trials, seed, t, l, augment))
