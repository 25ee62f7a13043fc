"""Virtual knot diagrams: Gauss codes, planar diagrams, arc numbers and
semimeander / meander forms."""

import json

from . import _core
from ._core import (
    AlgorithmError,
    CapExceeded,
    Diagram,
    DiagramError,
    GaussCode,
    GaussError,
    MoveError,
    affine_index_polynomial,
    brute_min_arc_number,
    carter_genus,
    chord_parity,
    delete_chord,
    f_polynomial,
    f_polynomial_frontier,
    is_k_arc_split,
    is_meander,
    is_reduced,
    is_semimeander,
    is_strong_meander,
    is_strong_semimeander,
    karc_upper_bounds,
    kauffman_bracket,
    meanderize,
    min_arc_number,
    odd_writhe,
    parity_projection,
    reduce,
    replay_trace,
    semimeanderize,
    within_sqrt3_power,
    writhe,
)


def _records(text):
    return [json.loads(line) for line in text.splitlines() if line]


def run(command, *args, **kwargs):
    """Runs a CLI command and returns its report as a list of dicts."""
    return _records(getattr(_core.cmd, command)(*args, **kwargs))


def report_ok(records):
    return all(r.get("verdict", "PASS") == "PASS" for r in records)
