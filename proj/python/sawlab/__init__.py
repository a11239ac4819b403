"""Self-avoiding walk counts, growth estimates and proof checks on regular graphs.

Families are named as on the command line: ``ladder``, ``hex``, ``loop:D``,
``tree:D``, ``decor3``, ``decor4``, ``interp:D:L``.  Vertices and edges use
the same text forms as the ``sawlab`` tool, e.g. ``"0,1"`` and ``"0,0/1,0"``.
Every function returning a report gives a plain ``dict`` with the same keys as
the tool's JSON output; exact counts are Python ``int``.
"""

from __future__ import annotations

import json
from typing import Optional, Union

from . import _sawlab
from ._sawlab import (
    Family,
    InvalidVertex,
    PreconditionError,
    SawError,
    SpecError,
    __version__,
    parse_family,
    run_cli,
)

__all__ = [
    "Family",
    "InvalidVertex",
    "PreconditionError",
    "SawError",
    "SpecError",
    "__version__",
    "parse_family",
    "run_cli",
    "count_saws",
    "estimate",
    "check_bounds",
    "check_pi",
    "blue_count_audit",
    "strictness",
    "menger",
    "inequalities",
    "g_function",
    "g_induction",
]

FamilyLike = Union[str, Family]


def _family(f: FamilyLike) -> Family:
    return parse_family(f) if isinstance(f, str) else f


def _ints(values):
    return [int(v) for v in values]


def count_saws(
    family: FamilyLike,
    n: int,
    *,
    root: Optional[str] = None,
    avoid_edge: Optional[str] = None,
    midedge: Optional[str] = None,
    extendable: Optional[int] = None,
    threads: int = 1,
    budget: Optional[int] = None,
) -> dict:
    """Exact counts σ_0..σ_n from ``root`` (default: first orbit representative)."""
    out = json.loads(
        _sawlab._count_saws(_family(family), n, root, avoid_edge, midedge, extendable, threads, budget)
    )
    out["counts"] = _ints(out["counts"])
    return out


def estimate(
    family: FamilyLike, n: int, *, method: str = "ratio_extrapolation", threads: int = 1, budget: Optional[int] = None
) -> dict:
    out = json.loads(_sawlab._estimate(_family(family), n, method, threads, budget))
    out["sup_counts"] = _ints(out["sup_counts"])
    return out


def check_bounds(family: FamilyLike, n: int, *, threads: int = 1) -> dict:
    return json.loads(_sawlab._check_bounds(_family(family), n, threads))


def check_pi(
    family: FamilyLike, *, root: Optional[str] = None, L: int = 8, D: int = 12, P: int = 12, threads: int = 1
) -> dict:
    return json.loads(_sawlab._check_pi(_family(family), root, L, D, P, threads))


def blue_count_audit(family: FamilyLike, n: int, *, D: int = 12, root: Optional[str] = None, threads: int = 1) -> dict:
    return json.loads(_sawlab._blue_count_audit(_family(family), n, D, root, threads))


def strictness(
    family: FamilyLike, *, search_bound: int = 12, estimate_n: Optional[int] = None, threads: int = 1
) -> dict:
    return json.loads(_sawlab._strictness(_family(family), search_bound, estimate_n, threads))


def menger(family: FamilyLike, n: int, *, root: Optional[str] = None) -> dict:
    return json.loads(_sawlab._menger(_family(family), n, root))


def inequalities(family: FamilyLike, suite: str, n: int, *, threads: int = 1) -> dict:
    """``suite`` is one of ``hammersley``, ``submultiplicativity``, ``trivial_bound``."""
    return json.loads(_sawlab._inequalities(_family(family), suite, n, threads))


def g_function(delta: int, branches: int) -> int:
    return int(_sawlab._g_function(delta, branches))


def g_induction(delta_max: int = 8, branches_max: int = 50) -> dict:
    return json.loads(_sawlab._g_induction(delta_max, branches_max))
