"""Brute-force reference solver: the ground truth everything else is tested against.

Enumerates every permutation of 1..n (lexicographically, hard guard n <= 10),
filters by window/precedence feasibility or by an axiom's conclusion, and
evaluates the per-voter criterion formulas directly on (release, due) arrays.
This evaluation route is deliberately independent of the assignment
reduction — it never touches a (task, slot) cost matrix or the matching — so
agreement between the oracle and the polynomial solvers is a genuine
cross-check. The batched formula evaluation lives in ``_kernels`` and is
itself verified against the scalar functions in ``criteria``.

Results carry the exact minimum, *all* minimizers in lexicographic order, and
the number of feasible permutations examined.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import _kernels
from .criteria import CriterionKind, _as_criterion, interval_arrays
from .errors import InfeasibleError, SizeLimitError
from .model import (
    EncodingKind,
    PrecedenceGraph,
    PreferenceProfile,
    Schedule,
    TimeWindows,
)

__all__ = [
    "ORACLE_MAX_N",
    "OracleResult",
    "exhaustive_optimum",
    "constrained_best",
    "kendall_optimum",
    "pair_weight_matrix",
]

ORACLE_MAX_N = 10

_AXIOM_FILTERS = ("release", "deadline", "unanimity")


@dataclass(frozen=True, slots=True)
class OracleResult:
    """Exact minimum, every minimizer (lexicographic), and the search size."""

    best_cost: int
    optima: tuple[Schedule, ...]
    searched: int


def _guard(n: int) -> None:
    if n > ORACLE_MAX_N:
        raise SizeLimitError(f"oracle enumerates at most {ORACLE_MAX_N}! schedules, got n={n}")


def _result(perms: np.ndarray, costs: np.ndarray, feasible: np.ndarray) -> OracleResult:
    searched = int(feasible.sum())
    if searched == 0:
        raise InfeasibleError("no permutation satisfies the constraints")
    masked = np.where(feasible, costs, np.iinfo(np.int64).max)
    best = int(masked.min())
    optima = tuple(
        Schedule(tuple(int(t) for t in row)) for row in perms[masked == best]
    )
    return OracleResult(best_cost=best, optima=optima, searched=searched)


def _costs(
    profile: PreferenceProfile,
    criterion: CriterionKind,
    encoding: Optional[Union[EncodingKind, str]],
    perms: np.ndarray,
    backend: Optional[str],
) -> np.ndarray:
    rel, due, mult = interval_arrays(profile, encoding)
    if criterion is CriterionKind.BINARY:
        return _kernels.perm_costs_binary(perms, rel, due, mult, backend=backend)
    return _kernels.perm_costs_distance(perms, rel, due, mult, backend=backend)


def exhaustive_optimum(
    profile: PreferenceProfile,
    criterion: Union[CriterionKind, str],
    encoding: Optional[Union[EncodingKind, str]] = None,
    windows: Optional[TimeWindows] = None,
    graph: Optional[PrecedenceGraph] = None,
    backend: Optional[str] = None,
) -> OracleResult:
    """Exact minimum over all window/precedence-feasible permutations."""
    _guard(profile.n)
    criterion = _as_criterion(criterion)
    perms = _kernels.perm_table(profile.n)
    comp = _kernels.completions_table(perms)
    feasible = np.ones(len(perms), dtype=bool)
    if windows is not None:
        if windows.n != profile.n:
            raise ValueError(f"windows cover {windows.n} tasks, profile has {profile.n}")
        wr = np.array([r for r, _ in windows.windows], dtype=np.int64)
        wd = np.array([d for _, d in windows.windows], dtype=np.int64)
        feasible &= ((comp > wr) & (comp <= wd)).all(axis=1)
    if graph is not None:
        if graph.n != profile.n:
            raise ValueError(f"graph covers {graph.n} tasks, profile has {profile.n}")
        for a, b in graph.edges:
            feasible &= comp[:, a - 1] < comp[:, b - 1]
    costs = _costs(profile, criterion, encoding, perms, backend)
    return _result(perms, costs, feasible)


def constrained_best(
    profile: PreferenceProfile,
    criterion: Union[CriterionKind, str],
    encoding: Optional[Union[EncodingKind, str]] = None,
    axiom: str = "release",
    backend: Optional[str] = None,
) -> OracleResult:
    """Exact minimum among permutations satisfying an axiom's conclusion.

    ``axiom`` is one of ``release``/``deadline`` (order-mode profiles: the
    output may not complete a task before the earliest / after the latest
    voter does) or ``unanimity`` (either mode: tasks with one unanimous
    window must land inside it).
    """
    _guard(profile.n)
    if axiom not in _AXIOM_FILTERS:
        raise ValueError(f"axiom must be one of {_AXIOM_FILTERS}, got {axiom!r}")
    criterion = _as_criterion(criterion)
    n = profile.n
    perms = _kernels.perm_table(n)
    comp = _kernels.completions_table(perms)

    if axiom in ("release", "deadline"):
        if profile.mode != "order":
            raise ValueError(f"the {axiom} filter needs an order-mode profile")
        voter_comps = np.array(
            [p.schedule.completions() for p, _ in profile.entries], dtype=np.int64
        )
        if axiom == "release":
            feasible = (comp >= voter_comps.min(axis=0)).all(axis=1)
        else:
            feasible = (comp <= voter_comps.max(axis=0)).all(axis=1)
    else:
        feasible = np.ones(len(perms), dtype=bool)
        if profile.mode == "order":
            voter_comps = np.array(
                [p.schedule.completions() for p, _ in profile.entries], dtype=np.int64
            )
            unanimous = (voter_comps == voter_comps[0]).all(axis=0)
            lo = voter_comps[0] - 1
            hi = voter_comps[0]
        else:
            rel = np.array([[r for r, _ in p.windows] for p, _ in profile.entries], dtype=np.int64)
            due = np.array([[d for _, d in p.windows] for p, _ in profile.entries], dtype=np.int64)
            unanimous = (rel == rel[0]).all(axis=0) & (due == due[0]).all(axis=0)
            lo = rel[0]
            hi = due[0]
        for j in np.flatnonzero(unanimous):
            feasible &= (comp[:, j] > lo[j]) & (comp[:, j] <= hi[j])

    costs = _costs(profile, criterion, encoding, perms, backend)
    return _result(perms, costs, feasible)


def pair_weight_matrix(profile: PreferenceProfile) -> np.ndarray:
    """w[a-1, b-1] = total multiplicity of voters completing a before b."""
    if profile.mode != "order":
        raise ValueError("pairwise weights require an order-mode profile")
    comps = np.array([p.schedule.completions() for p, _ in profile.entries], dtype=np.int64)
    mult = np.array([m for _, m in profile.entries], dtype=np.int64)
    before = comps[:, :, None] < comps[:, None, :]
    return (mult[:, None, None] * before).sum(axis=0)


def kendall_optimum(
    profile: PreferenceProfile, backend: Optional[str] = None
) -> OracleResult:
    """Exact minimizers of the summed pairwise-disagreement distance."""
    _guard(profile.n)
    perms = _kernels.perm_table(profile.n)
    w = pair_weight_matrix(profile)
    costs = _kernels.perm_costs_kendall(perms, w, backend=backend)
    feasible = np.ones(len(perms), dtype=bool)
    return _result(perms, costs, feasible)
