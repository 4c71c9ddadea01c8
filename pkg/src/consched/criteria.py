"""Dissatisfaction measures between a schedule and voter preferences.

Two per-(voter, task) criteria, both driven by the voter's window (r, d):

* binary   — 1 when the task completes outside the window (C > d or C <= r);
* distance — how far outside: C - d past the due date, r - (C - 1) before the
  release date, 0 inside.

Profile-level costs weight each distinct preference by its multiplicity and
sum over tasks; all arithmetic is exact integer arithmetic. Order-mode
profiles are measured through an encoding (see
:class:`consched.model.EncodingKind`), which turns each preferred schedule
into windows first. The classical objectives arise as pairings:
distance+deviation, distance+tardiness, distance+earliness, binary+late_tasks,
binary+exact_position.

The choice decomposition re-reads an order profile as one (voter, task, slot)
triplet per voter per slot; ``late_at_slot`` counts, at slot y, the choices
with slot <= y whose task is still unfinished — the building block of the
median-rule approximation analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from .model import (
    EncodingKind,
    IntervalPreference,
    OrderPreference,
    PreferenceProfile,
    Schedule,
    order_to_interval,
)

__all__ = [
    "CriterionKind",
    "Choice",
    "binary_task_cost",
    "distance_task_cost",
    "profile_cost",
    "choice_decomposition",
    "late_at_slot",
    "spearman_distance",
    "kendall_tau_distance",
    "interval_arrays",
]


class CriterionKind(str, Enum):
    """How a (voter, task) miss is priced: all-or-nothing or by distance."""

    BINARY = "binary"
    DISTANCE = "distance"


def _as_criterion(criterion: Union[CriterionKind, str]) -> CriterionKind:
    if isinstance(criterion, CriterionKind):
        return criterion
    try:
        return CriterionKind(criterion)
    except ValueError:
        raise ValueError(f"unknown criterion {criterion!r} (expected 'binary' or 'distance')") from None


@dataclass(frozen=True, slots=True)
class Choice:
    """Voter ``voter`` (1-based) schedules ``task`` in slot ``slot``."""

    voter: int
    task: int
    slot: int


def binary_task_cost(schedule: Schedule, pref: IntervalPreference, task: int) -> int:
    """1 iff the task completes outside the voter's window, else 0."""
    c = schedule.completion(task)
    r, d = pref.windows[task - 1]
    return 1 if (c > d or c <= r) else 0


def distance_task_cost(schedule: Schedule, pref: IntervalPreference, task: int) -> int:
    """Integer gap between the task's slot and the voter's window (0 inside)."""
    c = schedule.completion(task)
    r, d = pref.windows[task - 1]
    if c > d:
        return c - d
    if c <= r:
        return r - (c - 1)
    return 0


def _entry_windows(
    profile: PreferenceProfile, encoding: Optional[Union[EncodingKind, str]]
) -> list[tuple[IntervalPreference, int]]:
    """Per-entry windows, applying the encoding for order-mode profiles."""
    if profile.mode == "order":
        if encoding is None:
            raise ValueError("order-mode profiles require an encoding")
        return [(order_to_interval(p, encoding), m) for p, m in profile.entries]
    if encoding is not None:
        raise ValueError("interval-mode profiles take no encoding")
    return [(p, m) for p, m in profile.entries]


def profile_cost(
    schedule: Schedule,
    profile: PreferenceProfile,
    criterion: Union[CriterionKind, str],
    encoding: Optional[Union[EncodingKind, str]] = None,
) -> int:
    """Multiplicity-weighted sum over voters and tasks of the per-task cost."""
    if schedule.n != profile.n:
        raise ValueError(f"schedule has {schedule.n} tasks, profile {profile.n}")
    per_task = binary_task_cost if _as_criterion(criterion) is CriterionKind.BINARY else distance_task_cost
    total = 0
    for windows, mult in _entry_windows(profile, encoding):
        total += mult * sum(per_task(schedule, windows, j) for j in range(1, profile.n + 1))
    return total


def choice_decomposition(profile: PreferenceProfile) -> tuple[Choice, ...]:
    """All n*v (voter, task, slot) triplets of an order profile.

    Voters are numbered 1..v in entry order, repeating each entry per its
    multiplicity, so every (voter, slot) and (voter, task) pair appears once.
    """
    if profile.mode != "order":
        raise ValueError("choice decomposition requires an order-mode profile")
    choices = []
    voter = 0
    for pref in profile.iter_voters():
        voter += 1
        for slot, task in enumerate(pref.schedule.order, start=1):
            choices.append(Choice(voter=voter, task=task, slot=slot))
    return tuple(choices)


def late_at_slot(schedule: Schedule, profile: PreferenceProfile, y: int) -> int:
    """Count choices (voter, task, slot <= y) whose task completes after y in S."""
    if profile.mode != "order":
        raise ValueError("late_at_slot requires an order-mode profile")
    if not 1 <= y <= profile.n:
        raise ValueError(f"slot {y} outside 1..{profile.n}")
    comp = schedule.completions()
    total = 0
    for pref, mult in profile.entries:
        count = sum(
            1
            for slot, task in enumerate(pref.schedule.order, start=1)
            if slot <= y and comp[task - 1] > y
        )
        total += mult * count
    return total


def spearman_distance(schedule: Schedule, profile: PreferenceProfile) -> int:
    """Sum over voters and tasks of |C_j(S) - C_j(voter)| (footrule distance)."""
    if profile.mode != "order":
        raise ValueError("spearman_distance requires an order-mode profile")
    comp = schedule.completions()
    total = 0
    for pref, mult in profile.entries:
        pc = pref.schedule.completions()
        total += mult * sum(abs(a - b) for a, b in zip(comp, pc))
    return total


def kendall_tau_distance(schedule: Schedule, profile: PreferenceProfile) -> int:
    """Sum over voters of the number of task pairs ordered oppositely."""
    if profile.mode != "order":
        raise ValueError("kendall_tau_distance requires an order-mode profile")
    comp = schedule.completions()
    n = profile.n
    total = 0
    for pref, mult in profile.entries:
        pc = pref.schedule.completions()
        disagreements = sum(
            1
            for a in range(n)
            for b in range(a + 1, n)
            if (comp[a] < comp[b]) != (pc[a] < pc[b])
        )
        total += mult * disagreements
    return total


def interval_arrays(
    profile: PreferenceProfile, encoding: Optional[Union[EncodingKind, str]] = None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Windows of all distinct voters as arrays: (release, due, multiplicity).

    ``release``/``due`` have shape (distinct voters, n); entries follow the
    profile's entry order. Shared by the brute-force oracle and the batched
    kernels so both evaluate the same per-voter formulas as the scalar
    functions above.
    """
    rows = _entry_windows(profile, encoding)
    rel = np.array([[r for r, _ in w.windows] for w, _ in rows], dtype=np.int64)
    due = np.array([[d for _, d in w.windows] for w, _ in rows], dtype=np.int64)
    mult = np.array([m for _, m in rows], dtype=np.int64)
    return rel, due, mult
