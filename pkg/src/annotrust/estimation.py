"""Multinomial-logit part-worth estimation and respondent simulation.

Choice probabilities follow the logit model: a concept's systematic value
is the sum of its levels' part-worths, and the probability of picking it
within a task is the softmax over the task's alternatives. Estimation
maximizes the choice log-likelihood with the simplex minimizer, using an
effects-coded parameterization (one free parameter fewer per attribute;
the last level is the negated sum, so zero-sum holds exactly).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .conjoint import (
    ChoiceRecord,
    Design,
    PartWorths,
    UnknownTaskError,
    tally_choices,
)
from .optim import ConvergenceError, NelderMeadConfig, nelder_mead


class EmptyChoicesError(ValueError):
    """Estimation requested with no choice records."""


class UnidentifiableLevelError(ValueError):
    """Some attribute level was never offered in the choice data."""


class FitConvergenceError(RuntimeError):
    """Optimizer ran out of iterations; carries the best-so-far fit."""

    def __init__(self, part_worths: PartWorths, value: float, iterations: int):
        super().__init__(f"fit did not converge within {iterations} iterations")
        self.part_worths = part_worths
        self.value = value
        self.iterations = iterations


def softmax(values: Sequence[float] | np.ndarray) -> np.ndarray:
    """Numerically stable softmax (max-subtracted)."""
    v = np.asarray(values, dtype=float)
    shifted = v - v.max()
    ex = np.exp(shifted)
    return ex / ex.sum()


def _task_index_cube(design: Design) -> list[np.ndarray]:
    # Per task: (alternatives, attributes) matrix of level indexes.
    return [
        np.array([c.level_indexes for c in task.concepts], dtype=int)
        for task in design.tasks
    ]


def _task_values(cube: np.ndarray, utilities: list[np.ndarray]) -> np.ndarray:
    return sum(u[cube[:, k]] for k, u in enumerate(utilities))


def _utility_arrays(design: Design, pw: PartWorths) -> list[np.ndarray]:
    return [np.asarray(pw.for_attribute(a.name), dtype=float) for a in design.attributes]


def _choice_counts(design: Design, choices: Sequence[ChoiceRecord]) -> np.ndarray:
    task_row = {task.id: i for i, task in enumerate(design.tasks)}
    counts = np.zeros((len(design.tasks), design.alternatives_per_task), dtype=float)
    for choice in choices:
        row = task_row.get(choice.task_id)
        if row is None:
            raise UnknownTaskError(f"no task with id {choice.task_id}")
        counts[row, choice.chosen_index] += 1
    return counts


def _loglik(counts: np.ndarray, cubes: list[np.ndarray], utilities: list[np.ndarray]) -> float:
    total = 0.0
    for row, cube in enumerate(cubes):
        weights = counts[row]
        if not weights.any():
            continue
        values = _task_values(cube, utilities)
        peak = values.max()
        lse = peak + np.log(np.exp(values - peak).sum())
        total += float(weights @ (values - lse))
    return total


def logit_loglikelihood(
    design: Design, choices: Sequence[ChoiceRecord], pw: PartWorths
) -> float:
    """Log-likelihood of the observed choices under the given part-worths."""
    counts = _choice_counts(design, choices)
    return _loglik(counts, _task_index_cube(design), _utility_arrays(design, pw))


def task_probabilities(design: Design, pw: PartWorths) -> dict[int, tuple[float, ...]]:
    """Choice probabilities per task implied by the part-worths."""
    utilities = _utility_arrays(design, pw)
    return {
        task.id: tuple(softmax(_task_values(cube, utilities)))
        for task, cube in zip(design.tasks, _task_index_cube(design))
    }


def _expand_params(design: Design, x: np.ndarray) -> PartWorths:
    utilities: list[tuple[float, ...]] = []
    pos = 0
    for attr in design.attributes:
        free = [float(v) for v in x[pos : pos + len(attr.levels) - 1]]
        pos += len(attr.levels) - 1
        utilities.append(tuple(free) + (-sum(free),))
    return PartWorths(attributes=design.attributes, utilities=tuple(utilities))


def fit_logit(
    design: Design,
    choices: Sequence[ChoiceRecord],
    config: NelderMeadConfig | None = None,
) -> PartWorths:
    """Maximum-likelihood part-worths for the observed choices.

    Raises UnidentifiableLevelError when a level never appears in the
    offered concepts of the choice stream, and FitConvergenceError (with
    the best-so-far part-worths) when the optimizer hits its budget.
    """
    choices = list(choices)
    if not choices:
        raise EmptyChoicesError("no choices to fit")
    tally = tally_choices(design, choices)
    for attr, offered in zip(tally.attributes, tally.offered):
        for ix, count in enumerate(offered):
            if count == 0:
                raise UnidentifiableLevelError(
                    f"level {attr.levels[ix]} of {attr.name} was never offered"
                )

    counts = _choice_counts(design, choices)
    cubes = _task_index_cube(design)

    def objective(x: np.ndarray) -> float:
        utilities = []
        pos = 0
        for attr in design.attributes:
            free = x[pos : pos + len(attr.levels) - 1]
            pos += len(attr.levels) - 1
            utilities.append(np.append(free, -free.sum()))
        return -_loglik(counts, cubes, utilities)

    n_params = sum(len(a.levels) - 1 for a in design.attributes)
    try:
        result = nelder_mead(objective, np.zeros(n_params), config or NelderMeadConfig())
    except ConvergenceError as err:
        best = _expand_params(design, np.asarray(err.best.x))
        raise FitConvergenceError(best, err.best.value, err.best.iterations) from err
    return _expand_params(design, np.asarray(result.x))


def simulate_respondents(
    true_pw: PartWorths,
    design: Design,
    n_respondents: int,
    seed: int,
) -> list[ChoiceRecord]:
    """Sample logit-consistent choices for every respondent and task.

    Inverse-CDF sampling over the softmax probabilities with a PCG64
    generator; the same seed reproduces the identical choice list.
    """
    if n_respondents < 1:
        raise ValueError(f"need at least one respondent, got {n_respondents}")
    utilities = _utility_arrays(design, true_pw)
    cumulative = [
        np.cumsum(softmax(_task_values(cube, utilities)))
        for cube in _task_index_cube(design)
    ]
    rng = np.random.default_rng(seed)
    records: list[ChoiceRecord] = []
    clock = 0
    for r in range(n_respondents):
        rid = f"r{r + 1:04d}"
        for task, cdf in zip(design.tasks, cumulative):
            draw = rng.random()
            chosen = int(np.searchsorted(cdf, draw, side="right"))
            chosen = min(chosen, len(cdf) - 1)
            records.append(
                ChoiceRecord(
                    respondent_id=rid, task_id=task.id,
                    chosen_index=chosen, timestamp=clock,
                )
            )
            clock += 1
    return records
