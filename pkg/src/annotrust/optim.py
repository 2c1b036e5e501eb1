"""Derivative-free simplex minimizer used for part-worth estimation.

Plain Nelder-Mead iteration with configurable reflection, expansion,
contraction and shrink coefficients. The objective must be a deterministic
function of its vector argument and safe to call from multiple threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np


@dataclass(frozen=True)
class NelderMeadConfig:
    reflect: float = 1.0
    expand: float = 2.0
    contract: float = 0.5
    shrink: float = 0.5
    tolerance: float = 1e-8
    max_iterations: int = 10_000
    initial_step: float = 0.1


@dataclass(frozen=True)
class NelderMeadResult:
    x: tuple[float, ...]
    value: float
    iterations: int
    converged: bool


class ConvergenceError(RuntimeError):
    """Iteration budget exhausted; ``best`` holds the best vertex found."""

    def __init__(self, best: NelderMeadResult):
        super().__init__(
            f"no convergence within {best.iterations} iterations (best value {best.value})"
        )
        self.best = best


def nelder_mead(
    objective: Callable[[np.ndarray], float],
    x0: Sequence[float],
    config: NelderMeadConfig = NelderMeadConfig(),
) -> NelderMeadResult:
    """Minimize ``objective`` starting from ``x0``.

    Converges when the spread of vertex values and the spread of vertex
    coordinates both drop below ``config.tolerance`` (value spread alone is
    not enough: vertices symmetric about a minimum tie on value); raises
    ConvergenceError (carrying the best vertex) when the iteration budget
    runs out first.
    """
    start = np.asarray(x0, dtype=float)
    if start.ndim != 1 or start.size == 0:
        raise ValueError("x0 must be a nonempty 1-d vector")
    f0 = float(objective(start))
    if not math.isfinite(f0):
        raise ValueError(f"objective is not finite at x0 (got {f0})")

    dim = start.size
    vertices = [start]
    for i in range(dim):
        v = start.copy()
        v[i] += config.initial_step * max(1.0, abs(v[i]))
        vertices.append(v)
    simplex = np.stack(vertices)
    values = np.array([f0] + [float(objective(v)) for v in simplex[1:]])

    iterations = 0
    while iterations < config.max_iterations:
        order = np.argsort(values, kind="stable")
        simplex = simplex[order]
        values = values[order]

        value_spread = values[-1] - values[0]
        vertex_spread = np.max(np.abs(simplex[1:] - simplex[0]))
        if value_spread < config.tolerance and vertex_spread < config.tolerance:
            return NelderMeadResult(
                x=tuple(simplex[0]), value=float(values[0]),
                iterations=iterations, converged=True,
            )
        iterations += 1

        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        reflected = centroid + config.reflect * (centroid - worst)
        f_reflected = float(objective(reflected))

        if values[0] <= f_reflected < values[-2]:
            simplex[-1], values[-1] = reflected, f_reflected
            continue

        if f_reflected < values[0]:
            expanded = centroid + config.expand * (reflected - centroid)
            f_expanded = float(objective(expanded))
            if f_expanded < f_reflected:
                simplex[-1], values[-1] = expanded, f_expanded
            else:
                simplex[-1], values[-1] = reflected, f_reflected
            continue

        if f_reflected < values[-1]:
            contracted = centroid + config.contract * (reflected - centroid)
            f_contracted = float(objective(contracted))
            if f_contracted <= f_reflected:
                simplex[-1], values[-1] = contracted, f_contracted
                continue
        else:
            contracted = centroid + config.contract * (worst - centroid)
            f_contracted = float(objective(contracted))
            if f_contracted < values[-1]:
                simplex[-1], values[-1] = contracted, f_contracted
                continue

        # Shrink all vertices toward the current best.
        for i in range(1, dim + 1):
            simplex[i] = simplex[0] + config.shrink * (simplex[i] - simplex[0])
            values[i] = float(objective(simplex[i]))

    order = np.argsort(values, kind="stable")
    best = NelderMeadResult(
        x=tuple(simplex[order[0]]), value=float(values[order[0]]),
        iterations=iterations, converged=False,
    )
    raise ConvergenceError(best)
