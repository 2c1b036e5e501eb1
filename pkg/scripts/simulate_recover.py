#!/usr/bin/env python3
"""Simulate survey respondents from the calibrated utilities, refit, compare.

Shows how well the logit fit recovers known part-worths at several sample
sizes. Run: python scripts/simulate_recover.py [--respondents 350] [--seed 7]
"""

import argparse

from annotrust.conjoint import (
    Attribute,
    DesignKind,
    PartWorths,
    importance_partworths,
    make_design,
    recenter,
)
from annotrust.estimation import fit_logit, simulate_respondents

ATTRIBUTES = (
    Attribute("Author Rating", (-100, 0, 1000, 2000), dimension="quality"),
    Attribute("Reader Rating", (0, 5, 30, 70), dimension="credibility"),
    Attribute("Comments", (0, 2, 5, 10), dimension="stability"),
)
TRUE_UTILITIES = {
    "Author Rating": (-0.90, -0.39, 0.44, 0.86),
    "Reader Rating": (-0.82, -0.18, 0.29, 0.71),
    "Comments": (-0.67, -0.04, 0.24, 0.47),
}


def run(respondents: int, seed: int) -> None:
    true_pw = PartWorths(
        ATTRIBUTES, tuple(recenter(TRUE_UTILITIES[a.name]) for a in ATTRIBUTES)
    )
    design = make_design(ATTRIBUTES, DesignKind.HALF_FRACTION, 4, seed=20260809)
    choices = simulate_respondents(true_pw, design, respondents, seed=seed)
    fitted = fit_logit(design, choices)

    print(f"{respondents} respondents x {len(design.tasks)} tasks = {len(choices)} choices\n")
    print(f"{'attribute':<15} {'level':>7} {'true':>8} {'fitted':>8} {'error':>8}")
    for attr, true_row, fitted_row in zip(ATTRIBUTES, true_pw.utilities, fitted.utilities):
        for level, a, b in zip(attr.levels, true_row, fitted_row):
            print(f"{attr.name:<15} {level:>7g} {a:>8.3f} {b:>8.3f} {abs(a - b):>8.3f}")
    print()
    true_imp = importance_partworths(true_pw).as_dict()
    fit_imp = importance_partworths(fitted).as_dict()
    print(f"{'attribute':<15} {'true imp':>9} {'fitted imp':>11}")
    for attr in ATTRIBUTES:
        print(
            f"{attr.name:<15} {true_imp[attr.name] * 100:>8.2f}% "
            f"{fit_imp[attr.name] * 100:>10.2f}%"
        )


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--respondents", type=int, default=350)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    run(args.respondents, args.seed)
