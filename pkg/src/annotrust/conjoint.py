"""Choice-based conjoint machinery: designs, tallies, utilities, importances.

A design is a set of choice tasks over a factorial lattice of attribute
levels. Respondent choices are tallied per (attribute, level) cell; two
counting-based utility readings and a range-ratio importance are computed
directly from the tally. Model-based part-worths live in ``estimation``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .scoring import InvariantViolation

IMPORTANCE_SUM_TOL = 1e-9
EFFECTS_CODING_TOL = 1e-6

#: Minimum choices-per-level ratio required by the sample-size rule of thumb.
SAMPLE_SIZE_RULE_MIN = 500.0


class InvalidDesignError(ValueError):
    """Concepts do not form the expected factorial lattice."""


class PartitionError(ValueError):
    """Concepts cannot be split evenly into tasks."""


class UnknownTaskError(ValueError):
    """A choice record references a task missing from the design."""


class DegenerateTallyError(ValueError):
    """All attributes have zero selected-count range."""


@dataclass(frozen=True)
class Attribute:
    """A named attribute with strictly increasing numeric levels.

    ``dimension`` optionally links the attribute to the trust dimension it
    stands in for (stability, credibility or quality).
    """

    name: str
    levels: tuple[float, ...]
    dimension: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(float(v) for v in self.levels))
        if len(self.levels) < 2:
            raise InvariantViolation("levels", "need at least two levels")
        if any(b <= a for a, b in zip(self.levels, self.levels[1:])):
            raise InvariantViolation("levels", "levels must strictly increase")


@dataclass(frozen=True)
class Concept:
    """One alternative: a level index per attribute, in attribute order."""

    level_indexes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "level_indexes", tuple(int(i) for i in self.level_indexes))


@dataclass(frozen=True)
class Task:
    id: int
    concepts: tuple[Concept, ...]

    def __post_init__(self):
        object.__setattr__(self, "concepts", tuple(self.concepts))
        if len(set(self.concepts)) != len(self.concepts):
            raise InvariantViolation("concepts", "task alternatives must be distinct")


class DesignKind(enum.Enum):
    FULL_FACTORIAL = "full-factorial"
    HALF_FRACTION = "half-fraction"


@dataclass(frozen=True)
class Design:
    attributes: tuple[Attribute, ...]
    tasks: tuple[Task, ...]
    kind: DesignKind
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "tasks", tuple(self.tasks))
        sizes = tuple(len(a.levels) for a in self.attributes)
        seen: list[Concept] = []
        for task in self.tasks:
            for concept in task.concepts:
                if len(concept.level_indexes) != len(sizes) or any(
                    not 0 <= ix < sz for ix, sz in zip(concept.level_indexes, sizes)
                ):
                    raise InvariantViolation(
                        "tasks", f"concept {concept.level_indexes} outside the lattice"
                    )
                seen.append(concept)
        if self.kind is DesignKind.HALF_FRACTION:
            expected = math.prod(sizes) // 2
            if len(seen) != expected or len(set(seen)) != expected:
                raise InvariantViolation(
                    "tasks",
                    f"half fraction must place each of {expected} concepts exactly once",
                )

    @property
    def alternatives_per_task(self) -> int:
        return len(self.tasks[0].concepts) if self.tasks else 0

    def task_by_id(self, task_id: int) -> Task:
        for task in self.tasks:
            if task.id == task_id:
                return task
        raise UnknownTaskError(f"no task with id {task_id}")

    def concept_levels(self, concept: Concept) -> dict[str, float]:
        """Resolve a concept's level indexes to concrete level values."""
        return {
            a.name: a.levels[ix] for a, ix in zip(self.attributes, concept.level_indexes)
        }


@dataclass(frozen=True)
class ChoiceRecord:
    respondent_id: str
    task_id: int
    chosen_index: int
    timestamp: int = 0

    def __post_init__(self):
        if self.chosen_index < 0:
            raise InvariantViolation("chosenIndex", "must be >= 0")


def full_factorial(attributes: Sequence[Attribute]) -> list[Concept]:
    """All level-index combinations, lexicographic in attribute order."""
    if not attributes:
        raise InvalidDesignError("need at least one attribute")
    ranges = [range(len(a.levels)) for a in attributes]
    return [Concept(combo) for combo in itertools.product(*ranges)]


def half_fraction(concepts: Sequence[Concept]) -> list[Concept]:
    """The even-parity half of a full factorial lattice.

    Keeps concepts whose level-index sum is even, which halves the lattice
    while keeping every level of every attribute equally represented.
    """
    if not concepts:
        raise InvalidDesignError("empty concept list")
    width = len(concepts[0].level_indexes)
    sizes = [max(c.level_indexes[k] for c in concepts) + 1 for k in range(width)]
    expected = {tuple(combo) for combo in itertools.product(*[range(s) for s in sizes])}
    got = {c.level_indexes for c in concepts}
    if len(concepts) != len(expected) or got != expected:
        raise InvalidDesignError("input is not a full factorial lattice")
    return [c for c in concepts if sum(c.level_indexes) % 2 == 0]


def build_tasks(concepts: Sequence[Concept], alternatives_per_task: int, seed: int) -> list[Task]:
    """Seeded shuffle of the concepts, partitioned into equal-size tasks."""
    if alternatives_per_task < 1 or len(concepts) % alternatives_per_task != 0:
        raise PartitionError(
            f"{len(concepts)} concepts do not split into tasks of {alternatives_per_task}"
        )
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(concepts))
    shuffled = [concepts[i] for i in order]
    return [
        Task(id=i // alternatives_per_task + 1, concepts=tuple(chunk))
        for i in range(0, len(shuffled), alternatives_per_task)
        for chunk in [shuffled[i : i + alternatives_per_task]]
    ]


def make_design(
    attributes: Sequence[Attribute],
    kind: DesignKind,
    alternatives_per_task: int,
    seed: int,
) -> Design:
    concepts = full_factorial(attributes)
    if kind is DesignKind.HALF_FRACTION:
        concepts = half_fraction(concepts)
    tasks = build_tasks(concepts, alternatives_per_task, seed)
    return Design(attributes=tuple(attributes), tasks=tuple(tasks), kind=kind, seed=seed)


@dataclass(frozen=True)
class Tally:
    """Per (attribute, level) selected/offered counts over a choice stream."""

    attributes: tuple[Attribute, ...]
    selected: tuple[tuple[int, ...], ...]
    offered: tuple[tuple[int, ...], ...]
    n_choices: int

    def __post_init__(self):
        for attr, sel, off in zip(self.attributes, self.selected, self.offered):
            if len(sel) != len(attr.levels) or len(off) != len(attr.levels):
                raise InvariantViolation("tally", f"cell count mismatch for {attr.name}")
            if any(s < 0 or s > o for s, o in zip(sel, off)):
                raise InvariantViolation(
                    "tally", f"selected exceeds offered for {attr.name}"
                )
            if sum(sel) != self.n_choices:
                raise InvariantViolation(
                    "tally", f"{attr.name} selections do not sum to the choice count"
                )


def tally_choices(design: Design, choices: Iterable[ChoiceRecord]) -> Tally:
    """Accumulate selected/offered counts for every displayed concept."""
    sel = [[0] * len(a.levels) for a in design.attributes]
    off = [[0] * len(a.levels) for a in design.attributes]
    n = 0
    for choice in choices:
        task = design.task_by_id(choice.task_id)
        if choice.chosen_index >= len(task.concepts):
            raise InvariantViolation(
                "chosenIndex",
                f"index {choice.chosen_index} outside task {task.id}",
            )
        for concept in task.concepts:
            for k, ix in enumerate(concept.level_indexes):
                off[k][ix] += 1
        for k, ix in enumerate(task.concepts[choice.chosen_index].level_indexes):
            sel[k][ix] += 1
        n += 1
    return Tally(
        attributes=design.attributes,
        selected=tuple(tuple(row) for row in sel),
        offered=tuple(tuple(row) for row in off),
        n_choices=n,
    )


def utility_counts(tally: Tally) -> dict[str, tuple[float, ...]]:
    """Count-based utilities: selected count minus the attribute's minimum."""
    if tally.n_choices == 0:
        raise DegenerateTallyError("empty tally")
    out: dict[str, tuple[float, ...]] = {}
    for attr, sel in zip(tally.attributes, tally.selected):
        low = min(sel)
        out[attr.name] = tuple(float(s - low) for s in sel)
    return out


def level_distances(levels: Sequence[float]) -> tuple[float, ...]:
    """Distance of each level value from the attribute's minimum level."""
    low = min(levels)
    return tuple(float(v - low) for v in levels)


def utility_levels(attribute: Attribute) -> tuple[float, ...]:
    """Value-based utility reading: level value minus the minimum level."""
    return level_distances(attribute.levels)


@dataclass(frozen=True)
class ImportanceVector:
    """Relative attribute importances; fractions summing to 1."""

    attributes: tuple[str, ...]
    shares: tuple[float, ...]

    def __post_init__(self):
        if len(self.attributes) != len(self.shares):
            raise InvariantViolation("importance", "attribute/share length mismatch")
        if any(not 0.0 <= s <= 1.0 for s in self.shares):
            raise InvariantViolation("importance", "shares must lie in [0, 1]")
        if self.shares and abs(sum(self.shares) - 1.0) > IMPORTANCE_SUM_TOL:
            raise InvariantViolation("importance", f"shares sum to {sum(self.shares)}")

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.attributes, self.shares))


def _range_shares(names: Sequence[str], ranges: Sequence[float]) -> ImportanceVector:
    total = sum(ranges)
    if total <= 0:
        raise DegenerateTallyError("all attributes have zero range")
    return ImportanceVector(
        attributes=tuple(names), shares=tuple(r / total for r in ranges)
    )


def importance_counts(tally: Tally) -> ImportanceVector:
    """Importance from selected-count ranges, as a fraction of the total."""
    for attr, off in zip(tally.attributes, tally.offered):
        if sum(1 for o in off if o > 0) < 2:
            raise DegenerateTallyError(f"{attr.name} has fewer than two offered levels")
    names = [a.name for a in tally.attributes]
    ranges = [max(sel) - min(sel) for sel in tally.selected]
    return _range_shares(names, ranges)


@dataclass(frozen=True)
class PartWorths:
    """Effects-coded level utilities: zero-sum within each attribute."""

    attributes: tuple[Attribute, ...]
    utilities: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        if len(self.attributes) != len(self.utilities):
            raise InvariantViolation("partWorths", "attribute/utility length mismatch")
        for attr, us in zip(self.attributes, self.utilities):
            if len(us) != len(attr.levels):
                raise InvariantViolation("partWorths", f"level count mismatch for {attr.name}")
            if abs(sum(us)) > EFFECTS_CODING_TOL:
                raise InvariantViolation(
                    "partWorths", f"{attr.name} utilities sum to {sum(us)}, expected 0"
                )

    def for_attribute(self, name: str) -> tuple[float, ...]:
        for attr, us in zip(self.attributes, self.utilities):
            if attr.name == name:
                return us
        raise KeyError(name)


def recenter(values: Sequence[float]) -> tuple[float, ...]:
    """Shift values to an exact zero sum (undoes rounding drift)."""
    mean = sum(values) / len(values)
    return tuple(v - mean for v in values)


def importance_partworths(pw: PartWorths) -> ImportanceVector:
    """Importance from part-worth ranges, as a fraction of the total."""
    if len(pw.attributes) < 2:
        raise DegenerateTallyError("need part-worths for at least two attributes")
    names = [a.name for a in pw.attributes]
    ranges = [max(us) - min(us) for us in pw.utilities]
    return _range_shares(names, ranges)


@dataclass(frozen=True)
class SampleSizeCheck:
    ratio: float
    ok: bool


def sample_size_check(n: int, t: int, a: int, c: int) -> SampleSizeCheck:
    """Rule-of-thumb coverage check: n*t*a/c against the minimum of 500.

    n respondents, t tasks each, a alternatives per task, c the largest
    level count over all attributes.
    """
    if min(n, t, a, c) < 1:
        raise ValueError("all sample-size inputs must be >= 1")
    ratio = n * t * a / c
    return SampleSizeCheck(ratio=ratio, ok=ratio >= SAMPLE_SIZE_RULE_MIN)


#: The standard three-attribute survey layout with four levels each.
STANDARD_ATTRIBUTES = (
    Attribute("Comments", (0, 2, 5, 10), dimension="stability"),
    Attribute("Reader Rating", (0, 10, 30, 70), dimension="credibility"),
    Attribute("Author Rating", (-100, 0, 1000, 2000), dimension="quality"),
)
