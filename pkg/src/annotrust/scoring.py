"""Numeric trust model for collaboratively edited annotations.

An annotation's trust value is a weighted combination of three dimensions:

* stability   -- accumulated edit activity over a time interval
* credibility -- who contributed, weighted by role power and attribution,
                 blended with the complex/simple edit ratio
* quality     -- credibility restricted to the top-n contributors

All operations are pure functions; every value is immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

ATTRIBUTION_SUM_TOL = 1e-9


class InvariantViolation(ValueError):
    """A domain value would violate one of its declared invariants."""

    def __init__(self, field: str, reason: str):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason


class InvalidIntervalError(ValueError):
    """Stability interval with t0 > p."""


class InvalidAttributionError(ValueError):
    """Author attributions do not sum to 1."""


class NoEditsError(ValueError):
    """Edit-type score requested for an author set with zero edits."""


class InvalidNError(ValueError):
    """Quality requested with n < 1."""


class EditKind(enum.Enum):
    COMPLEX = "complex"
    SIMPLE = "simple"


@dataclass(frozen=True)
class Edit:
    """One recorded activity on an annotation.

    ``weight`` is the signed contribution to the edit count at this
    timestamp (default +1; negative weights model downvote-style edits).
    """

    timestamp: int
    kind: EditKind
    author_id: str
    weight: int = 1

    def __post_init__(self):
        if self.timestamp < 0:
            raise InvariantViolation("timestamp", "must be >= 0")
        if not isinstance(self.weight, int) or isinstance(self.weight, bool):
            raise InvariantViolation("weight", "must be an integer")


@dataclass(frozen=True)
class Role:
    name: str
    rank: float
    role_factor: float = 0.025

    def __post_init__(self):
        if self.rank < 0:
            raise InvariantViolation("rank", "must be >= 0")
        if self.role_factor <= 0:
            raise InvariantViolation("roleFactor", "must be > 0")


@dataclass(frozen=True)
class Author:
    """A contributor to one annotation.

    ``attribution`` is this author's fractional share of the annotation's
    edits; shares over the annotation's author set sum to 1.
    """

    id: str
    role: Role
    iq: float
    attribution: float
    complex_edits: int = 0
    simple_edits: int = 0

    def __post_init__(self):
        if not 0.0 <= self.attribution <= 1.0:
            raise InvariantViolation("attribution", "must be within [0, 1]")
        if self.complex_edits < 0 or self.simple_edits < 0:
            raise InvariantViolation("edits", "edit counts must be >= 0")


@dataclass(frozen=True)
class Annotation:
    id: str
    created_at: int
    edits: tuple[Edit, ...]
    authors: tuple[Author, ...]
    edits_iq: float

    def __post_init__(self):
        object.__setattr__(self, "edits", tuple(self.edits))
        object.__setattr__(self, "authors", tuple(self.authors))
        if self.edits and self.created_at > min(e.timestamp for e in self.edits):
            raise InvariantViolation("createdAt", "later than the first edit")
        if self.authors:
            total = sum(a.attribution for a in self.authors)
            if abs(total - 1.0) > ATTRIBUTION_SUM_TOL:
                raise InvariantViolation(
                    "attribution", f"author attributions sum to {total}, expected 1"
                )
            ids = {a.id for a in self.authors}
            attributed = sum(1 for e in self.edits if e.author_id in ids)
            declared = sum(a.complex_edits + a.simple_edits for a in self.authors)
            if attributed != declared:
                raise InvariantViolation(
                    "edits",
                    f"authors declare {declared} edits but {attributed} are attributed to them",
                )


@dataclass(frozen=True)
class TrustWeights:
    """Importance factors for (stability, credibility, quality)."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise InvariantViolation("weights", "must be >= 0")
        total = self.alpha + self.beta + self.gamma
        if not 0.98 <= total <= 1.02:
            raise InvariantViolation("weights", f"sum {total} outside [0.98, 1.02]")


DEFAULT_ROLE_FACTOR = 0.025
#: Role ranks shipped as an overridable default configuration.
DEFAULT_ROLE_RANKS = {"editor": 25.0, "whitehat": 3.0, "staff": 38.0}

#: Calibrated weights: the conjoint importances of the three dimensions.
DEFAULT_WEIGHTS = TrustWeights(alpha=0.2435, beta=0.348, gamma=0.4085)
#: Near-equal preset used before calibration.
EXAMPLE_WEIGHTS = TrustWeights(alpha=0.29, beta=0.33, gamma=0.39)


def default_role(name: str) -> Role:
    return Role(name=name, rank=DEFAULT_ROLE_RANKS[name], role_factor=DEFAULT_ROLE_FACTOR)


def edits_at(annotation: Annotation, t: int) -> int:
    """Signed number of edits recorded at exactly timestamp ``t``."""
    return sum(e.weight for e in annotation.edits if e.timestamp == t)


def stability(annotation: Annotation, t0: int, p: int) -> int:
    """Sum of edit weights over the closed interval [t0, p]."""
    if t0 > p:
        raise InvalidIntervalError(f"invalid interval: t0={t0} > p={p}")
    return sum(e.weight for e in annotation.edits if t0 <= e.timestamp <= p)


def role_power(author: Author) -> float:
    return author.role.rank * author.role.role_factor * author.iq


def uccf(authors: tuple[Author, ...] | list[Author]) -> float:
    """Attribution-weighted sum of author role powers.

    The user credibility correction factor over an annotation's author set;
    attributions must sum to 1.
    """
    total = sum(a.attribution for a in authors)
    if abs(total - 1.0) > ATTRIBUTION_SUM_TOL:
        raise InvalidAttributionError(f"attributions sum to {total}, expected 1")
    return sum(a.attribution * role_power(a) for a in authors)


def edits_types(edits_iq: float, complex_edits: int, simple_edits: int) -> float:
    """Edit-type score: edits IQ scaled by the complex/simple edit ratio.

    The denominator is guarded with max(simple, 1) so annotations with only
    complex edits stay scorable.
    """
    if complex_edits + simple_edits == 0:
        raise NoEditsError("author set has zero edits")
    return edits_iq * complex_edits / max(simple_edits, 1)


def credibility(annotation: Annotation) -> float:
    """Mean of the author-weighted correction factor and the edit-type score."""
    ce = sum(a.complex_edits for a in annotation.authors)
    se = sum(a.simple_edits for a in annotation.authors)
    return (uccf(annotation.authors) + edits_types(annotation.edits_iq, ce, se)) / 2


def top_authors(annotation: Annotation, n: int) -> tuple[Author, ...]:
    """The n most-attributed authors; ties broken by IQ, then author id."""
    ranked = sorted(annotation.authors, key=lambda a: (-a.attribution, -a.iq, a.id))
    return tuple(ranked[:n])


def quality(annotation: Annotation, n: int) -> float:
    """Credibility recomputed over only the top-n contributors.

    Excluded authors' terms are dropped without renormalizing the remaining
    attributions. Degenerates to credibility when n covers all authors.
    """
    if n < 1:
        raise InvalidNError(f"n must be >= 1, got {n}")
    if n >= len(annotation.authors):
        return credibility(annotation)
    kept = top_authors(annotation, n)
    part = sum(a.attribution * role_power(a) for a in kept)
    ce = sum(a.complex_edits for a in kept)
    se = sum(a.simple_edits for a in kept)
    return (part + edits_types(annotation.edits_iq, ce, se)) / 2


def trust(
    annotation: Annotation,
    weights: TrustWeights,
    n: int,
    t0: int,
    p: int,
) -> float:
    """Weighted trust value: alpha*S + beta*C + gamma*Q over [t0, p]."""
    return (
        weights.alpha * stability(annotation, t0, p)
        + weights.beta * credibility(annotation)
        + weights.gamma * quality(annotation, n)
    )
