"""Shared fixtures: the three-author worked example and reference tallies."""

from __future__ import annotations

import pytest

from annotrust.conjoint import Attribute, PartWorths, STANDARD_ATTRIBUTES, Tally, recenter
from annotrust.scoring import Annotation, Author, Edit, EditKind, Role


def build_annotation(
    authors: tuple[Author, ...],
    annotation_id: str = "a1",
    created_at: int = 0,
    edits_iq: float = 30.0,
    first_edit_at: int = 1,
) -> Annotation:
    """Annotation whose edit list matches the authors' declared counts."""
    edits = []
    ts = first_edit_at
    for author in authors:
        for _ in range(author.complex_edits):
            edits.append(Edit(ts, EditKind.COMPLEX, author.id))
            ts += 1
        for _ in range(author.simple_edits):
            edits.append(Edit(ts, EditKind.SIMPLE, author.id))
            ts += 1
    return Annotation(annotation_id, created_at, tuple(edits), authors, edits_iq)


EXAMPLE_AUTHORS = (
    Author("editor-1", Role("editor", 25.0), iq=10.0, attribution=0.70,
           complex_edits=2, simple_edits=7),
    Author("whitehat-1", Role("whitehat", 3.0), iq=30.0, attribution=0.28,
           complex_edits=7, simple_edits=30),
    Author("staff-1", Role("staff", 38.0), iq=120.0, attribution=0.02,
           complex_edits=1, simple_edits=3),
)


@pytest.fixture
def example_annotation() -> Annotation:
    """50 edits (10 complex, 40 simple), edits IQ 30, three authors."""
    return build_annotation(EXAMPLE_AUTHORS)


# Selected counts of the reference survey tally, with offered counts scaled
# from the published display shares (560 concept displays per attribute).
REFERENCE_SELECTED = {
    "Comments": (2, 33, 44, 61),
    "Reader Rating": (5, 24, 39, 72),
    "Author Rating": (1, 7, 52, 80),
}
REFERENCE_OFFERED = {
    "Comments": (28, 134, 174, 224),
    "Reader Rating": (22, 95, 157, 286),
    "Author Rating": (28, 39, 207, 286),
}


@pytest.fixture
def reference_tally() -> Tally:
    return Tally(
        attributes=STANDARD_ATTRIBUTES,
        selected=tuple(REFERENCE_SELECTED[a.name] for a in STANDARD_ATTRIBUTES),
        offered=tuple(REFERENCE_OFFERED[a.name] for a in STANDARD_ATTRIBUTES),
        n_choices=140,
    )


# Final calibrated utilities (rounded as published); re-centered to an
# exact zero sum before use as model part-worths.
CALIBRATED_ATTRIBUTES = (
    Attribute("Author Rating", (-100, 0, 1000, 2000), dimension="quality"),
    Attribute("Reader Rating", (0, 5, 30, 70), dimension="credibility"),
    Attribute("Comments", (0, 2, 5, 10), dimension="stability"),
)
CALIBRATED_UTILITIES = {
    "Author Rating": (-0.90, -0.39, 0.44, 0.86),
    "Reader Rating": (-0.82, -0.18, 0.29, 0.71),
    "Comments": (-0.67, -0.04, 0.24, 0.47),
}
CALIBRATED_IMPORTANCES = {
    "Author Rating": 0.4085,
    "Reader Rating": 0.348,
    "Comments": 0.2435,
}


@pytest.fixture
def calibrated_part_worths() -> PartWorths:
    return PartWorths(
        attributes=CALIBRATED_ATTRIBUTES,
        utilities=tuple(
            recenter(CALIBRATED_UTILITIES[a.name]) for a in CALIBRATED_ATTRIBUTES
        ),
    )
