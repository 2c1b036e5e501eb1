#!/usr/bin/env python3
"""Score the three-author example annotation end to end and print each term.

Run: python scripts/score_example.py
"""

from annotrust.degrees import DEFAULT_THRESHOLDS, translate_trust
from annotrust.scoring import (
    Annotation,
    Author,
    Edit,
    EditKind,
    EXAMPLE_WEIGHTS,
    Role,
    credibility,
    edits_types,
    quality,
    role_power,
    stability,
    top_authors,
    trust,
    uccf,
)

AUTHORS = (
    Author("editor-1", Role("editor", 25.0), iq=10.0, attribution=0.70,
           complex_edits=2, simple_edits=7),
    Author("whitehat-1", Role("whitehat", 3.0), iq=30.0, attribution=0.28,
           complex_edits=7, simple_edits=30),
    Author("staff-1", Role("staff", 38.0), iq=120.0, attribution=0.02,
           complex_edits=1, simple_edits=3),
)


def example_annotation() -> Annotation:
    edits, ts = [], 1
    for author in AUTHORS:
        for _ in range(author.complex_edits):
            edits.append(Edit(ts, EditKind.COMPLEX, author.id)); ts += 1
        for _ in range(author.simple_edits):
            edits.append(Edit(ts, EditKind.SIMPLE, author.id)); ts += 1
    return Annotation("example", 0, tuple(edits), AUTHORS, edits_iq=30.0)


def main() -> None:
    ann = example_annotation()
    s = stability(ann, 0, 60)
    print(f"stability            {s}")
    print(f"uccf                 {uccf(ann.authors):.3f}")
    print(f"edits-type score     {edits_types(30.0, 10, 40):.3f}")
    print(f"credibility          {credibility(ann):.3f}")
    kept = top_authors(ann, 2)
    print(f"uccf (top 2)         {sum(a.attribution * role_power(a) for a in kept):.3f}")
    ce, se = sum(a.complex_edits for a in kept), sum(a.simple_edits for a in kept)
    print(f"edits-type (top 2)   {edits_types(30.0, ce, se):.3f}")
    print(f"quality (n=2)        {quality(ann, 2):.3f}")
    value = trust(ann, EXAMPLE_WEIGHTS, n=2, t0=0, p=60)
    print(f"trust                {value:.3f}")
    print(f"degree               {translate_trust(value, DEFAULT_THRESHOLDS).label}")


if __name__ == "__main__":
    main()
