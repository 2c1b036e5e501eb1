"""File formats: annotation histories, designs, choice logs, result tables.

Loaders accept file paths or already-open text/byte streams. Record
streams (annotations, choices) are loaded skip-and-report: invalid records
become DataError entries instead of aborting the whole load. Single-document
formats (design, results) fail fast with InputError.

Numbers are serialized in decimal with six fractional digits; timestamps
are integers.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .conjoint import (
    Attribute,
    ChoiceRecord,
    Concept,
    Design,
    DesignKind,
    ImportanceVector,
    PartWorths,
    Task,
)
from .scoring import Annotation, Author, Edit, EditKind, InvariantViolation, Role

CHOICE_FIELDS = ("respondentId", "taskId", "chosenIndex", "timestamp")


class InputError(ValueError):
    """Stream unreadable or document structurally malformed."""


@dataclass(frozen=True)
class DataError:
    """One rejected record: where it sat, which field, and why."""

    record_index: int
    field: str
    reason: str


def _read_text(source) -> str:
    if hasattr(source, "read"):
        data = source.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as err:
        raise InputError(f"cannot read {source}: {err}") from err


def _write_text(sink, text: str) -> None:
    if hasattr(sink, "write"):
        sink.write(text.encode("utf-8") if isinstance(sink, io.BufferedIOBase) else text)
        return
    try:
        Path(sink).write_text(text, encoding="utf-8")
    except OSError as err:
        raise InputError(f"cannot write {sink}: {err}") from err


def _round6(value: float) -> float:
    return round(float(value), 6)


# --- annotations -----------------------------------------------------------

def _edit_from_dict(raw: dict) -> Edit:
    return Edit(
        timestamp=int(raw["timestamp"]),
        kind=EditKind(str(raw["kind"]).lower()),
        author_id=str(raw["authorId"]),
        weight=int(raw.get("weight", 1)),
    )


def _author_from_dict(raw: dict) -> Author:
    role = raw["role"]
    return Author(
        id=str(raw["id"]),
        role=Role(
            name=str(role["name"]),
            rank=float(role["rank"]),
            role_factor=float(role["roleFactor"]),
        ),
        iq=float(raw["iq"]),
        attribution=float(raw["attribution"]),
        complex_edits=int(raw["complexEdits"]),
        simple_edits=int(raw["simpleEdits"]),
    )


def annotation_from_dict(raw: dict) -> Annotation:
    return Annotation(
        id=str(raw["id"]),
        created_at=int(raw["createdAt"]),
        edits=tuple(_edit_from_dict(e) for e in raw.get("edits", [])),
        authors=tuple(_author_from_dict(a) for a in raw.get("authors", [])),
        edits_iq=float(raw["editsIQ"]),
    )


def annotation_to_dict(annotation: Annotation) -> dict:
    return {
        "id": annotation.id,
        "createdAt": annotation.created_at,
        "editsIQ": _round6(annotation.edits_iq),
        "edits": [
            {
                "timestamp": e.timestamp,
                "kind": e.kind.value,
                "authorId": e.author_id,
                "weight": e.weight,
            }
            for e in annotation.edits
        ],
        "authors": [
            {
                "id": a.id,
                "role": {
                    "name": a.role.name,
                    "rank": _round6(a.role.rank),
                    "roleFactor": _round6(a.role.role_factor),
                },
                "iq": _round6(a.iq),
                "attribution": _round6(a.attribution),
                "complexEdits": a.complex_edits,
                "simpleEdits": a.simple_edits,
            }
            for a in annotation.authors
        ],
    }


def load_annotations(source) -> tuple[list[Annotation], list[DataError]]:
    """Parse annotation records (JSON lines, or one JSON array).

    Invalid records are skipped and reported; valid ones come back in
    input order.
    """
    text = _read_text(source)
    stripped = text.lstrip()
    if stripped.startswith("["):
        try:
            raws = json.loads(text)
        except json.JSONDecodeError as err:
            raise InputError(f"malformed annotation document: {err}") from err
    else:
        raws = []
        for line in text.splitlines():
            if line.strip():
                raws.append(line)

    annotations: list[Annotation] = []
    errors: list[DataError] = []
    for index, raw in enumerate(raws):
        try:
            record = json.loads(raw) if isinstance(raw, str) else raw
            annotations.append(annotation_from_dict(record))
        except InvariantViolation as err:
            errors.append(DataError(index, err.field, err.reason))
        except json.JSONDecodeError as err:
            errors.append(DataError(index, "record", f"invalid JSON: {err.msg}"))
        except KeyError as err:
            errors.append(DataError(index, str(err.args[0]), "missing field"))
        except (TypeError, ValueError) as err:
            errors.append(DataError(index, "record", str(err)))
    return annotations, errors


def save_annotations(annotations: Iterable[Annotation], sink) -> None:
    lines = [json.dumps(annotation_to_dict(a)) for a in annotations]
    _write_text(sink, "\n".join(lines) + ("\n" if lines else ""))


# --- designs ----------------------------------------------------------------

def design_to_dict(design: Design) -> dict:
    return {
        "kind": design.kind.value,
        "seed": design.seed,
        "attributes": [
            {"name": a.name, "levels": [_round6(v) for v in a.levels], "dimension": a.dimension}
            for a in design.attributes
        ],
        "tasks": [
            {"id": t.id, "concepts": [list(c.level_indexes) for c in t.concepts]}
            for t in design.tasks
        ],
    }


def design_from_dict(raw: dict) -> Design:
    try:
        attributes = tuple(
            Attribute(
                name=str(a["name"]),
                levels=tuple(float(v) for v in a["levels"]),
                dimension=a.get("dimension"),
            )
            for a in raw["attributes"]
        )
        tasks = tuple(
            Task(
                id=int(t["id"]),
                concepts=tuple(Concept(tuple(int(i) for i in c)) for c in t["concepts"]),
            )
            for t in raw["tasks"]
        )
        return Design(
            attributes=attributes,
            tasks=tasks,
            kind=DesignKind(raw["kind"]),
            seed=int(raw["seed"]),
        )
    except (KeyError, TypeError, ValueError) as err:
        if isinstance(err, InvariantViolation):
            raise
        raise InputError(f"malformed design document: {err}") from err


def load_design(source) -> Design:
    try:
        raw = json.loads(_read_text(source))
    except json.JSONDecodeError as err:
        raise InputError(f"malformed design document: {err}") from err
    return design_from_dict(raw)


def save_design(design: Design, sink) -> None:
    _write_text(sink, json.dumps(design_to_dict(design), indent=2) + "\n")


# --- choices ----------------------------------------------------------------

def choice_line(choice: ChoiceRecord) -> str:
    """One CSV line for the append-only choice log (no trailing newline)."""
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="").writerow(
        [choice.respondent_id, choice.task_id, choice.chosen_index, choice.timestamp]
    )
    return buffer.getvalue()


def load_choices(source, design: Design) -> tuple[list[ChoiceRecord], list[DataError]]:
    """Parse a choice log, validating each record against the design."""
    text = _read_text(source)
    rows = list(csv.reader(io.StringIO(text)))
    if rows and rows[0] == list(CHOICE_FIELDS):
        rows = rows[1:]
    task_sizes = {task.id: len(task.concepts) for task in design.tasks}

    choices: list[ChoiceRecord] = []
    errors: list[DataError] = []
    index = -1
    for row in rows:
        if not row or all(not cell.strip() for cell in row):
            continue
        index += 1
        if len(row) != 4:
            errors.append(DataError(index, "record", f"expected 4 fields, got {len(row)}"))
            continue
        respondent, task_raw, chosen_raw, ts_raw = (cell.strip() for cell in row)
        if not respondent:
            errors.append(DataError(index, "respondentId", "empty"))
            continue
        try:
            task_id, chosen, ts = int(task_raw), int(chosen_raw), int(ts_raw)
        except ValueError:
            errors.append(DataError(index, "record", "non-integer field"))
            continue
        size = task_sizes.get(task_id)
        if size is None:
            errors.append(DataError(index, "taskId", f"unknown task {task_id}"))
            continue
        if not 0 <= chosen < size:
            errors.append(
                DataError(index, "chosenIndex", f"{chosen} outside task of {size} alternatives")
            )
            continue
        choices.append(ChoiceRecord(respondent, task_id, chosen, ts))
    return choices, errors


def save_choices(choices: Iterable[ChoiceRecord], sink) -> None:
    lines = [",".join(CHOICE_FIELDS)]
    lines.extend(choice_line(c) for c in choices)
    _write_text(sink, "\n".join(lines) + "\n")


# --- results ----------------------------------------------------------------

def results_to_dict(pw: PartWorths, importances: ImportanceVector) -> dict:
    rows = []
    for attr, utilities in zip(pw.attributes, pw.utilities):
        for level, utility in zip(attr.levels, utilities):
            rows.append(
                {
                    "attribute": attr.name,
                    "dimension": attr.dimension,
                    "level": _round6(level),
                    "utility": _round6(utility),
                }
            )
    return {
        "partWorths": rows,
        "importances": [
            {"attribute": name, "importance": _round6(share)}
            for name, share in zip(importances.attributes, importances.shares)
        ],
    }


def export_results(pw: PartWorths, importances: ImportanceVector, sink) -> None:
    """Write the results document; values survive a reload to 6 decimals."""
    _write_text(sink, json.dumps(results_to_dict(pw, importances), indent=2) + "\n")


def load_results(source) -> tuple[PartWorths, ImportanceVector]:
    try:
        raw = json.loads(_read_text(source))
        grouped: dict[str, dict] = {}
        for row in raw["partWorths"]:
            entry = grouped.setdefault(
                row["attribute"], {"dimension": row.get("dimension"), "levels": [], "utilities": []}
            )
            entry["levels"].append(float(row["level"]))
            entry["utilities"].append(float(row["utility"]))
        attributes = []
        utilities = []
        for name, entry in grouped.items():
            attributes.append(
                Attribute(name=name, levels=tuple(entry["levels"]), dimension=entry["dimension"])
            )
            drift = sum(entry["utilities"])
            if abs(drift) > 1e-5:
                raise InputError(f"utilities of {name} sum to {drift}, expected 0")
            # Remove the 6-decimal rounding drift so effects coding holds.
            utilities.append(tuple(u - drift / len(entry["utilities"]) for u in entry["utilities"]))
        shares = [float(row["importance"]) for row in raw["importances"]]
        names = [str(row["attribute"]) for row in raw["importances"]]
        if shares:
            total = sum(shares)
            if abs(total - 1.0) > 1e-5:
                raise InputError(f"importances sum to {total}, expected 1")
            shares = [s / total for s in shares]
        importances = ImportanceVector(attributes=tuple(names), shares=tuple(shares))
        return PartWorths(tuple(attributes), tuple(utilities)), importances
    except InputError:
        raise
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as err:
        raise InputError(f"malformed results document: {err}") from err
