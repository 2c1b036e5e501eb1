"""HTTP survey service: serves conjoint tasks, records choices durably.

Every acknowledged choice is appended (and fsynced) to a newline-delimited
log before the response goes out, so a crash never loses an acknowledged
record and a restart replays the log to reconstruct sessions and tallies.
Task order is a per-respondent permutation derived from the respondent id
and the design seed, so resuming respondents see a stable order.
"""

from __future__ import annotations

import hashlib
import os
import threading
import time
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .conjoint import (
    ChoiceRecord,
    DegenerateTallyError,
    Design,
    importance_counts,
    importance_partworths,
    sample_size_check,
    tally_choices,
)
from .estimation import FitConvergenceError, UnidentifiableLevelError, fit_logit
from .ingest import CHOICE_FIELDS, choice_line, load_choices, results_to_dict


def task_order(respondent_id: str, design: Design) -> list[int]:
    """Deterministic per-respondent presentation order of task indexes."""
    digest = hashlib.sha256(f"{respondent_id}|{design.seed}".encode("utf-8")).digest()
    rng = np.random.default_rng(int.from_bytes(digest[:8], "big"))
    return [int(i) for i in rng.permutation(len(design.tasks))]


class SurveyState:
    """Choice log plus the per-respondent session counters derived from it."""

    def __init__(self, design: Design, log_path: str | Path):
        self.design = design
        self.log_path = Path(log_path)
        self.lock = threading.Lock()
        self.records: list[ChoiceRecord] = []
        self.answered: dict[str, int] = {}
        if self.log_path.exists() and self.log_path.stat().st_size > 0:
            replayed, errors = load_choices(self.log_path, design)
            if errors:
                raise ValueError(f"choice log is corrupt: {errors[0]}")
            for record in replayed:
                self._remember(record)
        else:
            self.log_path.parent.mkdir(parents=True, exist_ok=True)
            self.log_path.write_text(",".join(CHOICE_FIELDS) + "\n", encoding="utf-8")

    def _remember(self, record: ChoiceRecord) -> None:
        self.records.append(record)
        self.answered[record.respondent_id] = self.answered.get(record.respondent_id, 0) + 1

    def next_task_index(self, respondent_id: str) -> int:
        return self.answered.get(respondent_id, 0)

    def current_task(self, respondent_id: str):
        """The respondent's next unanswered task, or None when done."""
        position = self.next_task_index(respondent_id)
        if position >= len(self.design.tasks):
            return None
        order = task_order(respondent_id, self.design)
        return self.design.tasks[order[position]]

    def append(self, record: ChoiceRecord) -> None:
        # Log line hits disk before the caller acknowledges.
        with open(self.log_path, "a", encoding="utf-8") as handle:
            handle.write(choice_line(record) + "\n")
            handle.flush()
            os.fsync(handle.fileno())
        self._remember(record)

    def snapshot(self) -> list[ChoiceRecord]:
        with self.lock:
            return list(self.records)


class ChoiceSubmission(BaseModel):
    respondent: str
    taskId: int
    chosenIndex: int


def _task_payload(state: SurveyState, respondent_id: str) -> dict:
    design = state.design
    answered = state.next_task_index(respondent_id)
    task = state.current_task(respondent_id)
    if task is None:
        return {
            "respondent": respondent_id,
            "completed": True,
            "taskCount": len(design.tasks),
            "answered": answered,
        }
    return {
        "respondent": respondent_id,
        "completed": False,
        "taskId": task.id,
        "taskNumber": answered + 1,
        "taskCount": len(design.tasks),
        "attributes": [a.name for a in design.attributes],
        "alternatives": [
            {"index": i, "levels": design.concept_levels(concept)}
            for i, concept in enumerate(task.concepts)
        ],
    }


def _results_payload(state: SurveyState) -> dict:
    design = state.design
    records = state.snapshot()
    if not records:
        return {"empty": True, "choices": 0}
    tally = tally_choices(design, records)
    payload: dict = {
        "empty": False,
        "choices": tally.n_choices,
        "respondents": len({r.respondent_id for r in records}),
        "tally": [
            {
                "attribute": attr.name,
                "levels": list(attr.levels),
                "selected": list(sel),
                "offered": list(off),
            }
            for attr, sel, off in zip(tally.attributes, tally.selected, tally.offered)
        ],
    }
    try:
        payload["importanceCounts"] = importance_counts(tally).as_dict()
    except DegenerateTallyError as err:
        payload["importanceCounts"] = None
        payload["importanceCountsError"] = str(err)
    try:
        part_worths = fit_logit(design, records)
        fit_doc = results_to_dict(part_worths, importance_partworths(part_worths))
        payload["partWorths"] = fit_doc["partWorths"]
        payload["importancePartworths"] = {
            row["attribute"]: row["importance"] for row in fit_doc["importances"]
        }
    except (UnidentifiableLevelError, FitConvergenceError, DegenerateTallyError) as err:
        payload["partWorths"] = None
        payload["importancePartworths"] = None
        payload["fitError"] = str(err)
    check = sample_size_check(
        n=payload["respondents"],
        t=len(design.tasks),
        a=design.alternatives_per_task,
        c=max(len(a.levels) for a in design.attributes),
    )
    payload["sampleSizeCheck"] = {
        "n": payload["respondents"],
        "t": len(design.tasks),
        "a": design.alternatives_per_task,
        "c": max(len(a.levels) for a in design.attributes),
        "ratio": check.ratio,
        "pass": check.ok,
    }
    return payload


def create_app(design: Design | None, log_path: str | Path | None = None) -> FastAPI:
    """Build the survey API; ``design=None`` yields a not-ready service."""
    app = FastAPI(title="annotrust survey service")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    state = SurveyState(design, log_path) if design is not None else None
    app.state.survey = state

    def ready() -> SurveyState:
        if state is None:
            raise HTTPException(status_code=503, detail="service has no design configured")
        return state

    @app.get("/design")
    def get_design() -> dict:
        survey = ready()
        design = survey.design
        return {
            "attributes": [
                {"name": a.name, "levels": list(a.levels), "dimension": a.dimension}
                for a in design.attributes
            ],
            "taskCount": len(design.tasks),
            "alternativesPerTask": design.alternatives_per_task,
            "kind": design.kind.value,
            "seed": design.seed,
        }

    @app.get("/task")
    def next_task(respondent: str = Query(..., min_length=1)) -> dict:
        survey = ready()
        with survey.lock:
            return _task_payload(survey, respondent)

    @app.post("/choice")
    def submit_choice(submission: ChoiceSubmission) -> dict:
        survey = ready()
        if not submission.respondent:
            raise HTTPException(status_code=400, detail="empty respondent id")
        with survey.lock:
            task = survey.current_task(submission.respondent)
            if task is None:
                raise HTTPException(status_code=409, detail="survey already completed")
            if submission.taskId != task.id:
                raise HTTPException(
                    status_code=409,
                    detail=f"out of order: current task is {task.id}, got {submission.taskId}",
                )
            if not 0 <= submission.chosenIndex < len(task.concepts):
                raise HTTPException(
                    status_code=400,
                    detail=f"chosenIndex {submission.chosenIndex} outside "
                    f"{len(task.concepts)} alternatives",
                )
            record = ChoiceRecord(
                respondent_id=submission.respondent,
                task_id=submission.taskId,
                chosen_index=submission.chosenIndex,
                timestamp=int(time.time()),
            )
            survey.append(record)
            answered = survey.next_task_index(submission.respondent)
        return {
            "ok": True,
            "answered": answered,
            "remaining": len(survey.design.tasks) - answered,
        }

    @app.get("/results")
    def get_results() -> dict:
        return _results_payload(ready())

    @app.get("/export/choices")
    def export_choices() -> PlainTextResponse:
        survey = ready()
        text = survey.log_path.read_text(encoding="utf-8")
        return PlainTextResponse(text, media_type="text/csv")

    return app
