// Task-flow state machine. All survey state lives on the server; the
// controller only tracks the task being displayed and the selection.

import {
  OutOfOrderError,
  SurveyGateway,
  TaskPayload,
} from "./api.js";

export type View =
  | { kind: "loading" }
  | { kind: "task"; task: TaskPayload; selected: number | null; submitting: boolean }
  | { kind: "completed"; answered: number; taskCount: number }
  | { kind: "error"; message: string };

export type ViewListener = (view: View) => void;

export class SurveyController {
  private view: View = { kind: "loading" };

  constructor(
    private readonly api: SurveyGateway,
    readonly respondent: string,
    private readonly onChange: ViewListener = () => {},
  ) {}

  get current(): View {
    return this.view;
  }

  private update(view: View): void {
    this.view = view;
    this.onChange(view);
  }

  /** Fetch the respondent's current task (also used to resume and retry). */
  async start(): Promise<void> {
    this.update({ kind: "loading" });
    try {
      const task = await this.api.nextTask(this.respondent);
      if (task.completed) {
        this.update({ kind: "completed", answered: task.answered, taskCount: task.taskCount });
      } else {
        this.update({ kind: "task", task, selected: null, submitting: false });
      }
    } catch (err) {
      this.update({ kind: "error", message: describe(err) });
    }
  }

  /** Select one card; re-selecting another card moves the selection. */
  select(index: number): void {
    if (this.view.kind !== "task" || this.view.submitting) return;
    if (index < 0 || index >= this.view.task.alternatives.length) return;
    this.update({ ...this.view, selected: index });
  }

  /**
   * Submit the current selection. No-op without a selection or while a
   * submission is in flight (the double-click guard). A server rejection
   * for an out-of-order task refetches the authoritative state.
   */
  async submit(): Promise<void> {
    if (this.view.kind !== "task") return;
    const { task, selected, submitting } = this.view;
    if (selected === null || submitting) return;
    this.update({ ...this.view, submitting: true });
    try {
      await this.api.submitChoice(this.respondent, task.taskId, selected);
      await this.start();
    } catch (err) {
      if (err instanceof OutOfOrderError) {
        await this.start();
        return;
      }
      this.update({ kind: "error", message: describe(err) });
    }
  }

  /** Retry affordance after a network or server failure. */
  async retry(): Promise<void> {
    await this.start();
  }
}

function describe(err: unknown): string {
  if (err instanceof Error) return err.message;
  return String(err);
}
