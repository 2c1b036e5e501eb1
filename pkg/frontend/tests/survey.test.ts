import { describe, expect, it } from "vitest";

import {
  ApiError,
  ChoiceAck,
  OutOfOrderError,
  SurveyGateway,
  TaskResponse,
} from "../src/api.js";
import { SurveyController, View } from "../src/survey.js";

const ATTRIBUTES = ["Comments", "Reader Rating", "Author Rating"];

function taskAlternatives() {
  return [0, 1, 2, 3].map((index) => ({
    index,
    levels: { Comments: index, "Reader Rating": index * 10, "Author Rating": index * 100 },
  }));
}

/** In-memory stand-in for the survey service with the same task semantics. */
class FakeService implements SurveyGateway {
  answered = new Map<string, number>();
  log: Array<{ respondent: string; taskId: number; chosenIndex: number }> = [];
  taskIds = [11, 12, 13];
  failNextFetch = false;

  async nextTask(respondent: string): Promise<TaskResponse> {
    if (this.failNextFetch) {
      this.failNextFetch = false;
      throw new TypeError("fetch failed");
    }
    const n = this.answered.get(respondent) ?? 0;
    if (n >= this.taskIds.length) {
      return { respondent, completed: true, taskCount: this.taskIds.length, answered: n };
    }
    return {
      respondent,
      completed: false,
      taskId: this.taskIds[n],
      taskNumber: n + 1,
      taskCount: this.taskIds.length,
      attributes: ATTRIBUTES,
      alternatives: taskAlternatives(),
    };
  }

  async submitChoice(
    respondent: string,
    taskId: number,
    chosenIndex: number,
  ): Promise<ChoiceAck> {
    const n = this.answered.get(respondent) ?? 0;
    if (taskId !== this.taskIds[n]) throw new OutOfOrderError(409, "out of order");
    if (chosenIndex < 0 || chosenIndex > 3) throw new ApiError(400, "bad index");
    this.log.push({ respondent, taskId, chosenIndex });
    this.answered.set(respondent, n + 1);
    return { ok: true, answered: n + 1, remaining: this.taskIds.length - n - 1 };
  }
}

function makeController(service: FakeService) {
  const views: View[] = [];
  const controller = new SurveyController(service, "tester", (view) => views.push(view));
  return { controller, views };
}

describe("SurveyController", () => {
  it("starts at the respondent's first task", async () => {
    const { controller } = makeController(new FakeService());
    await controller.start();
    const view = controller.current;
    expect(view.kind).toBe("task");
    if (view.kind === "task") {
      expect(view.task.taskNumber).toBe(1);
      expect(view.selected).toBeNull();
      expect(view.task.alternatives).toHaveLength(4);
    }
  });

  it("moves the selection between cards, one at a time", async () => {
    const { controller } = makeController(new FakeService());
    await controller.start();
    controller.select(0);
    controller.select(2);
    const view = controller.current;
    expect(view.kind === "task" && view.selected).toBe(2);
  });

  it("ignores out-of-range selections", async () => {
    const { controller } = makeController(new FakeService());
    await controller.start();
    controller.select(9);
    expect(controller.current.kind === "task" && controller.current.selected).toBeNull();
  });

  it("does not submit without a selection", async () => {
    const service = new FakeService();
    const { controller } = makeController(service);
    await controller.start();
    await controller.submit();
    expect(service.log).toHaveLength(0);
    expect(controller.current.kind === "task" && controller.current.task.taskNumber).toBe(1);
  });

  it("submits the selection and advances", async () => {
    const service = new FakeService();
    const { controller } = makeController(service);
    await controller.start();
    controller.select(3);
    await controller.submit();
    expect(service.log).toEqual([{ respondent: "tester", taskId: 11, chosenIndex: 3 }]);
    expect(controller.current.kind === "task" && controller.current.task.taskNumber).toBe(2);
  });

  it("guards against double-click submits", async () => {
    const service = new FakeService();
    const { controller } = makeController(service);
    await controller.start();
    controller.select(1);
    await Promise.all([controller.submit(), controller.submit()]);
    expect(service.log).toHaveLength(1);
  });

  it("reaches the completion view after the last task", async () => {
    const service = new FakeService();
    const { controller } = makeController(service);
    await controller.start();
    for (let i = 0; i < 3; i += 1) {
      controller.select(i % 4);
      await controller.submit();
    }
    const view = controller.current;
    expect(view.kind).toBe("completed");
    if (view.kind === "completed") expect(view.answered).toBe(3);
    expect(service.log.map((entry) => entry.taskId)).toEqual([11, 12, 13]);
  });

  it("refetches the current task after an out-of-order rejection", async () => {
    const service = new FakeService();
    const { controller } = makeController(service);
    await controller.start();
    controller.select(0);
    // another tab answers the same task first
    await service.submitChoice("tester", 11, 2);
    await controller.submit();
    const view = controller.current;
    expect(view.kind).toBe("task");
    if (view.kind === "task") expect(view.task.taskNumber).toBe(2);
    expect(service.log).toHaveLength(1); // the rejected submit recorded nothing
  });

  it("shows an error with retry after a network failure", async () => {
    const service = new FakeService();
    const { controller } = makeController(service);
    service.failNextFetch = true;
    await controller.start();
    expect(controller.current.kind).toBe("error");
    await controller.retry();
    expect(controller.current.kind).toBe("task");
  });

  it("never reorders: log sequence equals the click sequence", async () => {
    const service = new FakeService();
    const { controller } = makeController(service);
    await controller.start();
    const clicks: Array<{ taskId: number; chosenIndex: number }> = [];
    while (controller.current.kind === "task") {
      const view = controller.current;
      if (view.kind !== "task") break;
      const pick = (view.task.taskNumber * 3) % 4;
      controller.select(pick);
      clicks.push({ taskId: view.task.taskId, chosenIndex: pick });
      await controller.submit();
    }
    expect(service.log.map(({ taskId, chosenIndex }) => ({ taskId, chosenIndex }))).toEqual(
      clicks,
    );
  });
});
