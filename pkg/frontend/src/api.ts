// Typed client for the survey service endpoints.

export type AttributeSummary = {
  name: string;
  levels: number[];
  dimension: string | null;
};

export type DesignSummary = {
  attributes: AttributeSummary[];
  taskCount: number;
  alternativesPerTask: number;
  kind: string;
  seed: number;
};

export type Alternative = {
  index: number;
  levels: Record<string, number>;
};

export type TaskPayload = {
  respondent: string;
  completed: false;
  taskId: number;
  taskNumber: number;
  taskCount: number;
  attributes: string[];
  alternatives: Alternative[];
};

export type CompletionPayload = {
  respondent: string;
  completed: true;
  taskCount: number;
  answered: number;
};

export type TaskResponse = TaskPayload | CompletionPayload;

export type ChoiceAck = {
  ok: boolean;
  answered: number;
  remaining: number;
};

/** The slice of the service the task flow needs; real calls go via SurveyApi. */
export interface SurveyGateway {
  nextTask(respondent: string): Promise<TaskResponse>;
  submitChoice(
    respondent: string,
    taskId: number,
    chosenIndex: number,
  ): Promise<ChoiceAck>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
  }
}

/** The server refused the submission because it is not the current task. */
export class OutOfOrderError extends ApiError {}

async function parseError(response: Response): Promise<never> {
  let detail = response.statusText;
  try {
    const body = (await response.json()) as { detail?: string };
    if (body.detail) detail = body.detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  if (response.status === 409) throw new OutOfOrderError(409, detail);
  throw new ApiError(response.status, detail);
}

export class SurveyApi implements SurveyGateway {
  constructor(readonly baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async design(): Promise<DesignSummary> {
    const response = await fetch(this.url("/design"));
    if (!response.ok) await parseError(response);
    return (await response.json()) as DesignSummary;
  }

  async nextTask(respondent: string): Promise<TaskResponse> {
    const query = new URLSearchParams({ respondent });
    const response = await fetch(this.url(`/task?${query}`));
    if (!response.ok) await parseError(response);
    return (await response.json()) as TaskResponse;
  }

  async submitChoice(
    respondent: string,
    taskId: number,
    chosenIndex: number,
  ): Promise<ChoiceAck> {
    const response = await fetch(this.url("/choice"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ respondent, taskId, chosenIndex }),
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as ChoiceAck;
  }
}
