import type {
  AskResponse,
  Distribution,
  EvolveResponse,
  HistoryEvent,
  JointDistribution,
  QuestionRef,
  ScenarioSummary,
  SessionView,
  StateSummary,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(url, init);
  } catch (err) {
    throw new ApiError("CONNECTION", String(err), 0);
  }
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const error = body?.error ?? { code: "INTERNAL", message: response.statusText };
    throw new ApiError(error.code, error.message, response.status);
  }
  return body as T;
}

function post(payload: unknown): RequestInit {
  return {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  };
}

export class ExplorerApi {
  constructor(private readonly base: string) {}

  listScenarios(): Promise<{ scenarios: ScenarioSummary[] }> {
    return request(`${this.base}/scenarios`);
  }

  createSession(scenario: string, seed?: number): Promise<SessionView> {
    return request(`${this.base}/sessions`, post({ scenario, seed }));
  }

  getSession(id: string): Promise<SessionView> {
    return request(`${this.base}/sessions/${id}`);
  }

  peek(id: string, question: QuestionRef): Promise<Distribution> {
    return request(`${this.base}/sessions/${id}/peek`, post({ question }));
  }

  jointPeek(id: string, questions: QuestionRef[]): Promise<JointDistribution> {
    return request(`${this.base}/sessions/${id}/peek`, post({ questions }));
  }

  ask(id: string, question: QuestionRef): Promise<AskResponse> {
    return request(`${this.base}/sessions/${id}/ask`, post({ question }));
  }

  evolve(id: string, question: QuestionRef, theta: number): Promise<EvolveResponse> {
    return request(`${this.base}/sessions/${id}/evolve`, post({ question, theta }));
  }

  reset(id: string): Promise<{ state_summary: StateSummary }> {
    return request(`${this.base}/sessions/${id}/reset`, post({}));
  }

  history(id: string): Promise<{ id: string; history: HistoryEvent[] }> {
    return request(`${this.base}/sessions/${id}/history`);
  }

  info(scenario: string): Promise<Record<string, unknown>> {
    return request(`${this.base}/algebra/${scenario}/info`);
  }
}

/** Serializes requests per session: the UI never has two mutations of
 * one session in flight. */
export class RequestQueue {
  private tail: Promise<unknown> = Promise.resolve();

  run<T>(task: () => Promise<T>): Promise<T> {
    const next = this.tail.then(task, task);
    this.tail = next.catch(() => undefined);
    return next;
  }
}
