// Wire types mirrored from the session service.  Every number displayed
// in the UI comes from these payloads; the client never derives
// probabilities itself.

export type QuestionRef = string | number[];

export interface ScenarioSummary {
  name: string;
  algebra: string;
  d: number;
  d_r: number;
  options: string[];
  derived: string[];
  questions: string[];
}

export interface StateSummary {
  amplitudes: [number, number][];
  magnitudes: number[];
  phases: number[];
}

export interface SessionView {
  id: string;
  scenario: string;
  seed: number;
  questions: string[];
  state_summary: StateSummary;
  history_length: number;
}

export interface OutcomeEntry {
  eigenvalue: number;
  probability: number;
  post_state?: [number, number][];
}

export interface Distribution {
  question?: QuestionRef;
  outcomes: OutcomeEntry[];
}

export interface JointOutcomeEntry {
  values: number[];
  probability: number;
  post_state?: [number, number][];
}

export interface JointDistribution {
  questions: QuestionRef[];
  outcomes: JointOutcomeEntry[];
}

export interface AskOutcome {
  eigenvalue: number;
  outcome_index: number;
  seq: number;
  seed: number;
}

export interface AskResponse {
  outcome: AskOutcome;
  distribution_before: { outcomes: OutcomeEntry[] };
  state_summary: StateSummary;
}

export interface EvolveResponse {
  event: { seq: number; theta: number };
  state_summary: StateSummary;
}

export interface HistoryEvent {
  seq: number;
  kind: "ask" | "evolve" | "reset";
  question?: QuestionRef;
  eigenvalue?: number;
  outcome_index?: number;
  seed?: number;
  theta?: number;
  time?: string;
}
