// Pure HTML renderers.  Each takes server payloads and returns markup;
// raw server probabilities ride along in data attributes so displayed
// bars stay auditable against the service.

import {
  barWidth,
  describeQuestion,
  formatEigenvalue,
  formatJointValues,
  formatMagnitude,
  formatPercent,
  formatPhase,
} from "./format.js";
import type {
  Distribution,
  HistoryEvent,
  JointDistribution,
  OutcomeEntry,
  ScenarioSummary,
  StateSummary,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function barRow(label: string, probability: number): string {
  const width = barWidth(probability);
  return `
    <div class="bar-row" data-prob="${probability}">
      <span class="bar-label">${escapeHtml(label)}</span>
      <span class="bar-track"><span class="bar-fill" style="width:${width}%"></span></span>
      <span class="bar-value">${formatPercent(probability)}</span>
    </div>`;
}

export function renderDistribution(dist: Distribution): string {
  const rows = dist.outcomes
    .map((o) => barRow(formatEigenvalue(o.eigenvalue), o.probability))
    .join("");
  return `<div class="distribution">${rows}</div>`;
}

export function renderJointDistribution(dist: JointDistribution): string {
  const rows = dist.outcomes
    .map((o) => barRow(`(${formatJointValues(o.values)})`, o.probability))
    .join("");
  return `<div class="distribution joint">${rows}</div>`;
}

export interface QuestionBars {
  question: string;
  outcomes: OutcomeEntry[];
}

export function renderQuestionBoard(board: QuestionBars[]): string {
  const blocks = board.map((entry) => {
    const rows = entry.outcomes
      .map((o) => barRow(formatEigenvalue(o.eigenvalue), o.probability))
      .join("");
    return `
      <div class="question-block" data-question="${escapeHtml(entry.question)}">
        <button class="ask" data-question="${escapeHtml(entry.question)}">ask</button>
        <button class="whatif" data-question="${escapeHtml(entry.question)}">what if?</button>
        <span class="question-name">${escapeHtml(entry.question)}</span>
        ${rows}
      </div>`;
  });
  return blocks.join("");
}

export function renderScenarioPicker(scenarios: ScenarioSummary[]): string {
  const cards = scenarios.map(
    (s) => `
      <button class="scenario-card" data-scenario="${escapeHtml(s.name)}">
        <strong>${escapeHtml(s.name)}</strong>
        <span>${escapeHtml(s.algebra)}, ${s.options.length} named questions,
          ${s.d_r} answer directions</span>
      </button>`,
  );
  return cards.join("");
}

export function renderAmplitudes(state: StateSummary): string {
  const rows = state.magnitudes.map((magnitude, i) => {
    const phase = state.phases[i];
    return `
      <div class="amp-row" data-magnitude="${magnitude}" data-phase="${phase}">
        <span class="amp-index">${i}</span>
        <span class="bar-track"><span class="bar-fill amp" style="width:${barWidth(
          magnitude * magnitude,
        )}%"></span></span>
        <span class="amp-value">|${formatMagnitude(magnitude)}| ∠ ${formatPhase(
          phase,
        )}</span>
      </div>`;
  });
  return `<div class="amplitudes">${rows.join("")}</div>`;
}

export function renderHistory(events: HistoryEvent[]): string {
  if (events.length === 0) {
    return `<p class="history-empty">no events yet</p>`;
  }
  const rows = events.map((event) => {
    let text: string;
    if (event.kind === "ask") {
      text = `asked ${describeQuestion(event.question ?? "?")} → ${formatEigenvalue(
        event.eigenvalue ?? NaN,
      )}`;
    } else if (event.kind === "evolve") {
      text = `hinted via ${describeQuestion(event.question ?? "?")} (theta ${
        (event.theta ?? 0).toFixed(3)
      })`;
    } else {
      text = "reset to initial state";
    }
    return `<li class="history-event kind-${event.kind}" data-seq="${event.seq}">
      <span class="seq">#${event.seq}</span> ${escapeHtml(text)}</li>`;
  });
  return `<ol class="history">${rows.join("")}</ol>`;
}

export function renderOutcomeBanner(question: string, eigenvalue: number): string {
  return `<div class="outcome-banner">answer to ${escapeHtml(question)}:
    <strong>${formatEigenvalue(eigenvalue)}</strong></div>`;
}

export function renderError(code: string, message: string): string {
  return `<div class="error-toast" data-code="${escapeHtml(code)}">
    <strong>${escapeHtml(code)}</strong> ${escapeHtml(message)}</div>`;
}

/** Raw probabilities carried by rendered bars, for display audits. */
export function extractBarProbabilities(html: string): number[] {
  const out: number[] = [];
  const pattern = /data-prob="([^"]+)"/g;
  let match: RegExpExecArray | null;
  while ((match = pattern.exec(html)) !== null) {
    out.push(Number(match[1]));
  }
  return out;
}
