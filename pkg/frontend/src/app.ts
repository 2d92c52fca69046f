// Explorer wiring: pick a scenario, watch per-question answer bars,
// commit with ask, preview with what-if peeks, drop hints with the
// evolve slider.  All state transitions go through the service; the
// bars always show the most recent server-computed distributions.

import { ApiError, ExplorerApi, RequestQueue } from "./api.js";
import {
  describeQuestion,
  normalizeCoefficients,
  parseCoefficients,
} from "./format.js";
import {
  QuestionBars,
  renderAmplitudes,
  renderDistribution,
  renderError,
  renderHistory,
  renderOutcomeBanner,
  renderQuestionBoard,
  renderScenarioPicker,
} from "./render.js";
import type { QuestionRef, SessionView } from "./types.js";

interface Elements {
  picker: HTMLElement;
  board: HTMLElement;
  whatif: HTMLElement;
  state: HTMLElement;
  history: HTMLElement;
  banner: HTMLElement;
  errors: HTMLElement;
  evolveTheta: HTMLInputElement;
  evolveValue: HTMLElement;
  evolveQuestion: HTMLSelectElement;
  evolveApply: HTMLButtonElement;
  resetButton: HTMLButtonElement;
  composer: HTMLInputElement;
  composerPeek: HTMLButtonElement;
  composerAsk: HTMLButtonElement;
  composerEcho: HTMLElement;
}

export class ExplorerApp {
  private session: SessionView | null = null;
  private readonly queue = new RequestQueue();

  constructor(
    private readonly api: ExplorerApi,
    private readonly el: Elements,
  ) {}

  async boot(): Promise<void> {
    try {
      const { scenarios } = await this.api.listScenarios();
      this.el.picker.innerHTML = renderScenarioPicker(scenarios);
      this.el.picker.querySelectorAll<HTMLButtonElement>(".scenario-card").forEach(
        (button) =>
          button.addEventListener("click", () =>
            this.startSession(button.dataset.scenario ?? ""),
          ),
      );
    } catch (err) {
      this.showError(err, "service unreachable; is `entwine serve` running?");
    }
  }

  async startSession(scenario: string): Promise<void> {
    try {
      this.session = await this.api.createSession(scenario);
      this.el.banner.innerHTML = "";
      this.populateEvolveChoices();
      this.wireControls();
      await this.refresh();
    } catch (err) {
      this.showError(err);
    }
  }

  private populateEvolveChoices(): void {
    if (!this.session) return;
    this.el.evolveQuestion.innerHTML = this.session.questions
      .map((name) => `<option value="${name}">${name}</option>`)
      .join("");
  }

  private wireControls(): void {
    this.el.evolveTheta.addEventListener("input", () => {
      this.el.evolveValue.textContent = Number(this.el.evolveTheta.value).toFixed(2);
    });
    this.el.evolveApply.onclick = () => {
      void this.evolve(
        this.el.evolveQuestion.value,
        Number(this.el.evolveTheta.value),
      );
    };
    this.el.resetButton.onclick = () => void this.reset();
    this.el.composerPeek.onclick = () => void this.composerAction("peek");
    this.el.composerAsk.onclick = () => void this.composerAction("ask");
  }

  /** Re-peek every named question and redraw bars, state, history. */
  async refresh(): Promise<void> {
    const session = this.session;
    if (!session) return;
    await this.queue.run(async () => {
      const board: QuestionBars[] = [];
      for (const name of session.questions) {
        const dist = await this.api.peek(session.id, name);
        board.push({ question: name, outcomes: dist.outcomes });
      }
      this.el.board.innerHTML = renderQuestionBoard(board);
      this.el.board.querySelectorAll<HTMLButtonElement>("button.ask").forEach(
        (button) =>
          button.addEventListener("click", () =>
            this.ask(button.dataset.question ?? ""),
          ),
      );
      this.el.board.querySelectorAll<HTMLButtonElement>("button.whatif").forEach(
        (button) =>
          button.addEventListener("click", () =>
            this.whatIf(button.dataset.question ?? ""),
          ),
      );
      const view = await this.api.getSession(session.id);
      this.el.state.innerHTML = renderAmplitudes(view.state_summary);
      const { history } = await this.api.history(session.id);
      this.el.history.innerHTML = renderHistory(history);
    });
  }

  async ask(question: QuestionRef): Promise<void> {
    const session = this.session;
    if (!session) return;
    try {
      const response = await this.queue.run(() =>
        this.api.ask(session.id, question),
      );
      this.el.banner.innerHTML = renderOutcomeBanner(
        describeQuestion(question),
        response.outcome.eigenvalue,
      );
      await this.refresh();
    } catch (err) {
      this.showError(err);
    }
  }

  async whatIf(question: QuestionRef): Promise<void> {
    const session = this.session;
    if (!session) return;
    try {
      const dist = await this.api.peek(session.id, question);
      this.el.whatif.innerHTML =
        `<h3>what if: ${describeQuestion(question)}</h3>` +
        renderDistribution(dist);
    } catch (err) {
      this.showError(err);
    }
  }

  async evolve(question: QuestionRef, theta: number): Promise<void> {
    const session = this.session;
    if (!session) return;
    try {
      await this.queue.run(() => this.api.evolve(session.id, question, theta));
      await this.refresh();
    } catch (err) {
      this.showError(err);
    }
  }

  async reset(): Promise<void> {
    const session = this.session;
    if (!session) return;
    try {
      await this.queue.run(() => this.api.reset(session.id));
      this.el.banner.innerHTML = "";
      await this.refresh();
    } catch (err) {
      this.showError(err);
    }
  }

  /** Custom combinations: normalized client-side, echoed back, then sent. */
  async composerAction(action: "peek" | "ask"): Promise<void> {
    try {
      const raw = parseCoefficients(this.el.composer.value);
      const normalized = normalizeCoefficients(raw);
      this.el.composerEcho.textContent = `sending ${describeQuestion(normalized)}`;
      if (action === "peek") {
        await this.whatIf(normalized);
      } else {
        await this.ask(normalized);
      }
    } catch (err) {
      this.showError(err);
    }
  }

  private showError(err: unknown, fallback?: string): void {
    if (err instanceof ApiError) {
      this.el.errors.innerHTML = renderError(err.code, err.message);
    } else {
      this.el.errors.innerHTML = renderError(
        "CLIENT",
        fallback ?? String(err),
      );
    }
  }
}

export function mount(base: string, root: Document): ExplorerApp {
  const need = (id: string) => {
    const node = root.getElementById(id);
    if (!node) throw new Error(`missing element #${id}`);
    return node;
  };
  const app = new ExplorerApp(new ExplorerApi(base), {
    picker: need("picker"),
    board: need("board"),
    whatif: need("whatif"),
    state: need("state"),
    history: need("history"),
    banner: need("banner"),
    errors: need("errors"),
    evolveTheta: need("evolve-theta") as HTMLInputElement,
    evolveValue: need("evolve-value"),
    evolveQuestion: need("evolve-question") as HTMLSelectElement,
    evolveApply: need("evolve-apply") as HTMLButtonElement,
    resetButton: need("reset") as HTMLButtonElement,
    composer: need("composer") as HTMLInputElement,
    composerPeek: need("composer-peek") as HTMLButtonElement,
    composerAsk: need("composer-ask") as HTMLButtonElement,
    composerEcho: need("composer-echo"),
  });
  void app.boot();
  return app;
}

declare global {
  interface Window {
    explorer?: ExplorerApp;
  }
}

if (typeof document !== "undefined" && document.getElementById("picker")) {
  const base = (document.body.dataset.api ?? "http://127.0.0.1:8710").replace(
    /\/$/,
    "",
  );
  window.explorer = mount(base, document);
}
