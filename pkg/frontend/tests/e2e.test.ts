// End-to-end against the real session service: spawn `entwine serve`,
// then drive the same client stack the browser uses and audit the
// rendered bars against the server's numbers.

import { spawn, ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ExplorerApi } from "../src/api.js";
import { extractBarProbabilities, renderDistribution, renderHistory } from "../src/render.js";
import type { QuestionBars } from "../src/render.js";
import { renderQuestionBoard } from "../src/render.js";

const PORT = 8733;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
const api = new ExplorerApi(BASE);

async function waitForService(timeoutMs = 30000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      await api.listScenarios();
      return;
    } catch {
      await new Promise((resolve) => setTimeout(resolve, 250));
    }
  }
  throw new Error("session service did not come up");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "entwine.cli", "serve", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  await waitForService();
}, 40000);

afterAll(() => {
  server?.kill();
});

describe("explorer end to end", () => {
  it("lists scenarios including the adult one", async () => {
    const { scenarios } = await api.listScenarios();
    const names = scenarios.map((s) => s.name);
    expect(names).toContain("adult-su3");
    expect(names).toContain("child-su2");
  });

  it("creates an adult session, peeks champagne, asks wine; bars equal server values and history matches", async () => {
    const session = await api.createSession("adult-su3", 424242);
    expect(session.questions).toContain("champagne");

    // what-if peek: displayed bars must be exactly the server numbers
    const champagne = await api.peek(session.id, "champagne");
    const preview = renderDistribution(champagne);
    expect(extractBarProbabilities(preview)).toEqual(
      champagne.outcomes.map((o) => o.probability),
    );
    const total = champagne.outcomes.reduce((acc, o) => acc + o.probability, 0);
    expect(total).toBeCloseTo(1, 10);

    // peeks never show up in the history
    let log = await api.history(session.id);
    expect(log.history).toHaveLength(0);

    // commit to wine; the pre-collapse bars equal a fresh peek's
    const wineBefore = await api.peek(session.id, "wine");
    const asked = await api.ask(session.id, "wine");
    expect(asked.distribution_before.outcomes).toEqual(wineBefore.outcomes);

    // board refresh after asking: every bar equals the live peek values
    const board: QuestionBars[] = [];
    for (const name of session.questions) {
      const dist = await api.peek(session.id, name);
      board.push({ question: name, outcomes: dist.outcomes });
    }
    const boardHtml = renderQuestionBoard(board);
    const expected = board.flatMap((b) => b.outcomes.map((o) => o.probability));
    expect(extractBarProbabilities(boardHtml)).toEqual(expected);

    // history view renders exactly the server log, in order
    log = await api.history(session.id);
    expect(log.history).toHaveLength(1);
    expect(log.history[0].kind).toBe("ask");
    expect(log.history[0].question).toBe("wine");
    expect(log.history[0].eigenvalue).toBe(asked.outcome.eigenvalue);
    const historyHtml = renderHistory(log.history);
    expect(historyHtml).toContain("asked wine");
    expect(historyHtml).toContain(`data-seq="0"`);
  });

  it("repeated asks stay consistent and viewable in the UI", async () => {
    const session = await api.createSession("child-su2", 7);
    const first = await api.ask(session.id, "cola");
    const second = await api.ask(session.id, "cola");
    expect(second.outcome.eigenvalue).toBe(first.outcome.eigenvalue);
    const again = await api.peek(session.id, "cola");
    const certain = again.outcomes.find(
      (o) => o.eigenvalue === first.outcome.eigenvalue,
    );
    expect(certain?.probability).toBeCloseTo(1, 12);

    const { history } = await api.history(session.id);
    expect(history.map((e) => e.kind)).toEqual(["ask", "ask"]);
    expect(history[0].eigenvalue).toBe(history[1].eigenvalue);
  });

  it("evolve shifts the preview and errors surface with codes", async () => {
    const session = await api.createSession("child-su2", 3);
    await api.ask(session.id, "cola"); // pin the state
    const before = await api.peek(session.id, "cola");
    await api.evolve(session.id, "apple-juice", Math.PI / 2);
    const after = await api.peek(session.id, "cola");
    expect(after.outcomes.map((o) => o.probability)).not.toEqual(
      before.outcomes.map((o) => o.probability),
    );
    for (const o of after.outcomes) {
      expect(o.probability).toBeCloseTo(0.5, 9);
    }

    await expect(api.ask(session.id, "mead")).rejects.toMatchObject({
      code: "UNKNOWN_NAME",
      status: 400,
    });
    await expect(
      api.jointPeek(session.id, ["cola", "apple-juice"]),
    ).rejects.toMatchObject({ code: "NON_COMMUTING", status: 409 });
    await expect(api.getSession("nope")).rejects.toMatchObject({
      code: "UNKNOWN_SESSION",
      status: 404,
    });
  });

  it("custom normalized questions round-trip", async () => {
    const session = await api.createSession("adult-su3", 10);
    const dist = await api.peek(session.id, [0.6, 0.8, 0, 0, 0, 0, 0, 0]);
    const total = dist.outcomes.reduce((acc, o) => acc + o.probability, 0);
    expect(total).toBeCloseTo(1, 10);
  });
});
