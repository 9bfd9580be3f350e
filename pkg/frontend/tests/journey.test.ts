/** The acceptance journey against the real server (AC-13).
 *
 * Loads the pipeline's E2 chart, asserts d2(b4 -> alpha2) through the API
 * like the UI does, and checks that the displayed kill-set equals the
 * batch run's Leibniz closure in stems <= 40; undo must restore the E2
 * document byte-for-byte.
 */

import { spawn, spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ChartApi } from "../src/api.js";
import { ViewState } from "../src/state.js";
import type { ChartDocument } from "../src/types.js";

let server: ReturnType<typeof spawn> | null = null;
let base = "";
let killset: Array<[string, string]> = [];
let chartDoc: ChartDocument;

beforeAll(async () => {
  const dir = mkdtempSync(join(tmpdir(), "adams3-journey-"));
  const gen = spawnSync(
    "python3",
    [join(__dirname, "fixtures", "make_fixture.py"), dir],
    { encoding: "utf-8" },
  );
  if (gen.status !== 0) {
    throw new Error(`fixture generation failed: ${gen.stderr}`);
  }
  killset = JSON.parse(readFileSync(join(dir, "killset.json"), "utf-8"));
  chartDoc = JSON.parse(readFileSync(join(dir, "chart.json"), "utf-8"));

  server = spawn("python3", ["-m", "adams3.chartio.cli", "serve",
    join(dir, "chart.json"), "--port", "0"]);
  base = await new Promise<string>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("server did not start")), 30000);
    server!.stdout!.on("data", (chunk: Buffer) => {
      const m = /http:\/\/[\d.]+:(\d+)/.exec(chunk.toString());
      if (m) {
        clearTimeout(timer);
        resolve(`http://127.0.0.1:${m[1]}`);
      }
    });
    server!.on("exit", (code) => reject(new Error(`server exited: ${code}`)));
  });
}, 120000);

afterAll(() => {
  server?.kill();
});

describe("AC-13 journey", () => {
  it("loads the E2 page from the server", async () => {
    const api = new ChartApi(base);
    const doc = await api.getPage(2);
    expect(doc).toEqual(chartDoc);
    const b4 = doc.classes.find((c) => c.name === "b4");
    expect(b4).toBeDefined();
    expect(b4!.x).toBe(8);
    expect(b4!.y).toBe(0);
  });

  it("asserting d2(b4 -> alpha2) shows the batch kill-set and undo restores E2", async () => {
    const api = new ChartApi(base);
    const before = await api.getPage(2);
    const state = new ViewState(2);
    state.loadDocument(before);

    const b4 = before.classes.find((c) => c.name === "b4")!;
    const alpha2 = before.classes.find((c) => c.name === "alpha2")!;
    expect(state.clickClass(b4)).toEqual({ kind: "selected-source" });
    const action = state.clickClass(alpha2);
    expect(action.kind).toBe("ready");

    const out = await api.assertDifferential(2, "b4", "alpha2");
    state.applyReport(out.report, out.page);

    const stems = new Map(before.classes.map((c) => [c.name, c.x]));
    const shown = out.report.asserted
      .filter(([src]) => (stems.get(src) ?? 99) <= 40)
      .map(([src, tgt]) => [src, tgt] as [string, string])
      .sort();
    expect(shown).toEqual(killset);
    // the overlay mirrors the report verbatim
    expect(state.overlay?.added.length).toBe(out.report.asserted.length);

    // no client drift: a re-fetched page equals the displayed state
    const refetched = await api.getPage(2);
    expect(refetched).toEqual(state.doc);

    // undo: DELETE the server-issued id, then re-fetch
    const id = state.popHistory();
    expect(id).toBe(out.report.id);
    await api.undo(id!);
    const after = await api.getPage(2);
    expect(after).toEqual(before);
  }, 60000);

  it("degree-incompatible selections are blocked before any request", async () => {
    const api = new ChartApi(base);
    const doc = await api.getPage(2);
    const state = new ViewState(2);
    state.loadDocument(doc);
    const b4 = doc.classes.find((c) => c.name === "b4")!;
    const beta = doc.classes.find((c) => c.name === "beta")!;
    state.clickClass(b4);
    expect(state.clickClass(beta).kind).toBe("rejected");
  });

  it("asserting onto a dead class surfaces the server's 422 witness", async () => {
    const api = new ChartApi(base);
    const out = await api.assertDifferential(2, "b4", "alpha2");
    await expect(api.assertDifferential(2, "alpha2*v2", "c6*beta").then(
      () => api.assertDifferential(2, "b4", "c6*beta"),
    )).rejects.toMatchObject({ status: 422 });
    await api.undo(out.report.id);
  }, 60000);

  it("export matches the server-side render byte-for-byte", async () => {
    const api = new ChartApi(base);
    const one = await api.exportSvg(2);
    const two = await api.exportSvg(2);
    expect(one).toBe(two);
    expect(one.startsWith("<svg")).toBe(true);
  });
});

describe("windowed export", () => {
  it("export respects the stem window", async () => {
    const api = new ChartApi(base);
    const full = await api.exportSvg(2);
    const windowed = await api.exportSvg(2, { lo: 0, hi: 10 });
    expect(windowed).not.toBe(full);
    expect((windowed.match(/<circle/g) ?? []).length).toBeLessThan(
      (full.match(/<circle/g) ?? []).length,
    );
  });
});
