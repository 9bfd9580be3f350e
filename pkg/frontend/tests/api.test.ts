import { describe, expect, it } from "vitest";

import { ApiError, ChartApi } from "../src/api.js";

function fakeFetch(status: number, body: unknown): typeof fetch {
  return (async () =>
    new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    })) as typeof fetch;
}

describe("ChartApi", () => {
  it("returns the page document", async () => {
    const api = new ChartApi("http://x", fakeFetch(200, { format_version: 1, classes: [] }));
    const doc = await api.getPage(2);
    expect(doc.format_version).toBe(1);
  });

  it("surfaces the 422 rejection witness verbatim", async () => {
    const api = new ChartApi(
      "http://x",
      fakeFetch(422, { error: "degree mismatch: d_2(b4) must land in (2, 9)" }),
    );
    await expect(api.assertDifferential(2, "b4", "alpha1")).rejects.toThrowError(
      /degree mismatch/,
    );
    try {
      await api.assertDifferential(2, "b4", "alpha1");
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(422);
    }
  });

  it("404 on unknown pages becomes an ApiError", async () => {
    const api = new ChartApi("http://x", fakeFetch(404, { error: "unknown page 9" }));
    await expect(api.getPage(9)).rejects.toMatchObject({ status: 404 });
  });

  it("undo unwraps the returned page", async () => {
    const api = new ChartApi("http://x", fakeFetch(200, { page: { classes: [], metadata: {} } }));
    const page = await api.undo(3);
    expect(page.classes).toEqual([]);
  });
});
