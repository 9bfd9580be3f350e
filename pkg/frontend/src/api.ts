/** Typed client for the chartio HTTP+JSON API (the single source of truth). */

import type { AssertResponse, ChartDocument } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function parseError(resp: Response): Promise<never> {
  let detail = `${resp.status}`;
  try {
    const body = (await resp.json()) as { error?: string };
    if (body.error) detail = body.error;
  } catch {
    // non-JSON error body: keep the status text
  }
  throw new ApiError(resp.status, detail);
}

export class ChartApi {
  constructor(private base: string, private fetcher: typeof fetch = fetch) {}

  async getPage(r: number): Promise<ChartDocument> {
    const resp = await this.fetcher(`${this.base}/api/pages/${r}`);
    if (!resp.ok) await parseError(resp);
    return (await resp.json()) as ChartDocument;
  }

  async assertDifferential(
    page: number,
    source: string,
    target: string,
    coefficient = 1,
  ): Promise<AssertResponse> {
    const resp = await this.fetcher(`${this.base}/api/differentials`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ page, source, target, coefficient }),
    });
    if (!resp.ok) await parseError(resp);
    return (await resp.json()) as AssertResponse;
  }

  async undo(assertionId: number): Promise<ChartDocument> {
    const resp = await this.fetcher(`${this.base}/api/differentials/${assertionId}`, {
      method: "DELETE",
    });
    if (!resp.ok) await parseError(resp);
    const body = (await resp.json()) as { page: unknown };
    return body.page as ChartDocument;
  }

  async exportSvg(page: number, window?: { lo: number; hi: number }): Promise<string> {
    const stems = window ? `&stems=${window.lo}..${window.hi}` : "";
    const resp = await this.fetcher(`${this.base}/api/export/svg?page=${page}${stems}`);
    if (!resp.ok) await parseError(resp);
    return await resp.text();
  }

  async getHomotopy(): Promise<unknown> {
    const resp = await this.fetcher(`${this.base}/api/homotopy`);
    if (!resp.ok) await parseError(resp);
    return await resp.json();
  }
}
