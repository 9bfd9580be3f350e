/** DOM wiring: the only module that touches the document.
 *
 * Click a source dot, then a degree-compatible target dot to POST the
 * differential; the propagation overlay renders the server's report.
 * Wheel zooms, drag pans, "undo" replays the audit log server-side,
 * "export" downloads the server-rendered SVG.  One mutation in flight at
 * a time: inputs are disabled while a request is pending.
 */

import { ApiError, ChartApi } from "./api.js";
import { colorOf, legendEntries } from "./colors.js";
import { degreeGuide, dots, IDENTITY, layout, panBy, toTransform, zoomAt } from "./grid.js";
import type { PanZoom } from "./grid.js";
import { ViewState } from "./state.js";
import type { ChartClass } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export class ChartApp {
  private state: ViewState;
  private pz: PanZoom = IDENTITY;
  private api: ChartApi;

  constructor(
    private root: HTMLElement,
    base: string,
    page = 2,
  ) {
    this.api = new ChartApi(base);
    this.state = new ViewState(page);
  }

  async start(): Promise<void> {
    this.renderShell();
    try {
      this.state.loadDocument(await this.api.getPage(this.state.page));
      this.renderChart();
    } catch (err) {
      this.setStatus(err instanceof ApiError && err.status === 404
        ? `page ${this.state.page} does not exist on the server`
        : `failed to load: ${String(err)}`);
    }
  }

  private renderShell(): void {
    this.root.innerHTML = "";
    const bar = document.createElement("div");
    bar.className = "toolbar";
    const undoBtn = document.createElement("button");
    undoBtn.id = "undo";
    undoBtn.textContent = "undo";
    undoBtn.addEventListener("click", () => void this.undo());
    const exportBtn = document.createElement("button");
    exportBtn.id = "export";
    exportBtn.textContent = "export svg";
    exportBtn.addEventListener("click", () => void this.exportView());
    const status = document.createElement("span");
    status.id = "status";
    bar.append(undoBtn, exportBtn, status);
    const legend = document.createElement("div");
    legend.className = "legend";
    for (const [tag, color] of legendEntries()) {
      const item = document.createElement("span");
      item.innerHTML = `<i style="background:${color}"></i>${tag}`;
      legend.append(item);
    }
    const stage = document.createElement("div");
    stage.id = "stage";
    this.root.append(bar, legend, stage);
  }

  private setStatus(text: string): void {
    const el = this.root.querySelector("#status");
    if (el) el.textContent = text;
  }

  private setPending(pending: boolean): void {
    this.state.pending = pending;
    for (const id of ["undo", "export"]) {
      const btn = this.root.querySelector<HTMLButtonElement>(`#${id}`);
      if (btn) btn.disabled = pending;
    }
  }

  private renderChart(): void {
    const stage = this.root.querySelector("#stage");
    const doc = this.state.doc;
    if (!stage || !doc) return;
    stage.innerHTML = "";
    const grid = layout(doc, this.state.window);
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("width", String(grid.width));
    svg.setAttribute("height", String(grid.height));
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("transform", toTransform(this.pz));
    svg.append(group);

    const overlayKills = new Set([
      ...(this.state.overlay?.killedSources ?? []),
      ...(this.state.overlay?.killedTargets ?? []),
    ]);
    const positions = new Map<number, { px: number; py: number }>();
    const allDots = dots(doc, this.state.window, grid);
    for (const d of allDots) positions.set(d.cls.id, { px: d.px, py: d.py });
    for (const diff of doc.differentials) {
      const a = positions.get(diff.source);
      const b = positions.get(diff.target);
      if (!a || !b) continue;
      const line = document.createElementNS(SVG_NS, "line");
      line.setAttribute("x1", String(a.px));
      line.setAttribute("y1", String(a.py));
      line.setAttribute("x2", String(b.px));
      line.setAttribute("y2", String(b.py));
      line.setAttribute("stroke", "#d04040");
      group.append(line);
    }
    for (const d of allDots) {
      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", String(d.px));
      circle.setAttribute("cy", String(d.py));
      circle.setAttribute("r", String(d.r));
      circle.setAttribute("fill", colorOf(d.cls.pattern_tag, d.cls.alive));
      if (overlayKills.has(d.cls.name)) {
        circle.setAttribute("stroke", "#ff8800");
        circle.setAttribute("stroke-width", "2");
      }
      if (this.state.selection.source?.id === d.cls.id) {
        circle.setAttribute("stroke", "#0077ff");
        circle.setAttribute("stroke-width", "2");
      }
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = `${d.cls.name} (${d.cls.x}, ${d.cls.y})`;
      circle.append(title);
      circle.addEventListener("click", () => void this.onDotClick(d.cls));
      group.append(circle);
    }
    if (this.state.selection.source) {
      const guide = degreeGuide(this.state.selection.source, this.state.page, grid);
      const src = positions.get(this.state.selection.source.id);
      if (src) {
        const line = document.createElementNS(SVG_NS, "line");
        line.setAttribute("x1", String(src.px));
        line.setAttribute("y1", String(src.py));
        line.setAttribute("x2", String(guide.x));
        line.setAttribute("y2", String(guide.y));
        line.setAttribute("stroke", "#0077ff");
        line.setAttribute("stroke-dasharray", "4 3");
        group.append(line);
      }
    }
    svg.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      this.pz = zoomAt(this.pz, ev.offsetX, ev.offsetY, ev.deltaY < 0 ? 1.15 : 1 / 1.15);
      group.setAttribute("transform", toTransform(this.pz));
    });
    let dragging: { x: number; y: number } | null = null;
    svg.addEventListener("mousedown", (ev) => {
      dragging = { x: ev.clientX, y: ev.clientY };
    });
    svg.addEventListener("mousemove", (ev) => {
      if (!dragging) return;
      this.pz = panBy(this.pz, ev.clientX - dragging.x, ev.clientY - dragging.y);
      dragging = { x: ev.clientX, y: ev.clientY };
      group.setAttribute("transform", toTransform(this.pz));
    });
    svg.addEventListener("mouseup", () => {
      dragging = null;
    });
    stage.append(svg);

    if (this.state.overlay) {
      const panel = document.createElement("pre");
      panel.className = "overlay";
      panel.textContent = this.state.overlay.added
        .map(([s, t, c, rule]) => `d${this.state.page}(${s}) = ${c === 2 ? "-" : ""}${t}   [${rule}]`)
        .join("\n");
      stage.append(panel);
    }
  }

  private async onDotClick(cls: ChartClass): Promise<void> {
    const action = this.state.clickClass(cls);
    if (action.kind === "rejected") {
      this.setStatus(action.reason);
      this.renderChart();
      return;
    }
    if (action.kind === "selected-source") {
      this.setStatus(`source ${cls.name}: pick the d${this.state.page} target`);
      this.renderChart();
      return;
    }
    this.setPending(true);
    try {
      const out = await this.api.assertDifferential(
        this.state.page,
        action.source.name,
        action.target.name,
      );
      this.state.applyReport(out.report, out.page);
      this.setStatus(`asserted d${this.state.page}(${action.source.name}); ` +
        `${out.report.asserted.length} differentials total (propagation included)`);
    } catch (err) {
      this.setStatus(err instanceof ApiError ? `rejected: ${err.message}` : String(err));
      this.state.selection = { source: null, target: null };
    } finally {
      this.setPending(false);
      this.renderChart();
    }
  }

  private async undo(): Promise<void> {
    const id = this.state.popHistory();
    if (id === null) {
      this.setStatus("nothing to undo");
      return;
    }
    this.setPending(true);
    try {
      await this.api.undo(id);
      this.state.loadDocument(await this.api.getPage(this.state.page));
      this.state.clearOverlay();
      this.setStatus("rolled back");
    } catch (err) {
      this.setStatus(String(err));
    } finally {
      this.setPending(false);
      this.renderChart();
    }
  }

  private async exportView(): Promise<void> {
    this.setPending(true);
    try {
      const svg = await this.api.exportSvg(this.state.page, this.state.window);
      const blob = new Blob([svg], { type: "image/svg+xml" });
      const a = document.createElement("a");
      a.href = URL.createObjectURL(blob);
      a.download = `page${this.state.page}.svg`;
      a.click();
      URL.revokeObjectURL(a.href);
    } catch (err) {
      this.setStatus(String(err));
    } finally {
      this.setPending(false);
    }
  }
}

declare global {
  interface Window {
    chartApp?: ChartApp;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const params = new URLSearchParams(window.location.search);
  const base = params.get("server") ?? "http://127.0.0.1:8400";
  const page = Number(params.get("page") ?? "2");
  const app = new ChartApp(document.getElementById("app") as HTMLElement, base, page);
  window.chartApp = app;
  void app.start();
}
