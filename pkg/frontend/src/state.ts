/** View state: page, stem window, the two-click selection, history, overlay.
 *
 * The client never computes spectral-sequence mathematics: every page shown
 * comes verbatim from a server response, the overlay is the server's
 * propagation report, and the history stores only server-issued ids.
 */

import type { AssertedLine, ChartClass, ChartDocument, PropagationReport } from "./types.js";

export interface StemWindow {
  lo: number;
  hi: number;
}

export interface Selection {
  source: ChartClass | null;
  target: ChartClass | null;
}

export interface PropagationOverlay {
  killedSources: string[];
  killedTargets: string[];
  added: AssertedLine[];
  provenances: string[];
}

export interface HistoryEntry {
  id: number; // server-issued assertion id
  source: string;
  target: string;
}

export class ViewState {
  page: number;
  window: StemWindow;
  doc: ChartDocument | null = null;
  selection: Selection = { source: null, target: null };
  history: HistoryEntry[] = [];
  overlay: PropagationOverlay | null = null;
  pending = false; // a mutation is in flight: assertion input disabled

  constructor(page = 2, window: StemWindow = { lo: 0, hi: 80 }) {
    this.page = page;
    this.window = window;
  }

  /** The d_r bidegree rule: target at (stem - 1, s + r). */
  degreeCompatible(source: ChartClass, target: ChartClass): boolean {
    return target.x === source.x - 1 && target.y === source.y + this.page;
  }

  loadDocument(doc: ChartDocument): void {
    this.doc = doc;
    this.selection = { source: null, target: null };
  }

  /** Two-click gesture; returns the action the UI should take. */
  clickClass(
    cls: ChartClass,
  ): { kind: "selected-source" } | { kind: "ready"; source: ChartClass; target: ChartClass } | { kind: "rejected"; reason: string } {
    if (this.pending) {
      return { kind: "rejected", reason: "a request is in flight" };
    }
    if (!cls.alive) {
      return { kind: "rejected", reason: `${cls.name} is not alive on this page` };
    }
    if (this.selection.source === null) {
      this.selection = { source: cls, target: null };
      return { kind: "selected-source" };
    }
    const source = this.selection.source;
    if (cls.id === source.id) {
      this.selection = { source: null, target: null };
      return { kind: "rejected", reason: "selection cleared" };
    }
    if (!this.degreeCompatible(source, cls)) {
      return {
        kind: "rejected",
        reason:
          `d${this.page}(${source.name}) must land at ` +
          `(${source.x - 1}, ${source.y + this.page}), not (${cls.x}, ${cls.y})`,
      };
    }
    this.selection = { source, target: cls };
    return { kind: "ready", source, target: cls };
  }

  applyReport(report: PropagationReport, page: ChartDocument): void {
    this.doc = page;
    this.selection = { source: null, target: null };
    this.overlay = overlayFromReport(report);
    this.history.push({
      id: report.id,
      source: report.asserted[0]?.[0] ?? "",
      target: report.asserted[0]?.[1] ?? "",
    });
  }

  /** Pop the last assertion; returns its server id, or null when empty. */
  popHistory(): number | null {
    const entry = this.history.pop();
    return entry ? entry.id : null;
  }

  clearOverlay(): void {
    this.overlay = null;
  }
}

export function overlayFromReport(report: PropagationReport): PropagationOverlay {
  return {
    killedSources: report.asserted.map((a) => a[0]),
    killedTargets: report.asserted.map((a) => a[1]),
    added: report.asserted.slice(),
    provenances: report.asserted.map((a) => a[3]),
  };
}

/** Classes of one document restricted to a stem window, alive first. */
export function visibleClasses(doc: ChartDocument, window: StemWindow): ChartClass[] {
  return doc.classes
    .filter((c) => c.x >= window.lo && c.x <= window.hi)
    .sort((a, b) => a.x - b.x || a.y - b.y || (a.name < b.name ? -1 : 1));
}
