/** Wire types mirroring the server's chart-document JSON schema. */

export interface ChartClass {
  id: number;
  name: string;
  x: number; // t - s
  y: number; // s
  pattern_tag: string | null;
  alive: boolean;
  extra: number[];
}

export interface ChartDifferential {
  page: number;
  source: number;
  target: number;
  coefficient: number;
}

export interface ChartExtension {
  multiplier: string;
  source: number;
  target: number;
}

export interface ChartDocument {
  format_version: number;
  metadata: Record<string, unknown> & { page?: number };
  classes: ChartClass[];
  differentials: ChartDifferential[];
  extensions: ChartExtension[];
  audit: string[];
}

/** One line of the server's propagation report: [source, target, coeff, rule]. */
export type AssertedLine = [string, string, number, string];

export interface PropagationReport {
  id: number;
  asserted: AssertedLine[];
  merged: AssertedLine[];
}

export interface AssertResponse {
  report: PropagationReport;
  page: ChartDocument;
}
