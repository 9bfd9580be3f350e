/** Pattern-tag colors matching the server's chart key. */

export const PATTERN_COLORS: Record<string, string> = {
  "p1:1": "#000000",
  "p2:b4": "#1f4fd8",
  "p3:v2": "#32cd32",
  "p2:v2*b4": "#8b008b",
  "p3:v2^2": "#fba0e3",
  "p1:v2^2*b4": "#008080",
  "p1:v2^3": "#2e8b57",
  "p2:v2^3*b4": "#800000",
  "p3:v2^4": "#9400d3",
  "p2:v2^4*b4": "#6699cc",
};

export const DEFAULT_COLOR = "#555555";
export const DEAD_COLOR = "#cccccc";

export function colorOf(tag: string | null, alive: boolean): string {
  if (!alive) return DEAD_COLOR;
  if (tag === null) return DEFAULT_COLOR;
  return PATTERN_COLORS[tag] ?? DEFAULT_COLOR;
}

export function legendEntries(): Array<[string, string]> {
  return Object.entries(PATTERN_COLORS);
}
