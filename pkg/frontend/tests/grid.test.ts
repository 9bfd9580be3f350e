import { describe, expect, it } from "vitest";

import { degreeGuide, dots, IDENTITY, layout, panBy, screenToChart, toTransform, zoomAt } from "../src/grid.js";
import type { ChartClass, ChartDocument } from "../src/types.js";

function cls(id: number, name: string, x: number, y: number): ChartClass {
  return { id, name, x, y, pattern_tag: null, alive: true, extra: [] };
}

const doc: ChartDocument = {
  format_version: 1,
  metadata: {},
  classes: [cls(0, "a", 0, 0), cls(1, "b", 0, 0), cls(2, "c", 5, 3)],
  differentials: [],
  extensions: [],
  audit: [],
};

describe("layout and dots", () => {
  it("sizes the grid from the window", () => {
    const g = layout(doc, { lo: 0, hi: 10 });
    expect(g.width).toBeGreaterThan(10 * g.cell);
    expect(g.yMax).toBe(4);
  });

  it("spreads multiple dots within one cell deterministically", () => {
    const g = layout(doc, { lo: 0, hi: 10 });
    const ds = dots(doc, { lo: 0, hi: 10 }, g);
    const cellDots = ds.filter((d) => d.cls.x === 0);
    expect(cellDots).toHaveLength(2);
    expect(cellDots[0].px).not.toBe(cellDots[1].px);
    expect(cellDots[0].py).toBe(cellDots[1].py);
  });

  it("window excludes off-screen classes", () => {
    const g = layout(doc, { lo: 0, hi: 3 });
    expect(dots(doc, { lo: 0, hi: 3 }, g).map((d) => d.cls.name)).toEqual(["a", "b"]);
  });

  it("degree guide points one stem left, r rows up", () => {
    const g = layout(doc, { lo: 0, hi: 10 });
    const src = cls(9, "src", 5, 1);
    const guide2 = degreeGuide(src, 2, g);
    const guide3 = degreeGuide(src, 3, g);
    expect(guide2.x).toBe(guide3.x);
    expect(guide3.y).toBeLessThan(guide2.y); // longer differential sits higher
  });
});

describe("pan/zoom", () => {
  it("zoom keeps the anchor point fixed", () => {
    const z = zoomAt(IDENTITY, 100, 50, 2);
    const p = screenToChart(z, 100, 50);
    expect(p.x).toBeCloseTo(100);
    expect(p.y).toBeCloseTo(50);
    expect(z.scale).toBe(2);
  });

  it("zoom clamps to the allowed range", () => {
    let z = IDENTITY;
    for (let i = 0; i < 40; i++) z = zoomAt(z, 0, 0, 2);
    expect(z.scale).toBe(8);
    for (let i = 0; i < 80; i++) z = zoomAt(z, 0, 0, 0.5);
    expect(z.scale).toBe(0.25);
  });

  it("pan composes and renders as an SVG transform", () => {
    const z = panBy(panBy(IDENTITY, 5, 0), 0, -3);
    expect(toTransform(z)).toBe("translate(5 -3) scale(1)");
  });
});
