/** Chart geometry: dot layout, the pan/zoom transform, and the degree guide.
 *
 * Pure functions over plain data so the whole layer is unit-testable; the
 * DOM glue in main.ts only consumes the computed positions.
 */

import type { ChartClass, ChartDocument } from "./types.js";
import type { StemWindow } from "./state.js";

export interface GridLayout {
  cell: number;
  width: number;
  height: number;
  xMin: number;
  yMax: number;
}

export interface Dot {
  cls: ChartClass;
  px: number;
  py: number;
  r: number;
}

export interface PanZoom {
  scale: number;
  tx: number;
  ty: number;
}

export const IDENTITY: PanZoom = { scale: 1, tx: 0, ty: 0 };

export function layout(doc: ChartDocument, window: StemWindow, cell = 18): GridLayout {
  const inWindow = doc.classes.filter((c) => c.x >= window.lo && c.x <= window.hi);
  const yMax = Math.max(4, ...inWindow.map((c) => c.y));
  const margin = 2;
  return {
    cell,
    width: (window.hi - window.lo + 1 + margin) * cell,
    height: (yMax + 1 + margin) * cell,
    xMin: window.lo,
    yMax,
  };
}

/** Dots spread horizontally inside a cell, deterministic name order. */
export function dots(doc: ChartDocument, window: StemWindow, grid: GridLayout): Dot[] {
  const byCell = new Map<string, ChartClass[]>();
  for (const c of doc.classes) {
    if (c.x < window.lo || c.x > window.hi) continue;
    const key = `${c.x},${c.y}`;
    const bucket = byCell.get(key) ?? [];
    bucket.push(c);
    byCell.set(key, bucket);
  }
  const out: Dot[] = [];
  const radius = grid.cell * 0.16;
  for (const bucket of byCell.values()) {
    bucket.sort((a, b) => (a.name < b.name ? -1 : 1));
    bucket.forEach((c, i) => {
      const spread = (i - (bucket.length - 1) / 2) * (radius * 2 + 2);
      out.push({
        cls: c,
        px: (c.x - grid.xMin + 1) * grid.cell + spread,
        py: grid.height - (c.y + 1.5) * grid.cell,
        r: radius,
      });
    });
  }
  out.sort((a, b) => a.cls.id - b.cls.id);
  return out;
}

/** Where a d_r from the source must land: the visible guide line. */
export function degreeGuide(
  source: ChartClass,
  page: number,
  grid: GridLayout,
): { x: number; y: number } {
  return {
    x: (source.x - 1 - grid.xMin + 1) * grid.cell,
    y: grid.height - (source.y + page + 1.5) * grid.cell,
  };
}

export function zoomAt(
  pz: PanZoom,
  cx: number,
  cy: number,
  factor: number,
  minScale = 0.25,
  maxScale = 8,
): PanZoom {
  const scale = Math.min(maxScale, Math.max(minScale, pz.scale * factor));
  const k = scale / pz.scale;
  return {
    scale,
    tx: cx - k * (cx - pz.tx),
    ty: cy - k * (cy - pz.ty),
  };
}

export function panBy(pz: PanZoom, dx: number, dy: number): PanZoom {
  return { scale: pz.scale, tx: pz.tx + dx, ty: pz.ty + dy };
}

export function toTransform(pz: PanZoom): string {
  return `translate(${pz.tx} ${pz.ty}) scale(${pz.scale})`;
}

/** Invert the pan/zoom to map a screen point back to chart coordinates. */
export function screenToChart(pz: PanZoom, sx: number, sy: number): { x: number; y: number } {
  return { x: (sx - pz.tx) / pz.scale, y: (sy - pz.ty) / pz.scale };
}
