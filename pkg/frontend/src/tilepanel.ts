// Value-tile heatmap with gamma-curve / prior-grid / placement overlays and
// hover readout. Drawing degrades to a no-op without a 2D context (jsdom).

import { UNDEFINED_COLOR, valueColor } from "./colors.js";
import type { CurveJson, GridOverlayJson, PlacementsJson, TileGridJson } from "./types.js";

export interface TileOverlays {
  curve: CurveJson | null;
  grid: GridOverlayJson | null;
  placements: PlacementsJson | null;
}

export class TilePanel {
  tile: TileGridJson | null = null;
  overlays: TileOverlays = { curve: null, grid: null, placements: null };

  constructor(readonly canvas: HTMLCanvasElement) {}

  setTile(tile: TileGridJson | null): void {
    this.tile = tile;
    this.draw();
  }

  setOverlays(overlays: Partial<TileOverlays>): void {
    this.overlays = { ...this.overlays, ...overlays };
    this.draw();
  }

  /** Canvas pixel position -> tile coordinate (b grows upward). */
  coordAt(px: number, py: number): { a: number; b: number } | null {
    const { width, height } = this.canvas;
    if (width === 0 || height === 0) return null;
    const a = px / width;
    const b = 1 - py / height;
    if (a < 0 || a > 1 || b < 0 || b > 1) return null;
    return { a, b };
  }

  draw(): void {
    const ctx = this.canvas.getContext?.("2d");
    if (!ctx) return;
    const { width: w, height: h } = this.canvas;
    ctx.clearRect(0, 0, w, h);
    if (!this.tile) return;
    const { a, b, values } = this.tile;
    const isTau = this.tile.kind === "kendall_tau";
    for (let i = 0; i < a.length; i++) {
      const x0 = (i === 0 ? 0 : (a[i - 1] + a[i]) / 2) * w;
      const x1 = (i === a.length - 1 ? 1 : (a[i] + a[i + 1]) / 2) * w;
      for (let j = 0; j < b.length; j++) {
        const yTop = (j === b.length - 1 ? 1 : (b[j] + b[j + 1]) / 2);
        const yBot = (j === 0 ? 0 : (b[j - 1] + b[j]) / 2);
        const v = values[i][j];
        ctx.fillStyle =
          v === null ? UNDEFINED_COLOR : valueColor(isTau ? (v + 1) / 2 : v);
        ctx.fillRect(x0, (1 - yTop) * h, x1 - x0 + 0.5, (yTop - yBot) * h + 0.5);
      }
    }
    this.drawOverlays(ctx, w, h);
  }

  private drawOverlays(ctx: CanvasRenderingContext2D, w: number, h: number): void {
    const { curve, grid, placements } = this.overlays;
    if (grid) {
      ctx.strokeStyle = "rgba(255,255,255,0.55)";
      ctx.lineWidth = 1;
      for (const line of grid.lines) {
        ctx.beginPath();
        if (line.axis === "a") {
          ctx.moveTo(line.position * w, 0);
          ctx.lineTo(line.position * w, h);
        } else {
          ctx.moveTo(0, (1 - line.position) * h);
          ctx.lineTo(w, (1 - line.position) * h);
        }
        ctx.stroke();
      }
    }
    if (curve) {
      ctx.strokeStyle = "deeppink";
      ctx.lineWidth = 2;
      ctx.beginPath();
      curve.points.forEach(([ca, cb], k) => {
        const x = ca * w;
        const y = (1 - cb) * h;
        if (k === 0) ctx.moveTo(x, y);
        else ctx.lineTo(x, y);
      });
      ctx.stroke();
    }
    if (placements) {
      ctx.fillStyle = "black";
      for (const p of placements.placements) {
        if (p.kind !== "point") continue;
        const [pa, pb] = p.coords;
        ctx.beginPath();
        ctx.arc(pa * w, (1 - pb) * h, 3, 0, 2 * Math.PI);
        ctx.fill();
      }
    }
  }
}
