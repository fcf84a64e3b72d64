// ROC panel: roster points plus the iso-performance pencil of the hovered
// tile coordinate -- value-0 line (green), value-1 line (orange), and the
// pencil vertex (red dot, or an arrow glyph when the pencil is parallel).

import { entityColor } from "./colors.js";
import type { RocPencilJson } from "./types.js";

const MARGIN = 0.35; // ROC units drawn around the unit square

export class RocPanel {
  pencil: RocPencilJson | null = null;

  constructor(readonly canvas: HTMLCanvasElement) {}

  setPencil(p: RocPencilJson | null): void {
    this.pencil = p;
    this.draw();
  }

  get vertexAtInfinity(): boolean {
    return this.pencil !== null && this.pencil.vertex.h === 0;
  }

  private toPx(fpr: number, tpr: number, w: number, h: number): [number, number] {
    const span = 1 + 2 * MARGIN;
    return [((fpr + MARGIN) / span) * w, (1 - (tpr + MARGIN) / span) * h];
  }

  draw(): void {
    const ctx = this.canvas.getContext?.("2d");
    if (!ctx) return;
    const { width: w, height: h } = this.canvas;
    ctx.clearRect(0, 0, w, h);
    if (!this.pencil) return;

    ctx.strokeStyle = "#444";
    ctx.lineWidth = 1;
    const [x0, y0] = this.toPx(0, 0, w, h);
    const [x1, y1] = this.toPx(1, 1, w, h);
    ctx.strokeRect(Math.min(x0, x1), Math.min(y0, y1), Math.abs(x1 - x0), Math.abs(y1 - y0));

    const colors: Record<number, string> = { 0: "green", 1: "orange" };
    for (const line of this.pencil.lines) {
      ctx.strokeStyle = colors[line.value] ?? "steelblue";
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      // u*fpr + v*tpr + w = 0 clipped to the drawn window
      if (Math.abs(line.v) > 1e-12) {
        const f0 = -MARGIN;
        const f1 = 1 + MARGIN;
        const t0 = -(line.u * f0 + line.w) / line.v;
        const t1 = -(line.u * f1 + line.w) / line.v;
        ctx.moveTo(...this.toPx(f0, t0, w, h));
        ctx.lineTo(...this.toPx(f1, t1, w, h));
      } else {
        const f = -line.w / line.u;
        ctx.moveTo(...this.toPx(f, -MARGIN, w, h));
        ctx.lineTo(...this.toPx(f, 1 + MARGIN, w, h));
      }
      ctx.stroke();
    }

    (this.pencil.entities ?? []).forEach((e, k) => {
      if (e.fpr === null || e.tpr === null) return;
      ctx.fillStyle = entityColor(k);
      ctx.beginPath();
      ctx.arc(...this.toPx(e.fpr, e.tpr, w, h), 4, 0, 2 * Math.PI);
      ctx.fill();
      ctx.fillText(e.name, ...this.toPx(e.fpr + 0.02, e.tpr + 0.02, w, h));
    });

    const { x, y, h: hn } = this.pencil.vertex;
    ctx.fillStyle = "red";
    if (hn === 0) {
      // parallel pencil: point at infinity, drawn as a direction arrow
      ctx.font = "16px sans-serif";
      ctx.fillText("→ ∞", 8, 18);
    } else {
      const [vx, vy] = this.toPx(x / hn, y / hn, w, h);
      if (vx >= 0 && vx <= w && vy >= 0 && vy <= h) {
        ctx.beginPath();
        ctx.arc(vx, vy, 4, 0, 2 * Math.PI);
        ctx.fill();
      } else {
        ctx.font = "16px sans-serif";
        ctx.fillText(`→ vertex (${(x / hn).toFixed(2)}, ${(y / hn).toFixed(2)})`, 8, 18);
      }
    }
  }
}
