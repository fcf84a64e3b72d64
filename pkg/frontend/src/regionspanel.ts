// Ranking-region map: one color per entity, regions filled per the current
// rank. Exposes the last region set so tests (and the hover readout) can
// reason about it without touching pixels.

import { entityColor } from "./colors.js";
import type { RegionSetJson } from "./types.js";

export class RegionsPanel {
  regions: RegionSetJson | null = null;

  constructor(
    readonly canvas: HTMLCanvasElement,
    readonly legend: HTMLElement | null = null,
  ) {}

  setRegions(rs: RegionSetJson | null): void {
    this.regions = rs;
    this.drawLegend();
    this.draw();
  }

  /** True when any displayed boundary is a deformed (curved) polyline. */
  hasCurvedBoundaries(): boolean {
    if (!this.regions) return false;
    const rank = String(this.regions.rank);
    return this.regions.entities.some((name) =>
      (this.regions!.regions[name][rank] ?? []).some((p) => !p.exact),
    );
  }

  private drawLegend(): void {
    if (!this.legend) return;
    this.legend.textContent = "";
    if (!this.regions) return;
    this.regions.entities.forEach((name, k) => {
      const item = this.legend!.ownerDocument.createElement("span");
      item.className = "legend-item";
      const swatch = this.legend!.ownerDocument.createElement("span");
      swatch.className = "legend-swatch";
      swatch.style.backgroundColor = entityColor(k);
      item.appendChild(swatch);
      item.appendChild(this.legend!.ownerDocument.createTextNode(name));
      this.legend!.appendChild(item);
    });
  }

  draw(): void {
    const ctx = this.canvas.getContext?.("2d");
    if (!ctx) return;
    const { width: w, height: h } = this.canvas;
    ctx.clearRect(0, 0, w, h);
    if (!this.regions) return;
    const rank = String(this.regions.rank);
    this.regions.entities.forEach((name, k) => {
      ctx.fillStyle = entityColor(k);
      ctx.globalAlpha = 0.6;
      for (const poly of this.regions!.regions[name][rank] ?? []) {
        if (poly.vertices.length < 3) continue;
        ctx.beginPath();
        poly.vertices.forEach(([a, b], i) => {
          const x = a * w;
          const y = (1 - b) * h;
          if (i === 0) ctx.moveTo(x, y);
          else ctx.lineTo(x, y);
        });
        ctx.closePath();
        ctx.fill();
      }
    });
    ctx.globalAlpha = 1;
  }
}
