// Browser bootstrap: bind the DOM, wire events, keep everything else in
// Explorer so it stays testable without a real canvas.

import { Api } from "./api.js";
import { Explorer } from "./explorer.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export function bootstrap(): Explorer {
  const explorer = new Explorer(new Api(""), {
    tileCanvas: el<HTMLCanvasElement>("tile-canvas"),
    regionsCanvas: el<HTMLCanvasElement>("regions-canvas"),
    rocCanvas: el<HTMLCanvasElement>("roc-canvas"),
    legend: el("legend"),
    readout: el("readout"),
    snap: el("snap"),
    banner: el("banner"),
  });

  const fileInput = el<HTMLInputElement>("roster-file");
  fileInput.addEventListener("change", async () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    try {
      const doc = await explorer.loadRosterCsv(await file.text());
      slider.value = String(explorer.priorPos);
      sliderLabel.textContent = explorer.priorPos.toFixed(2);
      rankSelect.textContent = "";
      doc.roster.entities.forEach((_, k) => {
        const opt = document.createElement("option");
        opt.value = String(k + 1);
        opt.textContent = `rank ${k + 1}`;
        rankSelect.appendChild(opt);
      });
      entitySelect.textContent = "";
      for (const e of doc.roster.entities) {
        const opt = document.createElement("option");
        opt.value = e.name;
        opt.textContent = e.name;
        entitySelect.appendChild(opt);
      }
    } catch (err) {
      explorer.showBanner(`upload: ${(err as Error).message}`);
    }
  });

  const slider = el<HTMLInputElement>("priors-slider");
  const sliderLabel = el("priors-value");
  slider.addEventListener("input", () => {
    const value = Number(slider.value);
    sliderLabel.textContent = value.toFixed(2);
    explorer.setPriors(value);
  });
  slider.addEventListener("change", () => {
    void explorer.commitPriors();
  });

  const rankSelect = el<HTMLSelectElement>("rank-select");
  rankSelect.addEventListener("change", () => explorer.setRank(Number(rankSelect.value)));

  const entitySelect = el<HTMLSelectElement>("entity-select");
  entitySelect.addEventListener("change", () => explorer.setSelectedEntity(entitySelect.value));

  for (const key of ["tile", "regions", "roc"] as const) {
    const box = el<HTMLInputElement>(`toggle-${key}`);
    box.addEventListener("change", () => explorer.setToggles({ [key]: box.checked }));
  }

  const tileCanvas = el<HTMLCanvasElement>("tile-canvas");
  tileCanvas.addEventListener("mousemove", (ev) => {
    const rect = tileCanvas.getBoundingClientRect();
    const scaleX = tileCanvas.width / rect.width;
    const scaleY = tileCanvas.height / rect.height;
    const coord = explorer.tilePanel.coordAt(
      (ev.clientX - rect.left) * scaleX,
      (ev.clientY - rect.top) * scaleY,
    );
    if (coord) explorer.hover(coord.a, coord.b);
  });

  return explorer;
}

if (typeof document !== "undefined" && document.getElementById("tile-canvas")) {
  bootstrap();
}
