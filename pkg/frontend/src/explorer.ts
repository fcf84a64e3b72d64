// Application state and orchestration. The explorer owns the roster token,
// the priors slider, the hovered coordinate, the selected rank and panel
// toggles; every number it displays round-trips through the API.

import { Api } from "./api.js";
import { RegionsPanel } from "./regionspanel.js";
import { RocPanel } from "./rocpanel.js";
import { TilePanel } from "./tilepanel.js";
import { Debouncer, LatestOnly } from "./schedule.js";
import { scoreboard, snapLabel } from "./readout.js";
import type { PlacementsJson, RosterUploadJson, TileGridJson } from "./types.js";

export interface ExplorerElements {
  tileCanvas: HTMLCanvasElement;
  regionsCanvas: HTMLCanvasElement;
  rocCanvas: HTMLCanvasElement;
  legend: HTMLElement | null;
  readout: HTMLElement;
  snap: HTMLElement;
  banner: HTMLElement;
}

export interface PanelToggles {
  tile: boolean;
  regions: boolean;
  roc: boolean;
}

const TILE_RES = 61;
const DEBOUNCE_MS = 200; // at most 5 refreshes per second while dragging

export class Explorer {
  token: string | null = null;
  rosterNames: string[] = [];
  naturalPriorPos = 0.5;
  priorPos = 0.5;
  rank = 1;
  selectedEntity: string | null = null;
  hovered: { a: number; b: number } | null = null;
  toggles: PanelToggles = { tile: true, regions: true, roc: true };

  readonly tilePanel: TilePanel;
  readonly regionsPanel: RegionsPanel;
  readonly rocPanel: RocPanel;

  tiles = new Map<string, TileGridJson>();
  placements: PlacementsJson | null = null;

  private readonly sliderDebounce = new Debouncer(DEBOUNCE_MS);
  private readonly hoverDebounce = new Debouncer(DEBOUNCE_MS);
  private readonly regionsFetch = new LatestOnly();
  private readonly tilesFetch = new LatestOnly();
  private readonly rocFetch = new LatestOnly();
  private readonly errors = new Map<string, string>();

  /** Resolves whenever an async refresh settles; tests await this. */
  idle: Promise<unknown> = Promise.resolve();

  constructor(
    readonly api: Api,
    readonly els: ExplorerElements,
  ) {
    this.tilePanel = new TilePanel(els.tileCanvas);
    this.regionsPanel = new RegionsPanel(els.regionsCanvas, els.legend);
    this.rocPanel = new RocPanel(els.rocCanvas);
  }

  get priorNeg(): number {
    return 1 - this.priorPos;
  }

  /** shift_to parameter: omitted when the slider sits at the natural priors. */
  get shiftTo(): number | undefined {
    return Math.abs(this.priorPos - this.naturalPriorPos) < 1e-9 ? undefined : this.priorPos;
  }

  async loadRosterCsv(csv: string): Promise<RosterUploadJson> {
    const doc = await this.api.uploadRosterCsv(csv);
    this.token = doc.token;
    this.rosterNames = doc.roster.entities.map((e) => e.name);
    this.selectedEntity = this.rosterNames[0] ?? null;
    this.naturalPriorPos = doc.roster.priors[1];
    this.priorPos = this.naturalPriorPos;
    this.clearBanner();
    await this.refreshAll();
    return doc;
  }

  setPriors(priorPos: number): void {
    if (!(priorPos > 0 && priorPos < 1)) return;
    this.priorPos = priorPos;
    this.sliderDebounce.schedule(() => {
      this.idle = this.refreshAll();
    });
  }

  /** Force a pending slider refresh to run now (drag release / tests). */
  commitPriors(): Promise<unknown> {
    this.sliderDebounce.flush(() => {
      this.idle = this.refreshAll();
    });
    return this.idle;
  }

  setRank(rank: number): void {
    this.rank = rank;
    this.idle = this.refreshRegions();
  }

  setSelectedEntity(name: string): void {
    this.selectedEntity = name;
    this.tilePanel.setTile(this.tiles.get(name) ?? null);
  }

  setToggles(toggles: Partial<PanelToggles>): void {
    this.toggles = { ...this.toggles, ...toggles };
    this.idle = this.refreshAll();
  }

  hover(a: number, b: number): void {
    if (a < 0 || a > 1 || b < 0 || b > 1) return; // outside the square: no-op
    this.hovered = { a, b };
    this.updateReadout();
    if (this.toggles.roc) {
      this.hoverDebounce.schedule(() => {
        this.idle = this.refreshRoc();
      });
    }
  }

  /** Flush a pending hover-driven pencil refresh (tests). */
  commitHover(): Promise<unknown> {
    this.hoverDebounce.flush(() => {
      this.idle = this.refreshRoc();
    });
    return this.idle;
  }

  async refreshAll(): Promise<void> {
    const jobs: Promise<unknown>[] = [];
    if (this.toggles.regions) jobs.push(this.refreshRegions());
    if (this.toggles.tile) jobs.push(this.refreshTiles());
    if (this.toggles.roc && this.hovered) jobs.push(this.refreshRoc());
    await Promise.all(jobs);
  }

  private async refreshRegions(): Promise<void> {
    if (!this.token) return;
    try {
      const rs = await this.regionsFetch.run((signal) =>
        this.api.regions(this.token!, this.rank, this.shiftTo, signal),
      );
      if (rs) {
        this.regionsPanel.setRegions(rs);
        this.setError("regions", null);
      }
    } catch (err) {
      this.setError("regions", (err as Error).message); // stale panel kept
    }
  }

  private async refreshTiles(): Promise<void> {
    if (!this.token) return;
    try {
      const result = await this.tilesFetch.run(async (signal) => {
        const fetched = new Map<string, TileGridJson>();
        await Promise.all(
          this.rosterNames.map(async (name) => {
            fetched.set(name, await this.api.tile(this.token!, name, TILE_RES, this.shiftTo, signal));
          }),
        );
        const placements = await this.api.placements(this.priorNeg, signal);
        return { fetched, placements };
      });
      if (result) {
        this.tiles = result.fetched;
        this.placements = result.placements;
        if (this.selectedEntity) {
          this.tilePanel.setTile(this.tiles.get(this.selectedEntity) ?? null);
        }
        this.tilePanel.setOverlays({ placements: result.placements });
        this.loadDecorations();
        this.updateReadout();
        this.setError("tiles", null);
      }
    } catch (err) {
      this.setError("tiles", (err as Error).message);
    }
  }

  private loadDecorations(): void {
    this.api
      .curve("gamma_pi", this.priorNeg)
      .then((curve) => this.tilePanel.setOverlays({ curve }))
      .catch(() => this.tilePanel.setOverlays({ curve: null }));
    this.api
      .gridOverlay(this.priorNeg)
      .then((grid) => this.tilePanel.setOverlays({ grid }))
      .catch(() => this.tilePanel.setOverlays({ grid: null }));
  }

  private async refreshRoc(): Promise<void> {
    if (!this.hovered) return;
    try {
      const pencil = await this.rocFetch.run((signal) =>
        this.api.roc(
          this.hovered!.a,
          this.hovered!.b,
          this.priorNeg,
          this.token ?? undefined,
          signal,
        ),
      );
      if (pencil) {
        this.rocPanel.setPencil(pencil);
        this.setError("roc", null);
      }
    } catch (err) {
      this.setError("roc", (err as Error).message);
    }
  }

  /** Hover readout: per-entity values, the winner, and the snapped name. */
  updateReadout(): void {
    if (!this.hovered) return;
    const { a, b } = this.hovered;
    const parts: string[] = [`(a, b) = (${a.toFixed(3)}, ${b.toFixed(3)})`];
    if (this.tiles.size > 0) {
      const board = scoreboard(this.tiles, a, b);
      for (const { name, value } of board.values) {
        parts.push(`${name}: ${value === null ? "undef" : value.toFixed(4)}`);
      }
      if (board.winners.length > 0) {
        parts.push(`winner: ${board.winners.join(" / ")}`);
      }
    }
    this.els.readout.textContent = parts.join("  |  ");
    const label = this.placements ? snapLabel(this.placements.placements, a, b) : null;
    this.els.snap.textContent = label ?? "";
  }

  /** Record or clear one source's error; the banner shows the union. */
  setError(source: string, message: string | null): void {
    if (message === null) this.errors.delete(source);
    else this.errors.set(source, message);
    const text = [...this.errors.entries()].map(([s, m]) => `${s}: ${m}`).join("  |  ");
    this.els.banner.textContent = text;
    this.els.banner.classList.toggle("visible", text.length > 0);
  }

  showBanner(message: string): void {
    this.setError("app", message);
  }

  clearBanner(): void {
    this.errors.clear();
    this.els.banner.textContent = "";
    this.els.banner.classList.remove("visible");
  }
}
