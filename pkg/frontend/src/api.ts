// Thin typed client for the tilerank JSON API. All numbers shown in the UI
// come from these calls; the UI itself never evaluates a score.

import type {
  CurveJson,
  GridOverlayJson,
  PlacementsJson,
  RegionSetJson,
  RocPencilJson,
  RosterUploadJson,
  TileGridJson,
} from "./types.js";

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function getJson<T>(url: string, signal?: AbortSignal): Promise<T> {
  const resp = await fetch(url, { signal });
  const body = await resp.json();
  if (!resp.ok) {
    throw new ApiError(resp.status, (body as { error?: string }).error ?? resp.statusText);
  }
  return body as T;
}

export class Api {
  constructor(readonly base: string = "") {}

  private url(path: string, params: Record<string, string | number | undefined>): string {
    const q = Object.entries(params)
      .filter(([, v]) => v !== undefined)
      .map(([k, v]) => `${encodeURIComponent(k)}=${encodeURIComponent(String(v))}`)
      .join("&");
    return `${this.base}${path}${q ? "?" + q : ""}`;
  }

  async uploadRosterCsv(csv: string): Promise<RosterUploadJson> {
    const resp = await fetch(`${this.base}/roster`, {
      method: "POST",
      headers: { "Content-Type": "text/csv" },
      body: csv,
    });
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, (body as { error?: string }).error ?? resp.statusText);
    }
    return body as RosterUploadJson;
  }

  tile(
    token: string,
    entity: string,
    res: number,
    shiftTo?: number,
    signal?: AbortSignal,
  ): Promise<TileGridJson> {
    return getJson(this.url("/tile", { token, entity, res, shift_to: shiftTo }), signal);
  }

  regions(
    token: string,
    rank: number,
    shiftTo?: number,
    signal?: AbortSignal,
  ): Promise<RegionSetJson> {
    return getJson(this.url("/regions", { token, rank, shift_to: shiftTo }), signal);
  }

  placements(priorNeg?: number, signal?: AbortSignal): Promise<PlacementsJson> {
    return getJson(this.url("/placements", { priors: priorNeg }), signal);
  }

  curve(kind: string, param: number, signal?: AbortSignal): Promise<CurveJson> {
    return getJson(this.url("/curves", { kind, param }), signal);
  }

  gridOverlay(priorNeg: number, signal?: AbortSignal): Promise<GridOverlayJson> {
    return getJson(this.url("/grid", { prior_neg: priorNeg }), signal);
  }

  roc(
    a: number,
    b: number,
    priorNeg: number,
    token?: string,
    signal?: AbortSignal,
  ): Promise<RocPencilJson> {
    return getJson(this.url("/roc", { a, b, prior_neg: priorNeg, token }), signal);
  }
}
