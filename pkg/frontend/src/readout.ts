// Pure hover/readout helpers: nearest-cell lookups, winner comparison, and
// snapping to named placements. Comparison only; values come from the API.

import type { PlacementJson, TileGridJson } from "./types.js";

export function nearestIndex(coords: number[], x: number): number {
  let best = 0;
  let bestDist = Infinity;
  for (let i = 0; i < coords.length; i++) {
    const d = Math.abs(coords[i] - x);
    if (d < bestDist) {
      bestDist = d;
      best = i;
    }
  }
  return best;
}

export function valueAt(tile: TileGridJson, a: number, b: number): number | null {
  const i = nearestIndex(tile.a, a);
  const j = nearestIndex(tile.b, b);
  return tile.values[i][j];
}

export interface EntityValue {
  name: string;
  value: number | null;
}

/** Per-entity values at (a, b) plus the winners (ties share the crown). */
export function scoreboard(
  tiles: Map<string, TileGridJson>,
  a: number,
  b: number,
): { values: EntityValue[]; winners: string[] } {
  const values: EntityValue[] = [];
  for (const [name, tile] of tiles) {
    values.push({ name, value: valueAt(tile, a, b) });
  }
  let best = -Infinity;
  for (const { value } of values) {
    if (value !== null && value > best) best = value;
  }
  const winners = values.filter((v) => v.value !== null && v.value === best).map((v) => v.name);
  return { values, winners };
}

export const SNAP_RADIUS = 0.02;

/**
 * Label of the placements within the snap radius of (a, b); co-located
 * names are joined with " / " (closest location wins).
 */
export function snapLabel(
  placements: PlacementJson[],
  a: number,
  b: number,
  radius: number = SNAP_RADIUS,
): string | null {
  let bestDist = Infinity;
  let bestKey: string | null = null;
  const groups = new Map<string, string[]>();
  for (const p of placements) {
    if (p.kind !== "point") continue;
    const [pa, pb] = p.coords;
    const key = `${pa},${pb}`;
    groups.set(key, [...(groups.get(key) ?? []), p.name]);
    const d = Math.hypot(pa - a, pb - b);
    if (d <= radius && d < bestDist) {
      bestDist = d;
      bestKey = key;
    }
  }
  if (bestKey === null) return null;
  return (groups.get(bestKey) ?? []).join(" / ");
}
