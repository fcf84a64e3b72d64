// Small fixed palettes: a sequential ramp for value tiles, a diverging ramp
// for correlation tiles, and categorical entity colors matching the server
// renderer's defaults.

const VIRIDIS_STOPS: [number, number, number][] = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

export function valueColor(t: number): string {
  const x = Math.min(1, Math.max(0, t)) * (VIRIDIS_STOPS.length - 1);
  const i = Math.min(VIRIDIS_STOPS.length - 2, Math.floor(x));
  const f = x - i;
  const [r0, g0, b0] = VIRIDIS_STOPS[i];
  const [r1, g1, b1] = VIRIDIS_STOPS[i + 1];
  const r = Math.round(r0 + f * (r1 - r0));
  const g = Math.round(g0 + f * (g1 - g0));
  const b = Math.round(b0 + f * (b1 - b0));
  return `rgb(${r},${g},${b})`;
}

export const UNDEFINED_COLOR = "rgb(200,200,200)";

export const ENTITY_COLORS = [
  "#1f77b4",
  "#ff7f0e",
  "#2ca02c",
  "#d62728",
  "#9467bd",
  "#8c564b",
  "#e377c2",
  "#7f7f7f",
  "#bcbd22",
  "#17becf",
];

export function entityColor(index: number): string {
  return ENTITY_COLORS[index % ENTITY_COLORS.length];
}
