// JSON shapes produced by the tilerank HTTP API.

export interface TileGridJson {
  kind: string;
  n_a: number;
  n_b: number;
  a: number[];
  b: number[];
  values: (number | null)[][];
  meta: Record<string, unknown>;
}

export interface PolygonJson {
  vertices: [number, number][];
  exact: boolean;
  pts_per_edge: number | null;
}

export interface RegionSetJson {
  kind: string;
  priors: [number, number];
  entities: string[];
  regions: Record<string, Record<string, PolygonJson[]>>;
  rank: number;
}

export interface PlacementJson {
  name: string;
  kind: string;
  coords: number[];
  dual: boolean;
  prior_dependent: boolean;
}

export interface PlacementsJson {
  kind: string;
  prior_neg: number | null;
  placements: PlacementJson[];
}

export interface RosterEntityJson {
  name: string;
  tn: number;
  fp: number;
  fn: number;
  tp: number;
}

export interface RosterUploadJson {
  token: string;
  roster: {
    entities: RosterEntityJson[];
    priors: [number, number];
    meta: Record<string, unknown>;
  };
}

export interface HomLineJson {
  u: number;
  v: number;
  w: number;
  value: number;
}

export interface RocPencilJson {
  kind: string;
  coord: [number, number];
  priors: [number, number];
  vertex: { x: number; y: number; h: number };
  zone: string;
  lines: HomLineJson[];
  entities?: { name: string; fpr: number | null; tpr: number | null }[];
}

export interface CurveJson {
  kind: string;
  param: number;
  points: [number, number][];
}

export interface GridOverlayJson {
  kind: string;
  prior_neg: number;
  lines: { axis: "a" | "b"; source: number; position: number }[];
}
