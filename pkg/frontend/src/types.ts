/** Shared payload and view-model types for the workbench. */

export interface ProblemDocument {
  criteria: string[];
  alternatives: string[];
  judges: number[][];
  evaluations: number[][];
}

export interface NamedEntry {
  id: string;
  label: string;
}

export interface JudgeEntry {
  id: string;
  weights: number[];
}

export interface SessionSummary {
  criteria: NamedEntry[];
  alternatives: NamedEntry[];
  d: number;
  m: number;
  judges: JudgeEntry[];
  evaluations: number[][];
}

export interface RankEntry {
  value: number;
  of: number;
  witness: number[];
}

export interface RankPayload {
  ranks: Record<string, RankEntry>;
  cone: ConeDebug;
  order: string[];
}

export interface ConeDebug {
  generators: number[][];
  facet_normals: number[][];
}

export interface ConesPayload {
  importance_cone: ConeDebug;
  acceptance_cone: ConeDebug;
  bbox?: number[];
  importance_wedge?: number[][];
  acceptance_wedge?: number[][];
}

export type BadgeLabel = 'recommended' | 'non_advisable' | 'neutral' | 'indeterminate';

export interface VerdictEntry {
  alternative: string;
  in_lower: boolean;
  in_upper: boolean;
  label: BadgeLabel;
}

export interface RegionPayload {
  p: number;
  lower_polygon: number[][];
  upper_polygon: number[][];
  bbox: number[];
}

export interface ClassifyPayload {
  p: number;
  verdicts: VerdictEntry[];
  region: RegionPayload | null;
}

export interface PanelUpdatePayload extends ConesPayload {
  ranks: RankPayload;
  summary: SessionSummary;
}

/** Row of the rendered rank table; every number comes from the latest
 * server response. */
export interface RankRow {
  alternative: string;
  count: number;
  of: number;
  decimal: number;
  witness: number[];
}

export interface WorkbenchViewModel {
  sessionId: string;
  summary: SessionSummary;
  p: number;
  pStep: number;
  rankRows: RankRow[];
  verdicts: VerdictEntry[];
  cones: ConesPayload;
  region: RegionPayload | null;
  geometryAvailable: boolean;
  generation: number;
}

export type WhatIfEdit =
  | { kind: 'set_p'; p: number }
  | { kind: 'set_weight'; judge: number; criterion: number; value: number }
  | { kind: 'add_judge'; weights: number[] }
  | { kind: 'remove_judge'; judge: number };
