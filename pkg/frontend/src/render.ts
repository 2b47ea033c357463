/** DOM rendering for the workbench.  Pure view code: every displayed number
 * comes from the latest committed server response; the only client-side
 * arithmetic is the world-to-pixel transform of the plot. */

import type { ConesPayload, RankRow, RegionPayload, VerdictEntry, WorkbenchViewModel } from './types.js';

const PLOT_SIZE = 520;
const PLOT_MARGIN = 40;

const BADGE_CLASS: Record<string, string> = {
  recommended: 'badge badge-recommended',
  non_advisable: 'badge badge-non-advisable',
  neutral: 'badge badge-neutral',
  indeterminate: 'badge badge-indeterminate',
};

function fractionLabel(row: RankRow): string {
  return `${row.count}/${row.of}`;
}

export function renderRankTable(rows: RankRow[]): string {
  const body = rows
    .map(
      (row) => `<tr>
        <td>${row.alternative}</td>
        <td>${fractionLabel(row)}</td>
        <td>${row.decimal.toFixed(4)}</td>
        <td>(${row.witness.map((w) => w.toFixed(4)).join(', ')})</td>
      </tr>`,
    )
    .join('\n');
  return `<table class="rank-table">
    <thead><tr><th>alternative</th><th>rank</th><th>value</th><th>witness</th></tr></thead>
    <tbody>${body}</tbody>
  </table>`;
}

export function renderBadges(verdicts: VerdictEntry[]): string {
  return verdicts
    .map(
      (v) =>
        `<span class="${BADGE_CLASS[v.label] ?? 'badge'}" data-alternative="${v.alternative}">` +
        `${v.alternative}: ${v.label.replace('_', ' ')}</span>`,
    )
    .join('\n');
}

export function renderJudgeEditor(judges: { id: string; weights: number[] }[]): string {
  const rows = judges
    .map((judge, j) => {
      const cells = judge.weights
        .map(
          (w, k) =>
            `<td><input type="number" min="0" step="0.1" value="${w}" ` +
            `data-judge="${j}" data-criterion="${k}" class="weight-cell"></td>`,
        )
        .join('');
      return `<tr><th>${judge.id}</th>${cells}<td>` +
        `<button class="remove-judge" data-judge="${j}">remove</button></td></tr>`;
    })
    .join('\n');
  return `<table class="judge-editor"><tbody>${rows}</tbody></table>`;
}

class Projector {
  private readonly sx: number;
  private readonly sy: number;

  constructor(private readonly bbox: number[]) {
    this.sx = (PLOT_SIZE - 2 * PLOT_MARGIN) / (bbox[2] - bbox[0]);
    this.sy = (PLOT_SIZE - 2 * PLOT_MARGIN) / (bbox[3] - bbox[1]);
  }

  x(v: number): number {
    return PLOT_MARGIN + (v - this.bbox[0]) * this.sx;
  }

  y(v: number): number {
    return PLOT_SIZE - PLOT_MARGIN - (v - this.bbox[1]) * this.sy;
  }

  polygon(points: number[][]): string {
    return points.map((pt) => `${this.x(pt[0]).toFixed(2)},${this.y(pt[1]).toFixed(2)}`).join(' ');
  }
}

export function renderPlot(
  summary: { alternatives: { id: string }[]; evaluations: number[][] },
  cones: ConesPayload,
  region: RegionPayload | null,
): string {
  const bbox = region?.bbox ?? cones.bbox;
  if (!bbox) return '<p class="plot-note">geometry available for 2 criteria only</p>';
  const proj = new Projector(bbox);
  const layers: string[] = [];
  if (cones.acceptance_wedge?.length) {
    layers.push(`<polygon points="${proj.polygon(cones.acceptance_wedge)}" class="wedge-acceptance"/>`);
  }
  if (cones.importance_wedge?.length) {
    layers.push(`<polygon points="${proj.polygon(cones.importance_wedge)}" class="wedge-importance"/>`);
  }
  if (region) {
    if (region.lower_polygon.length) {
      layers.push(`<polygon points="${proj.polygon(region.lower_polygon)}" class="region-lower"/>`);
    }
    if (region.upper_polygon.length) {
      layers.push(`<polygon points="${proj.polygon(region.upper_polygon)}" class="region-upper"/>`);
    }
  }
  summary.evaluations.forEach((col, i) => {
    const id = summary.alternatives[i]?.id ?? `#${i + 1}`;
    layers.push(
      `<circle cx="${proj.x(col[0]).toFixed(2)}" cy="${proj.y(col[1]).toFixed(2)}" r="4" class="sample-point"/>` +
        `<text x="${(proj.x(col[0]) + 7).toFixed(2)}" y="${(proj.y(col[1]) - 7).toFixed(2)}" class="sample-label">${id}</text>`,
    );
  });
  return `<svg viewBox="0 0 ${PLOT_SIZE} ${PLOT_SIZE}" width="${PLOT_SIZE}" height="${PLOT_SIZE}">
    <rect x="0" y="0" width="${PLOT_SIZE}" height="${PLOT_SIZE}" class="plot-background"/>
    ${layers.join('\n')}
  </svg>`;
}

export function renderView(root: HTMLElement, model: WorkbenchViewModel | null, error: string | null): void {
  const toast = root.querySelector<HTMLElement>('#error-toast');
  if (toast) {
    toast.textContent = error ?? '';
    toast.style.display = error ? 'block' : 'none';
  }
  if (!model) return;

  const pLabel = root.querySelector<HTMLElement>('#p-value');
  if (pLabel) pLabel.textContent = model.p.toFixed(2);
  const slider = root.querySelector<HTMLInputElement>('#p-slider');
  if (slider) {
    slider.min = String(model.pStep);
    slider.max = String(1 - model.pStep);
    slider.step = String(model.pStep);
    slider.value = String(model.p);
  }

  const table = root.querySelector<HTMLElement>('#rank-table');
  if (table) table.innerHTML = renderRankTable(model.rankRows);
  const badges = root.querySelector<HTMLElement>('#verdict-badges');
  if (badges) badges.innerHTML = renderBadges(model.verdicts);
  const editor = root.querySelector<HTMLElement>('#judge-editor');
  if (editor) editor.innerHTML = renderJudgeEditor(model.summary.judges);
  const plot = root.querySelector<HTMLElement>('#plot');
  if (plot) {
    plot.innerHTML = model.geometryAvailable
      ? renderPlot(model.summary, model.cones, model.region)
      : '<p class="plot-note">geometry available for 2 criteria only</p>';
  }
}
