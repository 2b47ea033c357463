/** Workbench view-model store.
 *
 * Every mutation goes through a what-if edit: the store validates it, talks
 * to the service, and commits the response into the view model.  Edits are
 * tagged with a generation counter; a response is dropped when a newer edit
 * committed first (last-write-wins), so a burst of slider events can never
 * render out of order.
 */

import type { WorkbenchApi } from './api.js';
import type {
  ProblemDocument,
  RankPayload,
  RankRow,
  WhatIfEdit,
  WorkbenchViewModel,
} from './types.js';

export class EditRejected extends Error {}

const DEFAULT_P = 0.5;

function rankRows(payload: RankPayload): RankRow[] {
  return payload.order.map((alternative) => {
    const entry = payload.ranks[alternative];
    return {
      alternative,
      count: entry.value,
      of: entry.of,
      decimal: entry.value / entry.of,
      witness: entry.witness,
    };
  });
}

export class WorkbenchStore {
  state: WorkbenchViewModel | null = null;
  lastError: string | null = null;
  private generation = 0;
  private listeners: Array<() => void> = [];

  constructor(private readonly api: WorkbenchApi) {}

  subscribe(listener: () => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  private commit(generation: number, next: WorkbenchViewModel): boolean {
    if (generation !== this.generation) return false; // superseded
    this.state = next;
    this.lastError = null;
    this.emit();
    return true;
  }

  judgeWeights(): number[][] {
    if (!this.state) throw new EditRejected('no active session');
    return this.state.summary.judges.map((j) => [...j.weights]);
  }

  async loadSession(doc: ProblemDocument, p: number = DEFAULT_P): Promise<void> {
    const generation = ++this.generation;
    try {
      const { sessionId, summary } = await this.api.createSession(doc);
      const [rank, verdictPayload, cones] = await Promise.all([
        this.api.rank(sessionId),
        this.api.classify(sessionId, p),
        this.api.cones(sessionId),
      ]);
      this.commit(generation, {
        sessionId,
        summary,
        p,
        pStep: 1 / (2 * summary.m),
        rankRows: rankRows(rank),
        verdicts: verdictPayload.verdicts,
        cones,
        region: verdictPayload.region,
        geometryAvailable: summary.d === 2,
        generation,
      });
    } catch (err) {
      if (generation === this.generation) {
        this.lastError = err instanceof Error ? err.message : String(err);
        this.emit();
      }
      throw err;
    }
  }

  /** Validate and apply one edit; resolves once the view model reflects the
   * server response (or the edit was superseded by a newer one). */
  async applyEdit(edit: WhatIfEdit): Promise<void> {
    if (!this.state) throw new EditRejected('no active session');
    const validated = this.validate(edit);
    const generation = ++this.generation;
    try {
      if (validated.kind === 'set_p') {
        const payload = await this.api.classify(this.state.sessionId, validated.p);
        if (generation !== this.generation) return;
        this.commit(generation, {
          ...this.state,
          p: validated.p,
          verdicts: payload.verdicts,
          region: payload.region,
          generation,
        });
        return;
      }
      const panel = await this.api.updatePanel(this.state.sessionId, validated.judges);
      const verdictPayload = await this.api.classify(this.state.sessionId, this.state.p);
      if (generation !== this.generation) return;
      this.commit(generation, {
        ...this.state,
        summary: panel.summary,
        rankRows: rankRows(panel.ranks),
        cones: {
          importance_cone: panel.importance_cone,
          acceptance_cone: panel.acceptance_cone,
          bbox: panel.bbox,
          importance_wedge: panel.importance_wedge,
          acceptance_wedge: panel.acceptance_wedge,
        },
        verdicts: verdictPayload.verdicts,
        region: verdictPayload.region,
        generation,
      });
    } catch (err) {
      // A rejected edit leaves the prior view intact; surface the message.
      if (generation === this.generation) {
        this.lastError = err instanceof Error ? err.message : String(err);
        this.emit();
      }
      throw err;
    }
  }

  private validate(edit: WhatIfEdit): { kind: 'set_p'; p: number } | { kind: 'panel'; judges: number[][] } {
    if (!this.state) throw new EditRejected('no active session');
    switch (edit.kind) {
      case 'set_p': {
        if (!Number.isFinite(edit.p) || edit.p <= 0 || edit.p >= 1) {
          throw new EditRejected(`p must lie in (0, 1), got ${edit.p}`);
        }
        return { kind: 'set_p', p: edit.p };
      }
      case 'set_weight': {
        if (!Number.isFinite(edit.value) || edit.value < 0) {
          throw new EditRejected('judge weights must be nonnegative numbers');
        }
        const judges = this.judgeWeights();
        const row = judges[edit.judge];
        if (!row || edit.criterion < 0 || edit.criterion >= row.length) {
          throw new EditRejected('no such judge weight cell');
        }
        row[edit.criterion] = edit.value;
        if (row.every((w) => w === 0)) {
          throw new EditRejected('a judge needs at least one positive weight');
        }
        return { kind: 'panel', judges };
      }
      case 'add_judge': {
        if (
          edit.weights.length !== this.state.summary.d ||
          edit.weights.some((w) => !Number.isFinite(w) || w < 0) ||
          edit.weights.every((w) => w === 0)
        ) {
          throw new EditRejected('new judge weights must be nonnegative with a positive entry');
        }
        return { kind: 'panel', judges: [...this.judgeWeights(), [...edit.weights]] };
      }
      case 'remove_judge': {
        const judges = this.judgeWeights();
        if (edit.judge < 0 || edit.judge >= judges.length) {
          throw new EditRejected('no such judge');
        }
        if (judges.length <= 1) {
          throw new EditRejected('at least one judge must remain');
        }
        judges.splice(edit.judge, 1);
        return { kind: 'panel', judges };
      }
    }
  }
}

/** Trailing-edge debounce used for slider drags and weight typing. */
export function debounce<Args extends unknown[]>(
  fn: (...args: Args) => void,
  waitMs: number,
): (...args: Args) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: Args) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => fn(...args), waitMs);
  };
}
