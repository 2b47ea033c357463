/** Store logic with a scripted API: generation counter, stale-response
 * discarding, debounce, and client-side edit validation. */

import { describe, expect, it, vi } from 'vitest';
import { WorkbenchStore, debounce } from '../src/state.js';
import type { WorkbenchApi } from '../src/api.js';
import type {
  ClassifyPayload,
  ConesPayload,
  PanelUpdatePayload,
  ProblemDocument,
  RankPayload,
  SessionSummary,
} from '../src/types.js';

const DOC: ProblemDocument = {
  criteria: ['c1', 'c2'],
  alternatives: ['a1', 'a2'],
  judges: [
    [1, 0],
    [0, 1],
  ],
  evaluations: [
    [1, 2],
    [2, 1],
  ],
};

function summaryFor(doc: ProblemDocument): SessionSummary {
  return {
    criteria: doc.criteria.map((id) => ({ id, label: id })),
    alternatives: doc.alternatives.map((id) => ({ id, label: id })),
    d: doc.criteria.length,
    m: doc.alternatives.length,
    judges: doc.judges.map((weights, i) => ({ id: `j${i + 1}`, weights })),
    evaluations: doc.evaluations,
  };
}

const CONE: ConesPayload = {
  importance_cone: { generators: [[1, 0], [0, 1]], facet_normals: [[1, 0], [0, 1]] },
  acceptance_cone: { generators: [[1, 0], [0, 1]], facet_normals: [[1, 0], [0, 1]] },
  bbox: [0, 0, 3, 3],
  importance_wedge: [[0, 0], [3, 0], [3, 3], [0, 3]],
  acceptance_wedge: [[0, 0], [3, 0], [3, 3], [0, 3]],
};

function rankPayload(): RankPayload {
  return {
    ranks: {
      a1: { value: 1, of: 2, witness: [1, 0] },
      a2: { value: 2, of: 2, witness: [1, 0] },
    },
    cone: CONE.importance_cone,
    order: ['a2', 'a1'],
  };
}

function classifyPayload(p: number): ClassifyPayload {
  const topLabel = p >= 0.8 ? 'neutral' : 'recommended';
  return {
    p,
    verdicts: [
      { alternative: 'a1', in_lower: true, in_upper: true, label: 'neutral' },
      { alternative: 'a2', in_lower: true, in_upper: topLabel === 'neutral', label: topLabel },
    ],
    region: null,
  };
}

class ScriptedApi implements WorkbenchApi {
  classifyCalls: number[] = [];
  panelCalls: number[][][] = [];
  private gates = new Map<number, Promise<void>>();

  /** Stall the nth classify call (1-based) until the returned release fires. */
  delayClassifyCall(n: number): () => void {
    let release!: () => void;
    this.gates.set(
      n,
      new Promise<void>((resolve) => {
        release = resolve;
      }),
    );
    return release;
  }

  async createSession(doc: ProblemDocument) {
    return { sessionId: 's1', summary: summaryFor(doc) };
  }

  async rank(): Promise<RankPayload> {
    return rankPayload();
  }

  async updatePanel(_sessionId: string, judges: number[][]): Promise<PanelUpdatePayload> {
    this.panelCalls.push(judges);
    return { ...CONE, ranks: rankPayload(), summary: summaryFor({ ...DOC, judges }) };
  }

  async classify(_sessionId: string, p: number): Promise<ClassifyPayload> {
    this.classifyCalls.push(p);
    const gate = this.gates.get(this.classifyCalls.length);
    if (gate) await gate;
    return classifyPayload(p);
  }

  async cones(): Promise<ConesPayload> {
    return CONE;
  }
}

describe('workbench store', () => {
  it('commits the newest response and discards superseded ones', async () => {
    const api = new ScriptedApi();
    const store = new WorkbenchStore(api);
    await store.loadSession(DOC);

    const releaseSlow = api.delayClassifyCall(2); // first edit's classify stalls
    const slow = store.applyEdit({ kind: 'set_p', p: 0.3 });
    const fast = store.applyEdit({ kind: 'set_p', p: 0.8 });
    await fast;
    expect(store.state!.p).toBe(0.8);
    releaseSlow();
    await slow;
    // The stale 0.3 response must not overwrite the newer commit.
    expect(store.state!.p).toBe(0.8);
    expect(store.state!.verdicts.find((v) => v.alternative === 'a2')!.label).toBe('neutral');
  });

  it('validates weight edits before any server call', async () => {
    const api = new ScriptedApi();
    const store = new WorkbenchStore(api);
    await store.loadSession(DOC);
    await expect(
      store.applyEdit({ kind: 'set_weight', judge: 0, criterion: 1, value: -3 }),
    ).rejects.toThrow('nonnegative');
    await expect(
      store.applyEdit({ kind: 'set_weight', judge: 0, criterion: 0, value: 0 }),
    ).rejects.toThrow('positive weight');
    expect(api.panelCalls).toHaveLength(0);
  });

  it('requires at least one judge to remain', async () => {
    const api = new ScriptedApi();
    const store = new WorkbenchStore(api);
    await store.loadSession(DOC);
    await store.applyEdit({ kind: 'remove_judge', judge: 1 });
    await expect(store.applyEdit({ kind: 'remove_judge', judge: 0 })).rejects.toThrow(
      'at least one judge',
    );
    expect(api.panelCalls).toHaveLength(1);
  });

  it('rejects out-of-range slider values', async () => {
    const api = new ScriptedApi();
    const store = new WorkbenchStore(api);
    await store.loadSession(DOC);
    for (const p of [0, 1, -0.5, Number.NaN]) {
      await expect(store.applyEdit({ kind: 'set_p', p })).rejects.toThrow();
    }
    expect(api.classifyCalls).toHaveLength(1); // only the initial load
  });

  it('debounce collapses bursts to the trailing call', async () => {
    vi.useFakeTimers();
    const calls: number[] = [];
    const push = debounce((value: number) => calls.push(value), 150);
    push(1);
    push(2);
    push(3);
    vi.advanceTimersByTime(149);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(2);
    expect(calls).toEqual([3]);
    vi.useRealTimers();
  });
});
