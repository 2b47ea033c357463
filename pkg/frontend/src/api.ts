/** Typed client for the decision-service JSON API.  The workbench consumes
 * the service exclusively through these calls. */

import type {
  ClassifyPayload,
  ConesPayload,
  PanelUpdatePayload,
  ProblemDocument,
  RankPayload,
  SessionSummary,
} from './types.js';

export class ApiError extends Error {
  readonly status: number;
  readonly violations: string[];

  constructor(status: number, message: string, violations: string[] = []) {
    super(message);
    this.status = status;
    this.violations = violations;
  }
}

async function parseError(response: Response): Promise<never> {
  let message = `request failed with status ${response.status}`;
  let violations: string[] = [];
  try {
    const body = (await response.json()) as { error?: string; violations?: string[] };
    if (body.error) message = body.error;
    if (Array.isArray(body.violations)) violations = body.violations;
  } catch {
    // non-JSON error body; keep the generic message
  }
  throw new ApiError(response.status, message, violations);
}

export interface WorkbenchApi {
  createSession(doc: ProblemDocument): Promise<{ sessionId: string; summary: SessionSummary }>;
  rank(sessionId: string, judges?: string[]): Promise<RankPayload>;
  updatePanel(sessionId: string, judges: number[][]): Promise<PanelUpdatePayload>;
  classify(sessionId: string, p: number): Promise<ClassifyPayload>;
  cones(sessionId: string): Promise<ConesPayload>;
}

export class HttpApi implements WorkbenchApi {
  constructor(private readonly baseUrl: string) {}

  private async get<T>(path: string): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`);
    if (!response.ok) await parseError(response);
    return (await response.json()) as T;
  }

  async createSession(doc: ProblemDocument) {
    const response = await fetch(`${this.baseUrl}/sessions`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(doc),
    });
    if (!response.ok) await parseError(response);
    const body = (await response.json()) as { session_id: string; summary: SessionSummary };
    return { sessionId: body.session_id, summary: body.summary };
  }

  rank(sessionId: string, judges?: string[]) {
    const query = judges && judges.length ? `?judges=${encodeURIComponent(judges.join(','))}` : '';
    return this.get<RankPayload>(`/sessions/${sessionId}/rank${query}`);
  }

  async updatePanel(sessionId: string, judges: number[][]) {
    const response = await fetch(`${this.baseUrl}/sessions/${sessionId}/panel`, {
      method: 'PUT',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ judges }),
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as PanelUpdatePayload;
  }

  classify(sessionId: string, p: number) {
    return this.get<ClassifyPayload>(`/sessions/${sessionId}/classify?p=${p}`);
  }

  cones(sessionId: string) {
    return this.get<ConesPayload>(`/sessions/${sessionId}/cones`);
  }
}
