/** Typed fetch wrapper over the gateway. The client carries no session
 * state: every method returns the server payload untouched. */

import type {
  AdvanceBody,
  CommitView,
  EditPayload,
  NewCandidateBody,
  SearchResponse,
  SessionView,
  Verdict,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    message: string,
    public readonly revision: number | null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class GatewayClient {
  private readonly fetchFn: FetchLike;

  constructor(
    public readonly baseUrl: string = "",
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const res = await this.fetchFn(this.baseUrl + path, init);
    let payload: Record<string, unknown>;
    try {
      payload = (await res.json()) as Record<string, unknown>;
    } catch {
      throw new ApiError(res.status, `non-JSON response from ${path}`, null);
    }
    if (!res.ok) {
      const message =
        typeof payload.error === "string" ? payload.error : `HTTP ${res.status} on ${path}`;
      const revision = typeof payload.revision === "number" ? payload.revision : null;
      throw new ApiError(res.status, message, revision);
    }
    return payload as T;
  }

  search(q: string, k?: number): Promise<SearchResponse> {
    const params = new URLSearchParams({ q });
    if (k !== undefined) params.set("k", String(k));
    return this.request<SearchResponse>("GET", `/search?${params.toString()}`);
  }

  createSession(body: {
    docId: string;
    text: string;
    sessionId?: string;
    candidates?: unknown[];
  }): Promise<SessionView> {
    return this.request<SessionView>("POST", "/sessions", body);
  }

  candidates(sessionId: string): Promise<SessionView> {
    return this.request<SessionView>("GET", `/sessions/${encodeURIComponent(sessionId)}/candidates`);
  }

  label(
    sessionId: string,
    candidateId: string,
    verdict: Verdict,
    payload?: EditPayload,
  ): Promise<SessionView> {
    const body: Record<string, unknown> = { candidateId, verdict };
    if (payload !== undefined) body.payload = payload;
    return this.request<SessionView>(
      "POST",
      `/sessions/${encodeURIComponent(sessionId)}/label`,
      body,
    );
  }

  addCandidate(sessionId: string, candidate: NewCandidateBody): Promise<SessionView> {
    return this.request<SessionView>(
      "POST",
      `/sessions/${encodeURIComponent(sessionId)}/candidates`,
      candidate,
    );
  }

  advance(sessionId: string, body: AdvanceBody = {}): Promise<SessionView> {
    return this.request<SessionView>(
      "POST",
      `/sessions/${encodeURIComponent(sessionId)}/advance`,
      body,
    );
  }

  commit(sessionId: string): Promise<CommitView> {
    return this.request<CommitView>(
      "POST",
      `/sessions/${encodeURIComponent(sessionId)}/commit`,
    );
  }
}
