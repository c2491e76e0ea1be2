/** Client-side session state.
 *
 * Two hard rules, enforced here rather than in the views:
 *
 * 1. The server owns every confidence value. The store keeps the latest
 *    server payload verbatim (`view`) and the views render it as-is — no
 *    arithmetic on P, no client-side re-ranking beyond the payload order.
 * 2. Verdicts reach the server in click order. All mutating calls are
 *    serialized through one promise chain per store, so rapid clicks cannot
 *    reorder on the wire.
 */

import { ApiError, GatewayClient } from "./api.js";
import type {
  AdvanceBody,
  CommitView,
  EditPayload,
  NewCandidateBody,
  SessionView,
  Verdict,
} from "./types.js";

export interface StoreState {
  view: SessionView | null;
  /** Sticky error banner; cleared by the next successful call. */
  banner: { status: number; message: string } | null;
  /** One-line note about the last completed operation. */
  status: string;
  /** Highest graph revision seen in any response, success or error. */
  revision: number;
}

type Listener = (state: StoreState) => void;

export class SessionStore {
  readonly state: StoreState = { view: null, banner: null, status: "", revision: -1 };
  private listeners: Listener[] = [];
  private chain: Promise<unknown> = Promise.resolve();

  constructor(
    private readonly client: GatewayClient,
    readonly sessionId: string,
  ) {}

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  /** Resolves once every operation enqueued so far has settled. */
  idle(): Promise<void> {
    return this.chain.then(
      () => undefined,
      () => undefined,
    );
  }

  private notify(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  private seeRevision(revision: number | null): void {
    if (revision !== null && revision > this.state.revision) {
      this.state.revision = revision;
    }
  }

  private adopt(view: SessionView, status: string): void {
    this.state.view = view;
    this.state.banner = null;
    this.state.status = status;
    this.seeRevision(view.revision);
    this.notify();
  }

  private reportError(err: unknown): void {
    if (err instanceof ApiError) {
      this.state.banner = { status: err.status, message: err.message };
      this.seeRevision(err.revision);
    } else {
      this.state.banner = { status: 0, message: String(err) };
    }
    this.notify();
  }

  /** Serialize an operation behind everything already enqueued. */
  private enqueue<T>(op: () => Promise<T>): Promise<T | null> {
    const next = this.chain.then(
      () => op(),
      () => op(),
    );
    this.chain = next.then(
      () => undefined,
      () => undefined,
    );
    return next.then(
      (value) => value,
      (err) => {
        this.reportError(err);
        return null;
      },
    );
  }

  refresh(): Promise<SessionView | null> {
    return this.enqueue(async () => {
      const view = await this.client.candidates(this.sessionId);
      this.adopt(view, "loaded");
      return view;
    });
  }

  label(candidateId: string, verdict: Verdict, payload?: EditPayload): Promise<SessionView | null> {
    return this.enqueue(async () => {
      const view = await this.client.label(this.sessionId, candidateId, verdict, payload);
      this.adopt(view, `${verdict} ${candidateId}`);
      return view;
    });
  }

  addCandidate(candidate: NewCandidateBody): Promise<SessionView | null> {
    return this.enqueue(async () => {
      const view = await this.client.addCandidate(this.sessionId, candidate);
      this.adopt(view, `added ${candidate.id}`);
      return view;
    });
  }

  advance(body: AdvanceBody = {}): Promise<SessionView | null> {
    return this.enqueue(async () => {
      const view = await this.client.advance(this.sessionId, body);
      this.adopt(view, "advanced to triple stage");
      return view;
    });
  }

  commitStage(): Promise<CommitView | null> {
    return this.enqueue(async () => {
      const view = await this.client.commit(this.sessionId);
      const warnings = view.warnings.length ? `; warnings: ${view.warnings.join(" | ")}` : "";
      this.adopt(view, `committed ${view.stage} stage: ${view.addedTriples} triples${warnings}`);
      return view;
    });
  }
}
