/** JSON payload shapes of the kgforge gateway. */

export interface SearchHit {
  iri: string;
  matchKind: "exact" | "prefix" | "withinEdit";
  score: number;
}

export interface SearchResponse {
  hits: SearchHit[];
  revision: number;
}

export interface EntityCandidateDto {
  id: string;
  span: [number, number];
  surface: string;
  suggestedClass: string;
  baseScore: number;
  posCount: number;
  negCount: number;
  confidence: number;
  linkedExternal: string | null;
}

export type TripleTailDto = { iri: string } | { literal: string; datatype: string };

export interface TripleCandidateDto {
  id: string;
  headIri: string;
  predicate: string | null;
  predicateRaw: string;
  tail: TripleTailDto;
  origin: "infobox" | "cooccurrence" | "openie";
  score: number;
  posCount: number;
  negCount: number;
  confidence: number;
  sourceTripleId: string | null;
  sentenceIdx: number | null;
}

export type Stage = "entity" | "triple";

/** Session state as the server reports it. Candidates arrive already sorted
 * by confidence (descending, ties by id); the client must preserve that
 * order and never recompute any confidence value. */
export interface SessionView {
  sessionId: string;
  docId: string;
  stage: Stage;
  text: string;
  alpha: number;
  feedbackMode: string;
  entityCommitted: boolean;
  tripleCommitted: boolean;
  candidates: Array<EntityCandidateDto | TripleCandidateDto>;
  revision: number;
}

export interface CommitView extends SessionView {
  addedTriples: number;
  warnings: string[];
}

export interface InfoboxRowDto {
  id: string;
  predicate: string;
  value: string;
}

export interface OpenIeRowDto {
  head: string;
  predicate: string;
  tail: string;
  sentenceIdx?: number;
}

export interface AdvanceBody {
  infoboxes?: Record<string, InfoboxRowDto[]>;
  openie?: OpenIeRowDto[];
}

export interface NewCandidateBody {
  id: string;
  span: [number, number];
  surface: string;
  suggestedClass: string;
  baseScore: number;
  linkedExternal?: string | null;
}

export type Verdict = "accept" | "reject" | "edit";

export interface EditPayload {
  surface?: string;
  suggestedClass?: string;
  linkedExternal?: string;
  predicate?: string;
}

export function isTripleCandidate(
  c: EntityCandidateDto | TripleCandidateDto,
): c is TripleCandidateDto {
  return "origin" in c;
}
