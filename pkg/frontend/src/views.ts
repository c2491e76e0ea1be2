/** DOM rendering for the two annotation stages.
 *
 * Confidence values are printed with `String(value)` straight from the last
 * server payload and also mirrored into `data-confidence`, so tests (and
 * anyone debugging) can check byte-for-byte agreement with the gateway.
 * Candidate order is the payload order — the server sorts by confidence. */

import type { GatewayClient } from "./api.js";
import { mountPicker } from "./picker.js";
import type { SessionStore, StoreState } from "./store.js";
import type { EntityCandidateDto, TripleCandidateDto } from "./types.js";
import { isTripleCandidate } from "./types.js";

export interface ViewContext {
  doc: Document;
  client: GatewayClient;
  store: SessionStore;
  /** Called after a successful stage advance, to switch routes. */
  onAdvanced: () => void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderBanner(ctx: ViewContext, state: StoreState): HTMLElement {
  const banner = el(ctx.doc, "div", "banner");
  banner.id = "banner";
  if (state.banner) {
    banner.classList.add("banner-error");
    banner.dataset.status = String(state.banner.status);
    banner.textContent = `[${state.banner.status || "network"}] ${state.banner.message}`;
  } else {
    banner.hidden = true;
  }
  return banner;
}

function renderHeader(ctx: ViewContext, state: StoreState, stageLabel: string): HTMLElement {
  const head = el(ctx.doc, "header", "session-header");
  const view = state.view;
  const title = el(ctx.doc, "h2", undefined, `Session ${ctx.store.sessionId} — ${stageLabel}`);
  const meta = el(ctx.doc, "p", "session-meta");
  if (view) {
    meta.textContent =
      `doc ${view.docId} · stage ${view.stage} · α=${view.alpha} (${view.feedbackMode})` +
      ` · entity committed: ${view.entityCommitted} · triple committed: ${view.tripleCommitted}` +
      ` · graph revision ${state.revision}`;
  } else {
    meta.textContent = "loading…";
  }
  const status = el(ctx.doc, "p", "status-line", state.status);
  status.id = "status";
  head.append(title, meta, status);
  return head;
}

function verdictButtons(ctx: ViewContext, candidateId: string): HTMLElement {
  const box = el(ctx.doc, "span", "verdicts");
  const accept = el(ctx.doc, "button", "btn-accept", "accept");
  accept.type = "button";
  accept.addEventListener("click", () => void ctx.store.label(candidateId, "accept"));
  const reject = el(ctx.doc, "button", "btn-reject", "reject");
  reject.type = "button";
  reject.addEventListener("click", () => void ctx.store.label(candidateId, "reject"));
  box.append(accept, reject);
  return box;
}

function confidenceCell(ctx: ViewContext, value: number): HTMLElement {
  const cell = el(ctx.doc, "span", "confidence", `P=${String(value)}`);
  return cell;
}

function entityRow(ctx: ViewContext, c: EntityCandidateDto): HTMLElement {
  const li = el(ctx.doc, "li", "candidate entity-candidate");
  li.dataset.id = c.id;
  li.dataset.confidence = String(c.confidence);

  const main = el(ctx.doc, "div", "candidate-main");
  main.append(
    el(ctx.doc, "span", "surface", c.surface),
    el(ctx.doc, "span", "span-range", `[${c.span[0]}, ${c.span[1]})`),
    confidenceCell(ctx, c.confidence),
    el(ctx.doc, "span", "counts", `+${c.posCount} / −${c.negCount}`),
    verdictButtons(ctx, c.id),
  );

  const detail = el(ctx.doc, "div", "candidate-detail");
  const cls = el(ctx.doc, "span", "suggested-class", `class: ${c.suggestedClass || "—"}`);
  const ext = el(
    ctx.doc,
    "span",
    "linked-external",
    `external: ${c.linkedExternal ?? "—"}`,
  );

  const pickClass = el(ctx.doc, "button", "btn-pick-class", "set class…");
  pickClass.type = "button";
  pickClass.addEventListener("click", () => {
    mountPicker(ctx.doc, detail, ctx.client, {
      placeholder: "search classes",
      onSelect: (iri) => void ctx.store.label(c.id, "edit", { suggestedClass: iri }),
    });
  });

  const pickExternal = el(ctx.doc, "button", "btn-pick-external", "set external…");
  pickExternal.type = "button";
  pickExternal.addEventListener("click", () => {
    mountPicker(ctx.doc, detail, ctx.client, {
      placeholder: "search external equivalents",
      onSelect: (iri) => void ctx.store.label(c.id, "edit", { linkedExternal: iri }),
    });
  });

  detail.append(cls, ext, pickClass, pickExternal);
  li.append(main, detail);
  return li;
}

function tailText(c: TripleCandidateDto): string {
  return "iri" in c.tail ? c.tail.iri : `"${c.tail.literal}" (${c.tail.datatype})`;
}

function tripleRow(ctx: ViewContext, c: TripleCandidateDto): HTMLElement {
  const li = el(ctx.doc, "li", "candidate triple-candidate");
  li.dataset.id = c.id;
  li.dataset.confidence = String(c.confidence);

  const badge = el(ctx.doc, "span", `badge badge-${c.origin}`, c.origin);
  badge.dataset.origin = c.origin;

  const main = el(ctx.doc, "div", "candidate-main");
  main.append(
    badge,
    el(ctx.doc, "span", "head", c.headIri),
    el(
      ctx.doc,
      "span",
      "predicate",
      c.predicate ?? `raw: ${c.predicateRaw || "(none)"}`,
    ),
    el(ctx.doc, "span", "tail", tailText(c)),
    confidenceCell(ctx, c.confidence),
    el(ctx.doc, "span", "counts", `+${c.posCount} / −${c.negCount}`),
    verdictButtons(ctx, c.id),
  );

  const detail = el(ctx.doc, "div", "candidate-detail");
  const editPredicate = el(ctx.doc, "button", "btn-edit-predicate", "set predicate…");
  editPredicate.type = "button";
  editPredicate.addEventListener("click", () => {
    const form = el(ctx.doc, "form", "predicate-form");
    const input = el(ctx.doc, "input", "predicate-input");
    input.type = "text";
    input.placeholder = "property iri";
    input.value = c.predicate ?? "";
    const save = el(ctx.doc, "button", "btn-save-predicate", "save");
    save.type = "submit";
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      form.remove();
      void ctx.store.label(c.id, "edit", { predicate: input.value });
    });
    form.append(input, save);
    detail.append(form);
    input.focus();
  });
  detail.append(editPredicate);

  li.append(main, detail);
  return li;
}

function addCandidateForm(ctx: ViewContext): HTMLElement {
  const form = el(ctx.doc, "form", "add-candidate");
  form.id = "add-candidate";
  const legend = el(ctx.doc, "p", "form-title", "Add a missed entity (base score 0)");

  const surface = el(ctx.doc, "input", "add-surface");
  surface.type = "text";
  surface.name = "surface";
  surface.placeholder = "surface text";
  const start = el(ctx.doc, "input", "add-start");
  start.type = "number";
  start.name = "start";
  start.placeholder = "start";
  const end = el(ctx.doc, "input", "add-end");
  end.type = "number";
  end.name = "end";
  end.placeholder = "end";
  const cls = el(ctx.doc, "input", "add-class");
  cls.type = "text";
  cls.name = "suggestedClass";
  cls.placeholder = "class iri (optional)";
  const submit = el(ctx.doc, "button", "btn-add", "add candidate");
  submit.type = "submit";

  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    const s = Number(start.value);
    const e = Number(end.value);
    if (!surface.value || Number.isNaN(s) || Number.isNaN(e) || e <= s) return;
    void ctx.store.addCandidate({
      id: `manual:${s}:${e}`,
      span: [s, e],
      surface: surface.value,
      suggestedClass: cls.value,
      baseScore: 0,
    });
    form.reset();
  });

  form.append(legend, surface, start, end, cls, submit);
  return form;
}

function sourceText(ctx: ViewContext, state: StoreState): HTMLElement {
  const box = el(ctx.doc, "blockquote", "source-text", state.view?.text ?? "");
  return box;
}

export function renderEntityRoute(ctx: ViewContext, state: StoreState): HTMLElement {
  const root = el(ctx.doc, "section", "route route-entities");
  root.append(renderHeader(ctx, state, "entity stage"), renderBanner(ctx, state));
  root.append(sourceText(ctx, state));

  const list = el(ctx.doc, "ul", "candidate-list");
  list.id = "entity-candidates";
  const view = state.view;
  if (view && view.stage === "entity") {
    for (const c of view.candidates) {
      if (!isTripleCandidate(c)) list.append(entityRow(ctx, c));
    }
  } else if (view) {
    list.append(el(ctx.doc, "li", "notice", "session already in the triple stage"));
  }
  root.append(list, addCandidateForm(ctx));

  const actions = el(ctx.doc, "div", "actions");
  const commit = el(ctx.doc, "button", "btn-commit", "commit entity stage");
  commit.id = "commit-btn";
  commit.type = "button";
  commit.addEventListener("click", () => void ctx.store.commitStage());
  const advance = el(ctx.doc, "button", "btn-advance", "advance to triple stage");
  advance.id = "advance-btn";
  advance.type = "button";
  advance.addEventListener("click", () => {
    void ctx.store.advance({}).then((view2) => {
      if (view2) ctx.onAdvanced();
    });
  });
  actions.append(commit, advance);
  root.append(actions);
  return root;
}

export function renderTripleRoute(ctx: ViewContext, state: StoreState): HTMLElement {
  const root = el(ctx.doc, "section", "route route-triples");
  root.append(renderHeader(ctx, state, "triple stage"), renderBanner(ctx, state));
  root.append(sourceText(ctx, state));

  const list = el(ctx.doc, "ul", "candidate-list");
  list.id = "triple-candidates";
  const view = state.view;
  if (view && view.stage === "triple") {
    for (const c of view.candidates) {
      if (isTripleCandidate(c)) list.append(tripleRow(ctx, c));
    }
  } else if (view) {
    list.append(
      el(ctx.doc, "li", "notice", "entity stage still open — commit and advance first"),
    );
  }
  root.append(list);

  const actions = el(ctx.doc, "div", "actions");
  const commit = el(ctx.doc, "button", "btn-commit", "commit triple stage");
  commit.id = "commit-btn";
  commit.type = "button";
  commit.addEventListener("click", () => void ctx.store.commitStage());
  actions.append(commit);
  root.append(actions);
  return root;
}
