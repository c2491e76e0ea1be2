/** Hash router and bootstrap.
 *
 * Routes:
 *   #/sessions/{id}/entities  — stage one: entity candidates
 *   #/sessions/{id}/triples   — stage two: triple candidates
 *   (anything else)           — home: open or create a session
 *
 * Stage advance is an explicit user action (the "advance" button on the
 * entity route); the router never advances a session by itself. */

import { GatewayClient } from "./api.js";
import { SessionStore } from "./store.js";
import { renderEntityRoute, renderTripleRoute, type ViewContext } from "./views.js";

export interface AppHandle {
  /** Resolves when the current route has loaded and rendered. */
  ready: Promise<void>;
  /** Resolves when every queued operation has settled and re-rendered. */
  idle(): Promise<void>;
  store(): SessionStore | null;
  dispose(): void;
}

interface Route {
  kind: "home" | "entities" | "triples";
  sessionId?: string;
}

export function parseRoute(hash: string): Route {
  const m = /^#\/sessions\/([^/]+)\/(entities|triples)$/.exec(hash);
  if (!m) return { kind: "home" };
  return { kind: m[2] as "entities" | "triples", sessionId: decodeURIComponent(m[1]) };
}

function renderHome(doc: Document, win: Window): HTMLElement {
  const root = doc.createElement("section");
  root.className = "route route-home";
  const title = doc.createElement("h2");
  title.textContent = "kgforge annotator";
  const form = doc.createElement("form");
  form.className = "open-session";
  const input = doc.createElement("input");
  input.type = "text";
  input.placeholder = "session id";
  const go = doc.createElement("button");
  go.type = "submit";
  go.textContent = "open entity stage";
  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    if (input.value) {
      win.location.hash = `#/sessions/${encodeURIComponent(input.value)}/entities`;
    }
  });
  form.append(input, go);
  root.append(title, form);
  return root;
}

export function mountApp(root: HTMLElement, client: GatewayClient, win: Window): AppHandle {
  const doc = root.ownerDocument;
  let store: SessionStore | null = null;
  let unsubscribe: (() => void) | null = null;
  let current: Route = { kind: "home" };

  const renderCurrent = () => {
    if (!store) {
      root.replaceChildren(renderHome(doc, win));
      return;
    }
    const ctx: ViewContext = {
      doc,
      client,
      store,
      onAdvanced: () => {
        win.location.hash = `#/sessions/${encodeURIComponent(store!.sessionId)}/triples`;
      },
    };
    const view =
      current.kind === "triples"
        ? renderTripleRoute(ctx, store.state)
        : renderEntityRoute(ctx, store.state);
    root.replaceChildren(view);
  };

  const applyRoute = (): Promise<void> => {
    const route = parseRoute(win.location.hash);
    current = route;
    if (route.kind === "home") {
      unsubscribe?.();
      unsubscribe = null;
      store = null;
      renderCurrent();
      return Promise.resolve();
    }
    if (!store || store.sessionId !== route.sessionId) {
      unsubscribe?.();
      store = new SessionStore(client, route.sessionId!);
      unsubscribe = store.subscribe(() => renderCurrent());
      renderCurrent();
      return store.refresh().then(() => undefined);
    }
    renderCurrent();
    return Promise.resolve();
  };

  const onHashChange = () => void applyRoute();
  win.addEventListener("hashchange", onHashChange);
  const ready = applyRoute();

  return {
    ready,
    idle: () => (store ? store.idle() : Promise.resolve()),
    store: () => store,
    dispose: () => {
      win.removeEventListener("hashchange", onHashChange);
      unsubscribe?.();
    },
  };
}

export { GatewayClient, SessionStore };
