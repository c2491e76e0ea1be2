/** Searchable IRI picker backed by `GET /search`: a text input whose every
 * keystroke re-queries the gateway, plus a result list; choosing a hit calls
 * back with the selected IRI. Used for the class and external-equivalent
 * pickers on entity candidates. */

import type { GatewayClient } from "./api.js";

export interface PickerOptions {
  placeholder: string;
  k?: number;
  onSelect: (iri: string) => void;
  onClose?: () => void;
}

export function mountPicker(
  doc: Document,
  host: HTMLElement,
  client: GatewayClient,
  options: PickerOptions,
): HTMLElement {
  const wrap = doc.createElement("div");
  wrap.className = "picker";

  const input = doc.createElement("input");
  input.type = "text";
  input.className = "picker-input";
  input.placeholder = options.placeholder;

  const list = doc.createElement("ul");
  list.className = "picker-hits";

  const close = doc.createElement("button");
  close.type = "button";
  close.className = "picker-close";
  close.textContent = "cancel";
  close.addEventListener("click", () => {
    wrap.remove();
    options.onClose?.();
  });

  let generation = 0;
  const renderHits = async (q: string) => {
    const mine = ++generation;
    if (!q.trim()) {
      list.replaceChildren();
      return;
    }
    try {
      const res = await client.search(q, options.k ?? 8);
      if (mine !== generation) return; // a newer query superseded this one
      list.replaceChildren(
        ...res.hits.map((hit) => {
          const li = doc.createElement("li");
          li.className = "picker-hit";
          li.dataset.iri = hit.iri;
          li.dataset.matchKind = hit.matchKind;
          const btn = doc.createElement("button");
          btn.type = "button";
          btn.textContent = `${hit.iri} (${hit.matchKind})`;
          btn.addEventListener("click", () => {
            wrap.remove();
            options.onSelect(hit.iri);
          });
          li.append(btn);
          return li;
        }),
      );
    } catch {
      if (mine !== generation) return;
      list.replaceChildren();
    }
  };

  input.addEventListener("input", () => void renderHits(input.value));

  wrap.append(input, close, list);
  host.append(wrap);
  input.focus();
  return wrap;
}
