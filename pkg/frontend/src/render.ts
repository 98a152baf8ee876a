/**
 * DOM layer for the console. One mount call builds the whole single-page
 * view; everything after that is event-driven re-rendering of the history
 * list. No framework, just document.createElement, so the console stays a
 * pure client of /v1 with zero runtime dependencies.
 */

import { ChainView, Mode, QueryResponse } from "./api.js";
import { MessageCatalog } from "./messages.js";
import {
  ConsoleSession,
  QueryTurn,
  RATING_CATEGORIES,
  RatingValues,
} from "./session.js";

const ARROW = " → ";

export interface ConsoleHandles {
  root: HTMLElement;
  input: HTMLInputElement;
  submit: HTMLButtonElement;
  errorBox: HTMLElement;
  retry: HTMLButtonElement;
  history: HTMLOListElement;
  refresh: () => void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function option(doc: Document, text: string, value: string): HTMLOptionElement {
  const node = doc.createElement("option");
  node.value = value;
  node.textContent = text;
  return node;
}

export function chainChipText(chain: ChainView): string {
  return chain.labels.join(ARROW);
}

function citedMarkers(response: QueryResponse): string[] {
  const markers: string[] = [];
  for (const snippet of response.context.snippets) {
    if (response.draft.cited_chunk_ids.includes(snippet.chunk_id)) {
      markers.push(snippet.marker);
    }
  }
  for (const chain of response.context.chains) {
    if (response.draft.cited_chain_fingerprints.includes(chain.fingerprint)) {
      markers.push(chain.marker);
    }
  }
  return markers;
}

function renderEvidence(
  doc: Document,
  turn: QueryTurn,
  catalog: MessageCatalog,
): HTMLElement {
  const box = el(doc, "div", "evidence");
  const context = turn.response.context;

  if (context.snippets.length > 0) {
    box.appendChild(el(doc, "h4", "", catalog.snippetsHeading));
    const list = el(doc, "ul", "snippets");
    for (const snippet of context.snippets) {
      const item = el(doc, "li", "snippet");
      item.appendChild(el(doc, "span", "snippet-marker", snippet.marker));
      item.appendChild(el(doc, "span", "snippet-text", " " + snippet.text));
      list.appendChild(item);
    }
    box.appendChild(list);
  }

  if (context.chains.length > 0) {
    box.appendChild(el(doc, "h4", "", catalog.chainsHeading));
    const chips = el(doc, "div", "chain-chips");
    for (const chain of context.chains) {
      const chip = el(doc, "span", "chain-chip", chainChipText(chain));
      chip.title = chain.fingerprint;
      chips.appendChild(chip);
    }
    box.appendChild(chips);
  }

  if (context.interventions.length > 0) {
    box.appendChild(el(doc, "h4", "", catalog.interventionsHeading));
    const list = el(doc, "ul", "interventions");
    for (const suggestion of context.interventions) {
      list.appendChild(el(doc, "li", "intervention", suggestion.label));
    }
    box.appendChild(list);
  }

  if (context.general.length > 0) {
    box.appendChild(el(doc, "h4", "", catalog.generalHeading));
    const list = el(doc, "ul", "general");
    for (const suggestion of context.general) {
      list.appendChild(el(doc, "li", "general-item", suggestion.label));
    }
    box.appendChild(list);
  }

  return box;
}

function renderRatingForm(
  doc: Document,
  session: ConsoleSession,
  turn: QueryTurn,
  catalog: MessageCatalog,
  refresh: () => void,
): HTMLElement {
  const box = el(doc, "div", "rating");
  if (turn.ratingState === "submitted") {
    box.appendChild(el(doc, "span", "rating-confirmation", catalog.ratingThanks));
    return box;
  }
  box.appendChild(el(doc, "h4", "", catalog.ratingHeading));
  const selects = new Map<string, HTMLSelectElement>();
  for (const category of RATING_CATEGORIES) {
    const label = el(doc, "label", "rating-category", category + " ");
    const select = el(doc, "select");
    select.dataset.category = category;
    select.appendChild(option(doc, "-", ""));
    for (let value = 1; value <= 5; value++) {
      select.appendChild(option(doc, String(value), String(value)));
    }
    selects.set(category, select);
    label.appendChild(select);
    box.appendChild(label);
  }
  const feedback = el(doc, "span", "rating-feedback");
  const button = el(doc, "button", "rating-submit", catalog.ratingSubmit);
  button.type = "button";
  button.addEventListener("click", () => {
    const values: RatingValues = {};
    for (const [category, select] of selects) {
      if (select.value !== "") {
        values[category as (typeof RATING_CATEGORIES)[number]] =
          Number(select.value);
      }
    }
    // client-side gate: an incomplete form must not produce a request
    if (session.ratingProblems(values).length > 0) {
      feedback.textContent = catalog.ratingIncomplete;
      return;
    }
    session
      .submitRating(turn, values)
      .then(() => refresh())
      .catch((err: Error) => {
        feedback.textContent = `${catalog.errorPrefix}: ${err.message}`;
      });
  });
  box.appendChild(button);
  box.appendChild(feedback);
  return box;
}

function renderTurn(
  doc: Document,
  session: ConsoleSession,
  turn: QueryTurn,
  catalog: MessageCatalog,
  refresh: () => void,
): HTMLLIElement {
  const item = el(doc, "li", "turn");
  item.dataset.turnId = String(turn.id);
  item.appendChild(el(doc, "p", "turn-query", `${turn.query} [${turn.mode}]`));
  item.appendChild(el(doc, "pre", "draft-text", turn.response.draft.text));
  const markers = citedMarkers(turn.response);
  item.appendChild(
    el(doc, "p", "citations", `${catalog.citationsLabel}: ${markers.join(" ")}`),
  );
  item.appendChild(renderEvidence(doc, turn, catalog));
  item.appendChild(renderRatingForm(doc, session, turn, catalog, refresh));
  return item;
}

export function mountConsole(
  root: HTMLElement,
  session: ConsoleSession,
  catalog: MessageCatalog,
): ConsoleHandles {
  const doc = root.ownerDocument;
  root.textContent = "";

  const form = el(doc, "form", "query-form");
  form.id = "query-form";
  const label = el(doc, "label", "", catalog.queryLabel + " ");
  const input = el(doc, "input");
  input.id = "query-input";
  input.placeholder = catalog.queryPlaceholder;
  label.appendChild(input);
  form.appendChild(label);

  const modes: Array<[Mode, string]> = [
    ["rag", catalog.modeRag],
    ["kg", catalog.modeKg],
  ];
  for (const [mode, text] of modes) {
    const radioLabel = el(doc, "label", "mode-option", " " + text);
    const radio = el(doc, "input");
    radio.type = "radio";
    radio.name = "mode";
    radio.value = mode;
    radio.checked = mode === "rag";
    radioLabel.prepend(radio);
    form.appendChild(radioLabel);
  }

  const submit = el(doc, "button", "", catalog.submit);
  submit.id = "submit-button";
  submit.type = "submit";
  submit.disabled = true;
  form.appendChild(submit);
  root.appendChild(form);

  const errorBox = el(doc, "div", "error-box");
  errorBox.id = "error-box";
  errorBox.hidden = true;
  const errorText = el(doc, "span", "error-text");
  const retry = el(doc, "button", "", catalog.retry);
  retry.id = "retry-button";
  retry.type = "button";
  errorBox.appendChild(errorText);
  errorBox.appendChild(retry);
  root.appendChild(errorBox);

  const empty = el(doc, "p", "empty-history", catalog.emptyHistory);
  root.appendChild(empty);
  const history = el(doc, "ol", "history");
  history.id = "history";
  root.appendChild(history);

  let lastAttempt: { query: string; mode: Mode } | null = null;

  const refresh = () => {
    history.textContent = "";
    for (const turn of session.turns) {
      history.appendChild(renderTurn(doc, session, turn, catalog, refresh));
    }
    empty.hidden = session.turns.length > 0;
    submit.disabled = !session.canSubmit(input.value);
  };

  const runQuery = (query: string, mode: Mode) => {
    lastAttempt = { query, mode };
    submit.disabled = true;
    submit.textContent = catalog.working;
    session
      .submitQuery(query, mode)
      .then(() => {
        errorBox.hidden = true;
        input.value = "";
      })
      .catch((err: Error) => {
        errorText.textContent = `${catalog.errorPrefix}: ${err.message}`;
        errorBox.hidden = false;
      })
      .then(() => {
        submit.textContent = catalog.submit;
        refresh();
      });
  };

  const selectedMode = (): Mode => {
    const checked = form.querySelector<HTMLInputElement>(
      "input[name=mode]:checked",
    );
    return (checked?.value as Mode) ?? "rag";
  };

  input.addEventListener("input", () => {
    submit.disabled = !session.canSubmit(input.value);
  });
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (!session.canSubmit(input.value)) {
      return;
    }
    runQuery(input.value, selectedMode());
  });
  retry.addEventListener("click", () => {
    if (lastAttempt && !session.busy) {
      runQuery(lastAttempt.query, lastAttempt.mode);
    }
  });

  refresh();
  return { root, input, submit, errorBox, retry, history, refresh };
}
