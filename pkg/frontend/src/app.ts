import { ApiClient } from "./api.js";
import {
  ViewState,
  initialState,
  selectStrategy,
  submitQuestion,
} from "./state.js";
import { renderSourceDetail, renderTurn } from "./view.js";

export interface AppHandle {
  state: ViewState;
  /** settles when the in-flight ask (if any) has been folded into the DOM */
  whenIdle(): Promise<void>;
}

/** Build the chat client inside `root` and wire it to `client`.
 *
 * Everything is operable from the keyboard: the question field submits on
 * Enter, the Ask button and strategy selector are native controls, and
 * source entries are real links.
 */
export function createApp(root: HTMLElement, client: ApiClient): AppHandle {
  const doc = root.ownerDocument;
  const state = initialState();
  let inflight: Promise<void> = Promise.resolve();

  root.innerHTML = `
    <header role="banner" class="masthead">
      <h1>Ask the collection</h1>
      <p class="tagline">Natural-language questions over the archived collection,
        answered with cited sources.</p>
    </header>
    <main role="main">
      <div class="error-banner" role="alert" hidden data-role="error"></div>
      <section class="conversation" aria-label="Conversation" aria-live="polite"
               data-role="turns"></section>
      <section class="detail-panel" data-role="detail" hidden></section>
      <form class="ask-form" data-role="ask-form">
        <label for="question-input">Your question</label>
        <input id="question-input" name="question" type="text" autocomplete="off"
               placeholder="which performances does the collection contain?" />
        <label for="strategy-select" data-role="strategy-label">Strategy</label>
        <select id="strategy-select" name="strategy" data-role="strategy"></select>
        <button type="submit" data-role="ask-button">Ask</button>
      </form>
    </main>
  `;

  const turnsEl = root.querySelector<HTMLElement>('[data-role="turns"]')!;
  const errorEl = root.querySelector<HTMLElement>('[data-role="error"]')!;
  const detailEl = root.querySelector<HTMLElement>('[data-role="detail"]')!;
  const formEl = root.querySelector<HTMLFormElement>('[data-role="ask-form"]')!;
  const inputEl = root.querySelector<HTMLInputElement>("#question-input")!;
  const selectEl = root.querySelector<HTMLSelectElement>('[data-role="strategy"]')!;
  const strategyLabel = root.querySelector<HTMLElement>('[data-role="strategy-label"]')!;
  const buttonEl = root.querySelector<HTMLButtonElement>('[data-role="ask-button"]')!;

  function showSource(id: string): void {
    inflight = inflight.then(async () => {
      try {
        const detail = await client.source(id);
        detailEl.innerHTML = "";
        detailEl.append(renderSourceDetail(doc, detail));
        detailEl.hidden = false;
      } catch {
        detailEl.hidden = true;
      }
    });
  }

  function syncView(): void {
    errorEl.hidden = state.error === null;
    errorEl.textContent = state.error ?? "";
    inputEl.disabled = state.pending;
    buttonEl.disabled = state.pending;

    turnsEl.innerHTML = "";
    for (const turn of state.turns) {
      turnsEl.append(renderTurn(doc, turn, showSource));
    }
  }

  function ask(): void {
    const question = inputEl.value;
    const before = state.turns.length;
    // submitQuestion flips pending synchronously, so the disabled state is
    // visible before the network reply lands
    const done = submitQuestion(state, client, question).then(() => {
      if (state.turns.length > before) inputEl.value = "";
      syncView();
    });
    inflight = inflight.then(() => done);
    syncView();
  }

  formEl.addEventListener("submit", (event) => {
    event.preventDefault();
    ask();
  });
  inputEl.addEventListener("keydown", (event) => {
    if (event.key === "Enter") {
      event.preventDefault();
      ask();
    }
  });
  selectEl.addEventListener("change", () => {
    selectStrategy(state, selectEl.value);
  });

  // Strategy names come from the server; when that fails the selector is
  // hidden and the default strategy is used unchanged.
  inflight = inflight.then(async () => {
    try {
      const listing = await client.strategies();
      selectEl.innerHTML = "";
      for (const name of listing.strategies) {
        const option = doc.createElement("option");
        option.value = name;
        option.textContent = name;
        selectEl.append(option);
      }
      selectEl.value = listing.defaults.strategy;
      state.strategy = listing.defaults.strategy;
    } catch {
      selectEl.hidden = true;
      strategyLabel.hidden = true;
    }
  });

  syncView();
  return {
    state,
    whenIdle: () => inflight.then(() => undefined),
  };
}
