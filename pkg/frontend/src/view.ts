import type { SourceDetail } from "./types.js";
import type { Turn } from "./state.js";

type SourceClickHandler = (id: string) => void;

function element<K extends keyof HTMLElementTagNameMap>(
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

/** Sources panel for one turn: linked titles, a "no citations" badge on
 * uncited answers, and a "related (retrieved)" label when the entries
 * came from retrieval rather than citations. */
export function renderSources(
  doc: Document,
  turn: Turn,
  onSourceClick: SourceClickHandler,
): HTMLElement {
  const section = element(doc, "section", "sources");
  section.setAttribute("aria-label", "Sources");
  section.append(element(doc, "h3", "sources-heading", "Sources"));

  if (turn.uncited) {
    const badge = element(doc, "span", "badge badge-uncited", "no citations");
    badge.dataset.role = "uncited-badge";
    section.append(badge);
  }

  const list = element(doc, "ul", "source-list");
  for (const stub of turn.sources) {
    const item = element(doc, "li", "source-item");
    const link = element(doc, "a", "source-link", turn.fromRetrieval
      ? `${stub.title} — related (retrieved)`
      : stub.title);
    link.href = `#source=${encodeURIComponent(stub.id)}`;
    link.dataset.sourceId = stub.id;
    link.addEventListener("click", (event) => {
      event.preventDefault();
      onSourceClick(stub.id);
    });
    item.append(link);
    list.append(item);
  }
  if (!turn.sources.length) {
    list.append(element(doc, "li", "source-item source-item-empty", "none"));
  }
  section.append(list);
  return section;
}

export function renderTurn(
  doc: Document,
  turn: Turn,
  onSourceClick: SourceClickHandler,
): HTMLElement {
  const article = element(doc, "article", "turn");
  const question = element(doc, "p", "question");
  question.append(element(doc, "strong", undefined, "Q: "));
  question.append(doc.createTextNode(turn.question));
  article.append(question);

  const answer = element(doc, "section", "answer");
  answer.setAttribute("aria-label", "Answer");
  answer.append(element(doc, "h3", "answer-heading", "Answer"));
  answer.append(element(doc, "p", "answer-text", turn.answer));
  article.append(answer);

  article.append(renderSources(doc, turn, onSourceClick));

  const disclosure = element(doc, "details", "trace");
  disclosure.append(element(doc, "summary", undefined, "trace"));
  const pre = element(doc, "pre", "trace-json", JSON.stringify(turn.trace, null, 1));
  disclosure.append(pre);
  article.append(disclosure);
  return article;
}

export function renderSourceDetail(doc: Document, detail: SourceDetail): HTMLElement {
  const card = element(doc, "section", "source-detail");
  card.setAttribute("aria-label", "Source detail");
  card.append(element(doc, "h3", undefined, detail.title));
  card.append(element(doc, "p", "source-id", detail.persistent_id));
  if (detail.description) {
    card.append(element(doc, "p", "source-description", detail.description));
  }
  const fields = element(doc, "dl", "source-fields");
  for (const [name, values] of Object.entries(detail.custom_fields)) {
    fields.append(element(doc, "dt", undefined, name));
    fields.append(element(doc, "dd", undefined, values.join(", ")));
  }
  card.append(fields);
  return card;
}
