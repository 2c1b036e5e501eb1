// DOM rendering of the controller's view state. Cards are rendered in the
// order the server sent them; nothing is shuffled client-side.

import { TaskPayload } from "./api.js";
import { View } from "./survey.js";

export type Handlers = {
  onSelect: (index: number) => void;
  onSubmit: () => void;
  onRetry: () => void;
};

export const ATTRIBUTE_HELP: Record<string, string> = {
  Comments: "a number that indicates improvement edits created by other readers",
  "Reader Rating": "a number of other readers' approval",
  "Author Rating":
    "a number of voting that the author earned for his activities in the social network",
};

export const SATISFACTION_NOTE = "The greater the number, the greater the satisfaction.";

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

function renderHelp(doc: Document, task: TaskPayload): HTMLElement {
  const help = el(doc, "div", "help");
  const list = el(doc, "ul");
  for (const name of task.attributes) {
    const description = ATTRIBUTE_HELP[name];
    list.appendChild(el(doc, "li", undefined, description ? `${name}: ${description}` : name));
  }
  help.appendChild(list);
  help.appendChild(el(doc, "p", "note", SATISFACTION_NOTE));
  return help;
}

function renderCards(
  doc: Document,
  task: TaskPayload,
  selected: number | null,
  submitting: boolean,
  handlers: Handlers,
): HTMLElement {
  const grid = el(doc, "div", "cards");
  for (const alternative of task.alternatives) {
    const card = el(doc, "button", "card");
    card.type = "button";
    card.dataset.index = String(alternative.index);
    card.setAttribute("aria-pressed", String(selected === alternative.index));
    if (selected === alternative.index) card.classList.add("selected");
    card.disabled = submitting;
    for (const name of task.attributes) {
      const row = el(doc, "div", "row");
      row.appendChild(el(doc, "span", "attr", name));
      row.appendChild(el(doc, "span", "value", String(alternative.levels[name])));
      card.appendChild(row);
    }
    card.addEventListener("click", () => handlers.onSelect(alternative.index));
    grid.appendChild(card);
  }
  return grid;
}

export function render(container: HTMLElement, view: View, handlers: Handlers): void {
  const doc = container.ownerDocument;
  container.replaceChildren();

  if (view.kind === "loading") {
    container.appendChild(el(doc, "p", "status", "Loading…"));
    return;
  }

  if (view.kind === "error") {
    container.appendChild(el(doc, "p", "error", `Something went wrong: ${view.message}`));
    const retry = el(doc, "button", "retry", "Try again");
    retry.id = "retry";
    retry.addEventListener("click", () => handlers.onRetry());
    container.appendChild(retry);
    return;
  }

  if (view.kind === "completed") {
    container.appendChild(el(doc, "h2", undefined, "Thank you!"));
    container.appendChild(
      el(doc, "p", "status", `You completed all ${view.answered} of ${view.taskCount} tasks.`),
    );
    return;
  }

  const { task, selected, submitting } = view;
  container.appendChild(
    el(doc, "h2", "progress", `Task ${task.taskNumber} of ${task.taskCount}`),
  );
  container.appendChild(
    el(doc, "p", "prompt", "Which of these would you trust? Pick one."),
  );
  container.appendChild(renderHelp(doc, task));
  container.appendChild(renderCards(doc, task, selected, submitting, handlers));

  const submit = el(doc, "button", "submit", submitting ? "Submitting…" : "Submit choice");
  submit.id = "submit";
  submit.disabled = selected === null || submitting;
  submit.addEventListener("click", () => handlers.onSubmit());
  container.appendChild(submit);
}
