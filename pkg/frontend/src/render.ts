/** DOM layer: full re-render from state on every structural change.
 *
 * All rating data lives in the reducer state; the only view-local state is
 * the not-yet-added duplicate selection per question.
 */

import { Action, canExport, missingAnswers } from "./state";
import { FormPayload, FormState, PayloadQuestion, PayloadTopic } from "./types";

export type Dispatch = (action: Action) => void;

const pendingSelection = new Map<string, Set<string>>();

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

function yesNo(
  name: string,
  current: boolean | null,
  onChoose: (value: boolean) => void,
): HTMLElement {
  const wrap = el("span", { class: "controls" });
  for (const value of [true, false]) {
    const label = el("label");
    const input = el("input", { type: "radio", name }) as HTMLInputElement;
    input.checked = current === value;
    input.addEventListener("change", () => onChoose(value));
    label.appendChild(input);
    label.appendChild(document.createTextNode(value ? " yes" : " no"));
    wrap.appendChild(label);
  }
  return wrap;
}

function renderTopic(
  topic: PayloadTopic,
  state: FormState,
  dispatch: Dispatch,
): HTMLElement {
  const judgment = state.judgments[topic.topic_id];
  const card = el("div", { class: "topic" });
  card.appendChild(el("h4", {}, topic.label));
  if (topic.keywords.length > 0) {
    const details = el("details", { class: "keywords" });
    details.appendChild(el("summary", {}, "keywords"));
    details.appendChild(el("span", {}, topic.keywords.join(", ")));
    card.appendChild(details);
  }

  const q1 = el("p", {}, "Is this topic interpretable? ");
  q1.appendChild(
    yesNo(`${topic.topic_id}:interpretable`, judgment.interpretable, (value) =>
      dispatch({ kind: "set-interpretable", topicId: topic.topic_id, value }),
    ),
  );
  card.appendChild(q1);

  if (judgment.interpretable === true) {
    const q2 = el("p", { class: "gated" }, "Does the topic fit the question? ");
    q2.appendChild(
      yesNo(`${topic.topic_id}:fits`, judgment.fits, (value) =>
        dispatch({ kind: "set-fits", topicId: topic.topic_id, value }),
      ),
    );
    card.appendChild(q2);
  }
  if (judgment.fits === true) {
    const q3 = el("p", { class: "gated" }, "Is the topic too specific? ");
    q3.appendChild(
      yesNo(`${topic.topic_id}:too-specific`, judgment.tooSpecific, (value) =>
        dispatch({ kind: "set-too-specific", topicId: topic.topic_id, value }),
      ),
    );
    card.appendChild(q3);
  }
  return card;
}

function renderDuplicates(
  question: PayloadQuestion,
  state: FormState,
  dispatch: Dispatch,
): HTMLElement {
  const box = el("div", { class: "dup-builder" });
  box.appendChild(el("h4", {}, "Duplicate topics"));
  box.appendChild(
    el(
      "p",
      { class: "keywords" },
      "Select two or more topics that mean the same thing, then add them as a group. Leave empty if none.",
    ),
  );
  const groups = state.groups[question.question_id];
  const grouped = new Set(groups.flat());
  const labels = new Map(question.topics.map((t) => [t.topic_id, t.label]));

  groups.forEach((group, index) => {
    const chip = el("span", { class: "group-chip" });
    chip.appendChild(document.createTextNode(group.map((id) => labels.get(id) ?? id).join(" + ")));
    const remove = el("button", { type: "button", title: "dissolve group" }, "×");
    remove.addEventListener("click", () =>
      dispatch({ kind: "remove-group", questionId: question.question_id, group: index }),
    );
    chip.appendChild(remove);
    box.appendChild(chip);
  });

  const selection = pendingSelection.get(question.question_id) ?? new Set<string>();
  pendingSelection.set(question.question_id, selection);
  const picker = el("p");
  for (const topic of question.topics) {
    const label = el("label");
    const input = el("input", { type: "checkbox" }) as HTMLInputElement;
    input.checked = selection.has(topic.topic_id);
    input.disabled = grouped.has(topic.topic_id);
    input.addEventListener("change", () => {
      if (input.checked) selection.add(topic.topic_id);
      else selection.delete(topic.topic_id);
    });
    label.appendChild(input);
    label.appendChild(document.createTextNode(` ${topic.label} `));
    picker.appendChild(label);
  }
  const add = el("button", { type: "button" }, "Add group");
  add.addEventListener("click", () => {
    const members = [...selection];
    selection.clear();
    dispatch({ kind: "add-group", questionId: question.question_id, members });
  });
  picker.appendChild(add);
  box.appendChild(picker);
  return box;
}

function renderQuestion(
  question: PayloadQuestion,
  state: FormState,
  dispatch: Dispatch,
): HTMLElement {
  const section = el("section", { class: "question" });
  section.appendChild(el("h2", {}, `${question.question_id}`));
  section.appendChild(el("p", {}, question.question_text));
  if (question.topics.length === 0) {
    section.appendChild(el("p", { class: "keywords" }, "No topics were extracted for this question."));
    return section;
  }
  for (const topic of question.topics) {
    section.appendChild(renderTopic(topic, state, dispatch));
  }
  section.appendChild(renderDuplicates(question, state, dispatch));

  const notes = el("p");
  notes.appendChild(el("label", {}, "Notes (optional): "));
  const area = el("textarea", { rows: "2" }) as HTMLTextAreaElement;
  area.value = state.notes[question.question_id];
  area.addEventListener("change", () =>
    dispatch({ kind: "set-note", questionId: question.question_id, value: area.value }),
  );
  notes.appendChild(area);
  section.appendChild(notes);
  return section;
}

export function render(
  root: HTMLElement,
  payload: FormPayload,
  state: FormState,
  dispatch: Dispatch,
  onExport: () => void,
  onImport: (file: File) => void,
): void {
  root.textContent = "";
  for (const question of payload.questions) {
    root.appendChild(renderQuestion(question, state, dispatch));
  }

  const bar = el("div", { class: "export-bar" });
  const rater = el("label", {}, "Rater id (optional): ");
  const raterInput = el("input", { type: "text" }) as HTMLInputElement;
  raterInput.value = state.raterId;
  raterInput.addEventListener("change", () =>
    dispatch({ kind: "set-rater", value: raterInput.value }),
  );
  rater.appendChild(raterInput);
  bar.appendChild(rater);

  const missing = missingAnswers(payload, state);
  const exportButton = el("button", { class: "primary", type: "button" }) as HTMLButtonElement;
  exportButton.textContent = canExport(payload, state)
    ? "Export ratings"
    : `Export ratings (${missing} answers missing)`;
  exportButton.disabled = !canExport(payload, state);
  exportButton.addEventListener("click", onExport);
  bar.appendChild(exportButton);

  const importLabel = el("label", {}, " Resume from file: ");
  const importInput = el("input", { type: "file", accept: ".json" }) as HTMLInputElement;
  importInput.addEventListener("change", () => {
    const file = importInput.files && importInput.files[0];
    if (file) onImport(file);
  });
  importLabel.appendChild(importInput);
  bar.appendChild(importLabel);
  root.appendChild(bar);
}

export function showError(root: HTMLElement, messages: string[]): void {
  const banner = el("div", { class: "error-banner" });
  banner.appendChild(el("strong", {}, "Problem: "));
  for (const message of messages) {
    banner.appendChild(el("div", {}, message));
  }
  root.prepend(banner);
}
