/** Entry point: boot from the inline payload, wire state, export, resume. */

import { serializeBundle, importBundle } from "./bundle";
import { Action, initialState, reduce } from "./state";
import { render, showError } from "./render";
import { FormPayload, FormState, isPayload } from "./types";

function readPayload(): FormPayload | null {
  const tag = document.getElementById("form-payload");
  if (!tag || !tag.textContent) return null;
  try {
    const parsed = JSON.parse(tag.textContent);
    return isPayload(parsed) ? parsed : null;
  } catch {
    return null;
  }
}

function downloadBundle(payload: FormPayload, state: FormState): void {
  const blob = new Blob([serializeBundle(payload, state)], { type: "application/json" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = `ratings-${payload.survey_id}-${payload.form_hash}.json`;
  document.body.appendChild(anchor);
  anchor.click();
  anchor.remove();
  URL.revokeObjectURL(url);
}

function boot(): void {
  const root = document.getElementById("app");
  if (!root) return;
  const payload = readPayload();
  if (!payload) {
    root.textContent = "";
    showError(root, ["The embedded topic payload is missing or malformed; regenerate this form."]);
    return;
  }

  let state = initialState(payload);

  const dispatch = (action: Action): void => {
    state = reduce(payload, state, action);
    rerender();
  };

  const onImport = (file: File): void => {
    const reader = new FileReader();
    reader.onload = () => {
      let parsed: unknown;
      try {
        parsed = JSON.parse(String(reader.result));
      } catch {
        rerender();
        showError(root, ["The selected file is not valid JSON."]);
        return;
      }
      const result = importBundle(parsed, payload);
      if (result.ok) {
        dispatch({ kind: "import", state: result.state });
      } else {
        rerender();
        showError(root, result.errors);
      }
    };
    reader.readAsText(file);
  };

  const rerender = (): void =>
    render(root, payload, state, dispatch, () => downloadBundle(payload, state), onImport);

  rerender();
}

boot();
