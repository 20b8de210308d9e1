"use strict";
(() => {
  // src/state.ts
  function initialState(payload) {
    const judgments = {};
    const groups = {};
    const notes = {};
    for (const question of payload.questions) {
      groups[question.question_id] = [];
      notes[question.question_id] = "";
      for (const topic of question.topics) {
        judgments[topic.topic_id] = { interpretable: null, fits: null, tooSpecific: null };
      }
    }
    return { raterId: "", judgments, groups, notes };
  }
  function cloneState(state) {
    return {
      raterId: state.raterId,
      judgments: Object.fromEntries(
        Object.entries(state.judgments).map(([id, j]) => [id, { ...j }])
      ),
      groups: Object.fromEntries(
        Object.entries(state.groups).map(([qid, gs]) => [qid, gs.map((g) => [...g])])
      ),
      notes: { ...state.notes }
    };
  }
  function questionOf(payload, topicId) {
    for (const question of payload.questions) {
      if (question.topics.some((t) => t.topic_id === topicId)) return question.question_id;
    }
    return null;
  }
  function groupedTopics(groups) {
    const seen = /* @__PURE__ */ new Set();
    for (const group of groups) for (const member of group) seen.add(member);
    return seen;
  }
  function reduce(payload, state, action) {
    switch (action.kind) {
      case "set-interpretable": {
        const judgment = state.judgments[action.topicId];
        if (!judgment) return state;
        const next = cloneState(state);
        const target = next.judgments[action.topicId];
        target.interpretable = action.value;
        if (!action.value) {
          target.fits = null;
          target.tooSpecific = null;
        }
        return next;
      }
      case "set-fits": {
        const judgment = state.judgments[action.topicId];
        if (!judgment || judgment.interpretable !== true) return state;
        const next = cloneState(state);
        const target = next.judgments[action.topicId];
        target.fits = action.value;
        if (!action.value) target.tooSpecific = null;
        return next;
      }
      case "set-too-specific": {
        const judgment = state.judgments[action.topicId];
        if (!judgment || judgment.fits !== true) return state;
        const next = cloneState(state);
        next.judgments[action.topicId].tooSpecific = action.value;
        return next;
      }
      case "add-group": {
        const groups = state.groups[action.questionId];
        if (!groups) return state;
        const members = [...new Set(action.members)];
        if (members.length < 2) return state;
        const already = groupedTopics(groups);
        const allValid = members.every(
          (id) => questionOf(payload, id) === action.questionId && !already.has(id)
        );
        if (!allValid) return state;
        const next = cloneState(state);
        next.groups[action.questionId].push(members);
        return next;
      }
      case "remove-group-member": {
        const groups = state.groups[action.questionId];
        if (!groups || !groups[action.group]) return state;
        const next = cloneState(state);
        const group = next.groups[action.questionId][action.group].filter(
          (id) => id !== action.topicId
        );
        if (group.length < 2) {
          next.groups[action.questionId].splice(action.group, 1);
        } else {
          next.groups[action.questionId][action.group] = group;
        }
        return next;
      }
      case "remove-group": {
        const groups = state.groups[action.questionId];
        if (!groups || !groups[action.group]) return state;
        const next = cloneState(state);
        next.groups[action.questionId].splice(action.group, 1);
        return next;
      }
      case "set-note": {
        if (!(action.questionId in state.notes)) return state;
        const next = cloneState(state);
        next.notes[action.questionId] = action.value;
        return next;
      }
      case "set-rater": {
        const next = cloneState(state);
        next.raterId = action.value;
        return next;
      }
      case "import":
        return cloneState(action.state);
      case "reset":
        return initialState(payload);
    }
  }
  function missingAnswers(payload, state) {
    let missing = 0;
    for (const question of payload.questions) {
      for (const topic of question.topics) {
        const judgment = state.judgments[topic.topic_id];
        if (!judgment || judgment.interpretable === null) missing += 1;
        else if (judgment.interpretable && judgment.fits === null) missing += 1;
        else if (judgment.fits && judgment.tooSpecific === null) missing += 1;
      }
    }
    return missing;
  }
  function canExport(payload, state) {
    return missingAnswers(payload, state) === 0;
  }
  function violations(payload, state) {
    const problems = [];
    for (const [topicId, judgment] of Object.entries(state.judgments)) {
      if (judgment.fits !== null && judgment.interpretable !== true) {
        problems.push(`${topicId}: fits answered while not interpretable`);
      }
      if (judgment.tooSpecific !== null && judgment.fits !== true) {
        problems.push(`${topicId}: too-specific answered while not fitting`);
      }
      if (questionOf(payload, topicId) === null) {
        problems.push(`${topicId}: judgment for unknown topic`);
      }
    }
    for (const [questionId, groups] of Object.entries(state.groups)) {
      const seen = /* @__PURE__ */ new Set();
      for (const group of groups) {
        if (group.length < 2) problems.push(`${questionId}: group smaller than 2`);
        if (new Set(group).size !== group.length) problems.push(`${questionId}: repeated member`);
        for (const member of group) {
          if (questionOf(payload, member) !== questionId) {
            problems.push(`${questionId}: member ${member} from another question`);
          }
          if (seen.has(member)) problems.push(`${questionId}: ${member} in two groups`);
          seen.add(member);
        }
      }
    }
    return problems;
  }

  // src/bundle.ts
  function buildBundle(payload, state) {
    if (!canExport(payload, state)) {
      throw new Error("cannot export an incomplete rating session");
    }
    const questions = payload.questions.map((question) => {
      const judgments = question.topics.map((topic) => {
        const j = state.judgments[topic.topic_id];
        return {
          topic_id: topic.topic_id,
          interpretable: j.interpretable === true,
          fits_question: j.interpretable === true ? j.fits === true : null,
          too_specific: j.fits === true ? j.tooSpecific === true : null
        };
      });
      const entry = {
        question_id: question.question_id,
        judgments,
        duplicate_groups: state.groups[question.question_id].map((g) => [...g])
      };
      const note = state.notes[question.question_id];
      if (note) entry.notes = note;
      return entry;
    });
    return {
      form_hash: payload.form_hash,
      rater_id: state.raterId.trim() === "" ? null : state.raterId.trim(),
      survey_id: payload.survey_id,
      questions
    };
  }
  function serializeBundle(payload, state) {
    return JSON.stringify(buildBundle(payload, state), null, 1);
  }
  function importBundle(raw, payload) {
    var _a, _b;
    const errors = [];
    if (typeof raw !== "object" || raw === null) {
      return { ok: false, errors: ["file is not a JSON object"] };
    }
    const bundle = raw;
    if (bundle.form_hash !== payload.form_hash) {
      errors.push("the file belongs to a different form version");
    }
    if (bundle.survey_id !== payload.survey_id) {
      errors.push("the file belongs to a different survey");
    }
    if (bundle.rater_id !== null && typeof bundle.rater_id !== "string") {
      errors.push("rater_id must be a string or null");
    }
    if (!Array.isArray(bundle.questions)) {
      errors.push("questions must be a list");
      return { ok: false, errors };
    }
    const state = initialState(payload);
    state.raterId = typeof bundle.rater_id === "string" ? bundle.rater_id : "";
    const knownQuestions = new Set(payload.questions.map((q) => q.question_id));
    for (const entry of bundle.questions) {
      if (typeof entry !== "object" || entry === null || !knownQuestions.has(entry.question_id)) {
        errors.push(`unknown question entry: ${JSON.stringify(entry && entry.question_id)}`);
        continue;
      }
      const judged = /* @__PURE__ */ new Set();
      for (const judgment of (_a = entry.judgments) != null ? _a : []) {
        const target = state.judgments[judgment.topic_id];
        if (!target) {
          errors.push(`${entry.question_id}: unknown topic ${judgment.topic_id}`);
          continue;
        }
        if (judged.has(judgment.topic_id)) {
          errors.push(`${entry.question_id}: ${judgment.topic_id} judged twice`);
          continue;
        }
        judged.add(judgment.topic_id);
        if (typeof judgment.interpretable !== "boolean") {
          errors.push(`${judgment.topic_id}: interpretable must be boolean`);
          continue;
        }
        const fitsPresent = judgment.fits_question !== null && judgment.fits_question !== void 0;
        const specificPresent = judgment.too_specific !== null && judgment.too_specific !== void 0;
        if (fitsPresent !== judgment.interpretable) {
          errors.push(`${judgment.topic_id}: fits_question present iff interpretable`);
          continue;
        }
        if (specificPresent !== (judgment.fits_question === true)) {
          errors.push(`${judgment.topic_id}: too_specific present iff fits_question`);
          continue;
        }
        target.interpretable = judgment.interpretable;
        target.fits = fitsPresent ? judgment.fits_question === true : null;
        target.tooSpecific = specificPresent ? judgment.too_specific === true : null;
      }
      const grouped = /* @__PURE__ */ new Set();
      for (const group of (_b = entry.duplicate_groups) != null ? _b : []) {
        if (!Array.isArray(group) || group.length < 2 || new Set(group).size !== group.length) {
          errors.push(`${entry.question_id}: malformed duplicate group`);
          continue;
        }
        const valid = group.every(
          (id) => typeof id === "string" && id in state.judgments && !grouped.has(id) && payload.questions.find((q) => q.question_id === entry.question_id).topics.some((t) => t.topic_id === id)
        );
        if (!valid) {
          errors.push(`${entry.question_id}: duplicate group references invalid topics`);
          continue;
        }
        for (const id of group) grouped.add(id);
        state.groups[entry.question_id].push([...group]);
      }
      if (typeof entry.notes === "string") state.notes[entry.question_id] = entry.notes;
    }
    errors.push(...violations(payload, state));
    if (errors.length > 0) return { ok: false, errors };
    return { ok: true, state };
  }

  // src/render.ts
  var pendingSelection = /* @__PURE__ */ new Map();
  function el(tag, attrs = {}, text) {
    const node = document.createElement(tag);
    for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
    if (text !== void 0) node.textContent = text;
    return node;
  }
  function yesNo(name, current, onChoose) {
    const wrap = el("span", { class: "controls" });
    for (const value of [true, false]) {
      const label = el("label");
      const input = el("input", { type: "radio", name });
      input.checked = current === value;
      input.addEventListener("change", () => onChoose(value));
      label.appendChild(input);
      label.appendChild(document.createTextNode(value ? " yes" : " no"));
      wrap.appendChild(label);
    }
    return wrap;
  }
  function renderTopic(topic, state, dispatch) {
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
      yesNo(
        `${topic.topic_id}:interpretable`,
        judgment.interpretable,
        (value) => dispatch({ kind: "set-interpretable", topicId: topic.topic_id, value })
      )
    );
    card.appendChild(q1);
    if (judgment.interpretable === true) {
      const q2 = el("p", { class: "gated" }, "Does the topic fit the question? ");
      q2.appendChild(
        yesNo(
          `${topic.topic_id}:fits`,
          judgment.fits,
          (value) => dispatch({ kind: "set-fits", topicId: topic.topic_id, value })
        )
      );
      card.appendChild(q2);
    }
    if (judgment.fits === true) {
      const q3 = el("p", { class: "gated" }, "Is the topic too specific? ");
      q3.appendChild(
        yesNo(
          `${topic.topic_id}:too-specific`,
          judgment.tooSpecific,
          (value) => dispatch({ kind: "set-too-specific", topicId: topic.topic_id, value })
        )
      );
      card.appendChild(q3);
    }
    return card;
  }
  function renderDuplicates(question, state, dispatch) {
    var _a;
    const box = el("div", { class: "dup-builder" });
    box.appendChild(el("h4", {}, "Duplicate topics"));
    box.appendChild(
      el(
        "p",
        { class: "keywords" },
        "Select two or more topics that mean the same thing, then add them as a group. Leave empty if none."
      )
    );
    const groups = state.groups[question.question_id];
    const grouped = new Set(groups.flat());
    const labels = new Map(question.topics.map((t) => [t.topic_id, t.label]));
    groups.forEach((group, index) => {
      const chip = el("span", { class: "group-chip" });
      chip.appendChild(document.createTextNode(group.map((id) => {
        var _a2;
        return (_a2 = labels.get(id)) != null ? _a2 : id;
      }).join(" + ")));
      const remove = el("button", { type: "button", title: "dissolve group" }, "\xD7");
      remove.addEventListener(
        "click",
        () => dispatch({ kind: "remove-group", questionId: question.question_id, group: index })
      );
      chip.appendChild(remove);
      box.appendChild(chip);
    });
    const selection = (_a = pendingSelection.get(question.question_id)) != null ? _a : /* @__PURE__ */ new Set();
    pendingSelection.set(question.question_id, selection);
    const picker = el("p");
    for (const topic of question.topics) {
      const label = el("label");
      const input = el("input", { type: "checkbox" });
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
  function renderQuestion(question, state, dispatch) {
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
    const area = el("textarea", { rows: "2" });
    area.value = state.notes[question.question_id];
    area.addEventListener(
      "change",
      () => dispatch({ kind: "set-note", questionId: question.question_id, value: area.value })
    );
    notes.appendChild(area);
    section.appendChild(notes);
    return section;
  }
  function render(root, payload, state, dispatch, onExport, onImport) {
    root.textContent = "";
    for (const question of payload.questions) {
      root.appendChild(renderQuestion(question, state, dispatch));
    }
    const bar = el("div", { class: "export-bar" });
    const rater = el("label", {}, "Rater id (optional): ");
    const raterInput = el("input", { type: "text" });
    raterInput.value = state.raterId;
    raterInput.addEventListener(
      "change",
      () => dispatch({ kind: "set-rater", value: raterInput.value })
    );
    rater.appendChild(raterInput);
    bar.appendChild(rater);
    const missing = missingAnswers(payload, state);
    const exportButton = el("button", { class: "primary", type: "button" });
    exportButton.textContent = canExport(payload, state) ? "Export ratings" : `Export ratings (${missing} answers missing)`;
    exportButton.disabled = !canExport(payload, state);
    exportButton.addEventListener("click", onExport);
    bar.appendChild(exportButton);
    const importLabel = el("label", {}, " Resume from file: ");
    const importInput = el("input", { type: "file", accept: ".json" });
    importInput.addEventListener("change", () => {
      const file = importInput.files && importInput.files[0];
      if (file) onImport(file);
    });
    importLabel.appendChild(importInput);
    bar.appendChild(importLabel);
    root.appendChild(bar);
  }
  function showError(root, messages) {
    const banner = el("div", { class: "error-banner" });
    banner.appendChild(el("strong", {}, "Problem: "));
    for (const message of messages) {
      banner.appendChild(el("div", {}, message));
    }
    root.prepend(banner);
  }

  // src/types.ts
  function isPayload(value) {
    if (typeof value !== "object" || value === null) return false;
    const payload = value;
    return typeof payload.form_hash === "string" && typeof payload.survey_id === "string" && Array.isArray(payload.questions) && payload.questions.every(
      (q) => typeof q.question_id === "string" && typeof q.question_text === "string" && Array.isArray(q.topics) && q.topics.every(
        (t) => typeof t.topic_id === "string" && typeof t.label === "string" && Array.isArray(t.keywords) && t.keywords.every((k) => typeof k === "string")
      )
    );
  }

  // src/main.ts
  function readPayload() {
    const tag = document.getElementById("form-payload");
    if (!tag || !tag.textContent) return null;
    try {
      const parsed = JSON.parse(tag.textContent);
      return isPayload(parsed) ? parsed : null;
    } catch {
      return null;
    }
  }
  function downloadBundle(payload, state) {
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
  function boot() {
    const root = document.getElementById("app");
    if (!root) return;
    const payload = readPayload();
    if (!payload) {
      root.textContent = "";
      showError(root, ["The embedded topic payload is missing or malformed; regenerate this form."]);
      return;
    }
    let state = initialState(payload);
    const dispatch = (action) => {
      state = reduce(payload, state, action);
      rerender();
    };
    const onImport = (file) => {
      const reader = new FileReader();
      reader.onload = () => {
        let parsed;
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
    const rerender = () => render(root, payload, state, dispatch, () => downloadBundle(payload, state), onImport);
    rerender();
  }
  boot();
})();
