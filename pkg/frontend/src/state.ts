/** Single reducer for all rating interactions.
 *
 * The gating rules live here and nowhere else: an answer to a downstream
 * question can only exist while its upstream answer allows it, and changing
 * an upstream answer clears everything below it.  Invalid actions are
 * ignored rather than partially applied, so every reachable state is valid.
 */

import { FormPayload, FormState, JudgmentState } from "./types";

export type Action =
  | { kind: "set-interpretable"; topicId: string; value: boolean }
  | { kind: "set-fits"; topicId: string; value: boolean }
  | { kind: "set-too-specific"; topicId: string; value: boolean }
  | { kind: "add-group"; questionId: string; members: string[] }
  | { kind: "remove-group-member"; questionId: string; group: number; topicId: string }
  | { kind: "remove-group"; questionId: string; group: number }
  | { kind: "set-note"; questionId: string; value: string }
  | { kind: "set-rater"; value: string }
  | { kind: "import"; state: FormState }
  | { kind: "reset" };

export function initialState(payload: FormPayload): FormState {
  const judgments: Record<string, JudgmentState> = {};
  const groups: Record<string, string[][]> = {};
  const notes: Record<string, string> = {};
  for (const question of payload.questions) {
    groups[question.question_id] = [];
    notes[question.question_id] = "";
    for (const topic of question.topics) {
      judgments[topic.topic_id] = { interpretable: null, fits: null, tooSpecific: null };
    }
  }
  return { raterId: "", judgments, groups, notes };
}

function cloneState(state: FormState): FormState {
  return {
    raterId: state.raterId,
    judgments: Object.fromEntries(
      Object.entries(state.judgments).map(([id, j]) => [id, { ...j }]),
    ),
    groups: Object.fromEntries(
      Object.entries(state.groups).map(([qid, gs]) => [qid, gs.map((g) => [...g])]),
    ),
    notes: { ...state.notes },
  };
}

function questionOf(payload: FormPayload, topicId: string): string | null {
  for (const question of payload.questions) {
    if (question.topics.some((t) => t.topic_id === topicId)) return question.question_id;
  }
  return null;
}

function groupedTopics(groups: string[][]): Set<string> {
  const seen = new Set<string>();
  for (const group of groups) for (const member of group) seen.add(member);
  return seen;
}

export function reduce(payload: FormPayload, state: FormState, action: Action): FormState {
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
        (id) => questionOf(payload, id) === action.questionId && !already.has(id),
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
        (id) => id !== action.topicId,
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

/** Number of visible, still-unanswered controls. Zero means exportable. */
export function missingAnswers(payload: FormPayload, state: FormState): number {
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

export function canExport(payload: FormPayload, state: FormState): boolean {
  return missingAnswers(payload, state) === 0;
}

/** Invariant check used by the property tests and the import path. */
export function violations(payload: FormPayload, state: FormState): string[] {
  const problems: string[] = [];
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
    const seen = new Set<string>();
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
