/** Serialization to and from the rating-bundle wire format.
 *
 * The export must match the aggregator's schema exactly; import is the
 * resume path and therefore validates as strictly as the aggregator does.
 */

import {
  BundleJudgment,
  BundleQuestion,
  FormPayload,
  FormState,
  RatingBundle,
} from "./types";
import { canExport, initialState, violations } from "./state";

export function buildBundle(payload: FormPayload, state: FormState): RatingBundle {
  if (!canExport(payload, state)) {
    throw new Error("cannot export an incomplete rating session");
  }
  const questions: BundleQuestion[] = payload.questions.map((question) => {
    const judgments: BundleJudgment[] = question.topics.map((topic) => {
      const j = state.judgments[topic.topic_id];
      return {
        topic_id: topic.topic_id,
        interpretable: j.interpretable === true,
        fits_question: j.interpretable === true ? j.fits === true : null,
        too_specific: j.fits === true ? j.tooSpecific === true : null,
      };
    });
    const entry: BundleQuestion = {
      question_id: question.question_id,
      judgments,
      duplicate_groups: state.groups[question.question_id].map((g) => [...g]),
    };
    const note = state.notes[question.question_id];
    if (note) entry.notes = note;
    return entry;
  });
  return {
    form_hash: payload.form_hash,
    rater_id: state.raterId.trim() === "" ? null : state.raterId.trim(),
    survey_id: payload.survey_id,
    questions,
  };
}

export function serializeBundle(payload: FormPayload, state: FormState): string {
  return JSON.stringify(buildBundle(payload, state), null, 1);
}

export type ImportResult =
  | { ok: true; state: FormState }
  | { ok: false; errors: string[] };

export function importBundle(raw: unknown, payload: FormPayload): ImportResult {
  const errors: string[] = [];
  if (typeof raw !== "object" || raw === null) {
    return { ok: false, errors: ["file is not a JSON object"] };
  }
  const bundle = raw as RatingBundle;
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
      errors.push(`unknown question entry: ${JSON.stringify(entry && (entry as BundleQuestion).question_id)}`);
      continue;
    }
    const judged = new Set<string>();
    for (const judgment of entry.judgments ?? []) {
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
      const fitsPresent = judgment.fits_question !== null && judgment.fits_question !== undefined;
      const specificPresent = judgment.too_specific !== null && judgment.too_specific !== undefined;
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
    const grouped = new Set<string>();
    for (const group of entry.duplicate_groups ?? []) {
      if (!Array.isArray(group) || group.length < 2 || new Set(group).size !== group.length) {
        errors.push(`${entry.question_id}: malformed duplicate group`);
        continue;
      }
      const valid = group.every(
        (id) =>
          typeof id === "string" && id in state.judgments && !grouped.has(id) &&
          payload.questions
            .find((q) => q.question_id === entry.question_id)!
            .topics.some((t) => t.topic_id === id),
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
