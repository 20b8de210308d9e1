/** Wire contracts shared with the report pipeline. */

export interface PayloadTopic {
  topic_id: string;
  label: string;
  keywords: string[];
}

export interface PayloadQuestion {
  question_id: string;
  question_text: string;
  topics: PayloadTopic[];
}

export interface FormPayload {
  form_hash: string;
  survey_id: string;
  questions: PayloadQuestion[];
}

/** One topic's in-progress answers; downstream answers exist only behind gates. */
export interface JudgmentState {
  interpretable: boolean | null;
  fits: boolean | null;
  tooSpecific: boolean | null;
}

export interface FormState {
  raterId: string;
  judgments: Record<string, JudgmentState>;
  groups: Record<string, string[][]>;
  notes: Record<string, string>;
}

export interface BundleJudgment {
  topic_id: string;
  interpretable: boolean;
  fits_question: boolean | null;
  too_specific: boolean | null;
}

export interface BundleQuestion {
  question_id: string;
  judgments: BundleJudgment[];
  duplicate_groups: string[][];
  notes?: string;
}

export interface RatingBundle {
  form_hash: string;
  rater_id: string | null;
  survey_id: string;
  questions: BundleQuestion[];
}

export function isPayload(value: unknown): value is FormPayload {
  if (typeof value !== "object" || value === null) return false;
  const payload = value as FormPayload;
  return (
    typeof payload.form_hash === "string" &&
    typeof payload.survey_id === "string" &&
    Array.isArray(payload.questions) &&
    payload.questions.every(
      (q) =>
        typeof q.question_id === "string" &&
        typeof q.question_text === "string" &&
        Array.isArray(q.topics) &&
        q.topics.every(
          (t) =>
            typeof t.topic_id === "string" &&
            typeof t.label === "string" &&
            Array.isArray(t.keywords) &&
            t.keywords.every((k) => typeof k === "string"),
        ),
    )
  );
}
