import { FormPayload, FormState } from "../src/types";
import { Action, initialState, reduce } from "../src/state";

/** Deterministic 32-bit PRNG so property failures replay exactly. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function pick<T>(rng: () => number, items: readonly T[]): T {
  return items[Math.floor(rng() * items.length)];
}

export function makePayload(questionTopicCounts: number[] = [3, 2]): FormPayload {
  return {
    form_hash: "cafe0123cafe0123",
    survey_id: "repository_url",
    questions: questionTopicCounts.map((count, qIndex) => ({
      question_id: `SQ-1.${qIndex + 1}`,
      question_text: `Question ${qIndex + 1}?`,
      topics: Array.from({ length: count }, (_v, tIndex) => ({
        topic_id: `SQ-1.${qIndex + 1}:topic_${tIndex + 1}`,
        label: `Topic ${tIndex + 1}`,
        keywords: ["alpha", "beta"],
      })),
    })),
  };
}

export function randomAction(rng: () => number, payload: FormPayload, state: FormState): Action {
  const topicIds = payload.questions.flatMap((q) => q.topics.map((t) => t.topic_id));
  const questionIds = payload.questions.map((q) => q.question_id);
  const roll = rng();
  if (roll < 0.3) {
    return { kind: "set-interpretable", topicId: pick(rng, topicIds), value: rng() < 0.7 };
  }
  if (roll < 0.5) {
    return { kind: "set-fits", topicId: pick(rng, topicIds), value: rng() < 0.7 };
  }
  if (roll < 0.65) {
    return { kind: "set-too-specific", topicId: pick(rng, topicIds), value: rng() < 0.5 };
  }
  if (roll < 0.8) {
    const questionId = pick(rng, questionIds);
    const topics = payload.questions.find((q) => q.question_id === questionId)!.topics;
    const size = 2 + Math.floor(rng() * 2);
    const members = Array.from({ length: size }, () => pick(rng, topics).topic_id);
    return { kind: "add-group", questionId, members };
  }
  if (roll < 0.9) {
    const questionId = pick(rng, questionIds);
    const groups = state.groups[questionId] ?? [];
    const index = Math.floor(rng() * Math.max(1, groups.length));
    const group = groups[index] ?? [];
    return {
      kind: "remove-group-member",
      questionId,
      group: index,
      topicId: group.length ? pick(rng, group) : "nothing",
    };
  }
  if (roll < 0.95) {
    return { kind: "set-note", questionId: pick(rng, questionIds), value: "note" };
  }
  return { kind: "set-rater", value: "rater-x" };
}

/** Answer everything with gating-consistent values. */
export function completeState(payload: FormPayload, rng: () => number): FormState {
  let state = initialState(payload);
  for (const question of payload.questions) {
    for (const topic of question.topics) {
      const interpretable = rng() < 0.8;
      state = reduce(payload, state, {
        kind: "set-interpretable",
        topicId: topic.topic_id,
        value: interpretable,
      });
      if (interpretable) {
        const fits = rng() < 0.8;
        state = reduce(payload, state, { kind: "set-fits", topicId: topic.topic_id, value: fits });
        if (fits) {
          state = reduce(payload, state, {
            kind: "set-too-specific",
            topicId: topic.topic_id,
            value: rng() < 0.3,
          });
        }
      }
    }
  }
  return state;
}
