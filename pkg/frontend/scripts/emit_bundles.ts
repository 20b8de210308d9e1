/** Emit rating bundles for a form payload, as the UI's export path would.
 *
 * Usage: node emit_bundles.cjs <payload.json> <seed> <count>
 * Drives the real reducer and serializer so the aggregator can be checked
 * against genuine exports without a browser in the loop.
 */

import { readFileSync } from "node:fs";

import { buildBundle } from "../src/bundle";
import { reduce } from "../src/state";
import { isPayload } from "../src/types";
import { completeState, mulberry32, pick } from "../test/helpers";

const [payloadPath, seedArg, countArg] = process.argv.slice(2);
const payload: unknown = JSON.parse(readFileSync(payloadPath, "utf-8"));
if (!isPayload(payload)) {
  process.stderr.write("payload file does not match the inline payload contract\n");
  process.exit(1);
}

const seed = Number(seedArg ?? 1);
const count = Number(countArg ?? 5);
const bundles = [];
for (let index = 0; index < count; index += 1) {
  const rng = mulberry32(seed + index * 7919);
  let state = completeState(payload, rng);
  state = reduce(payload, state, { kind: "set-rater", value: `rater-${index + 1}` });
  for (const question of payload.questions) {
    if (question.topics.length >= 2 && rng() < 0.6) {
      const members = [
        pick(rng, question.topics).topic_id,
        pick(rng, question.topics).topic_id,
      ];
      state = reduce(payload, state, {
        kind: "add-group",
        questionId: question.question_id,
        members,
      });
    }
    if (rng() < 0.3) {
      state = reduce(payload, state, {
        kind: "set-note",
        questionId: question.question_id,
        value: "looks close to another topic",
      });
    }
  }
  bundles.push(buildBundle(payload, state));
}
process.stdout.write(JSON.stringify(bundles, null, 1));
