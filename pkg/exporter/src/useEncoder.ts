/**
 * Universal Sentence Encoder backend (TensorFlow.js port of USE v4, 512-d).
 *
 * Sentences are fed to the model verbatim, punctuation tokens included; the
 * tokenizer already spaced them out. Loading pulls the model graph and
 * weights over the network on first use, so this backend needs either
 * connectivity to the TF Hub mirrors or a local model cache.
 */
import type { Encoder } from "./encoder.js";

export const USE_DIM = 512;
export const USE_ID = "universal-sentence-encoder/4-tfjs";

export async function loadUseEncoder(): Promise<Encoder> {
  let use: typeof import("@tensorflow-models/universal-sentence-encoder");
  let model: import("@tensorflow-models/universal-sentence-encoder").UniversalSentenceEncoder;
  try {
    await import("@tensorflow/tfjs");
    use = await import("@tensorflow-models/universal-sentence-encoder");
    model = await use.load();
  } catch (err) {
    throw new Error(
      `encoder load failure: ${(err as Error).message} ` +
        "(the USE backend downloads its model on first use; run with " +
        "--backend hash for a fully offline export)",
    );
  }
  return {
    id: USE_ID,
    dim: USE_DIM,
    encode: async (sentences: string[]) => {
      const tensor = await model.embed(sentences);
      const rows = (await tensor.array()) as number[][];
      tensor.dispose();
      return rows;
    },
  };
}
