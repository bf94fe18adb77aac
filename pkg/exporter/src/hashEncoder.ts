/**
 * Deterministic offline encoder: seeded character-3-gram hashing.
 *
 * This is the same scheme the Python side ships as its fallback embedder, so
 * an export produced with this backend is bit-compatible with `dirclust
 * embed` output: tokens containing an alphanumeric character are lowercased,
 * right-padded with '#' to at least 3 chars, every contiguous 3-char window
 * is hashed with keyed blake2b (digest size 9, key = seed as 8 little-endian
 * bytes), the first 8 digest bytes pick the coordinate, the low bit of the
 * ninth picks the sign, and the signed counts are L2-normalized (unsigned
 * counts on exact cancellation).
 */
import { blake2b } from "blakejs";

import type { Encoder } from "./encoder.js";

const ALNUM = /[\p{L}\p{N}]/u;
const utf8 = new TextEncoder();

function seedKey(seed: bigint): Uint8Array {
  const key = new Uint8Array(8);
  let value = BigInt.asUintN(64, seed);
  for (let i = 0; i < 8; i++) {
    key[i] = Number(value & 0xffn);
    value >>= 8n;
  }
  return key;
}

function grams(sentence: string): string[] {
  const out: string[] = [];
  for (let token of sentence.split(" ")) {
    if (token.length === 0 || !ALNUM.test(token)) continue;
    token = token.toLowerCase();
    if (token.length < 3) token = token + "#".repeat(3 - token.length);
    for (let i = 0; i + 3 <= token.length; i++) {
      out.push(token.slice(i, i + 3));
    }
  }
  return out;
}

export function hashEmbed(sentence: string, dim: number, seed: bigint): number[] {
  if (dim < 8) throw new Error(`dim must be >= 8, got ${dim}`);
  const gs = grams(sentence);
  if (gs.length === 0) {
    throw new Error(`sentence has no alphanumeric tokens to embed: ${JSON.stringify(sentence)}`);
  }
  const key = seedKey(seed);
  const bigDim = BigInt(dim);
  const hashed = gs.map((g) => {
    const digest = blake2b(utf8.encode(g), key, 9);
    let value = 0n;
    for (let i = 7; i >= 0; i--) {
      value = (value << 8n) | BigInt(digest[i]);
    }
    return { idx: Number(value % bigDim), sign: (digest[8] & 1) === 1 ? 1 : -1 };
  });
  for (const signed of [true, false]) {
    const vec = new Array<number>(dim).fill(0);
    for (const { idx, sign } of hashed) {
      vec[idx] += signed ? sign : 1;
    }
    const norm = Math.sqrt(vec.reduce((acc, v) => acc + v * v, 0));
    if (norm > 0) {
      return vec.map((v) => v / norm);
    }
    // exact sign cancellation: fall through to unsigned counts
  }
  throw new Error("unreachable: unsigned gram counts cannot cancel");
}

export function makeHashEncoder(dim: number, seed: bigint): Encoder {
  return {
    id: `ngram-hash-${dim}/blake2b-seed${seed}`,
    dim,
    encode: async (sentences: string[]) => sentences.map((s) => hashEmbed(s, dim, seed)),
  };
}
