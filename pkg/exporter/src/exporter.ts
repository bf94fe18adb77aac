/**
 * Batch export: sentences TSV in, embedding file out.
 *
 * Sentences are encoded in input order, in batches, and every entry id of
 * the input appears exactly once in the output, so the file passes the
 * consumer's coverage validation against the original wordlist.
 */
import { readFile, writeFile } from "node:fs/promises";

import type { Encoder } from "./encoder.js";
import { formatEmbeddingFile, parseSentencesTsv, type SentenceRow } from "./format.js";

export interface ExportJob {
  inputTsv: string;
  outputFile: string;
  encoder: Encoder;
  batchSize?: number;
}

export interface ExportResult {
  rows: number;
  dim: number;
  encoderId: string;
}

export async function encodeRows(
  rows: SentenceRow[],
  encoder: Encoder,
  batchSize = 64,
): Promise<number[][]> {
  if (batchSize < 1) throw new Error("batchSize must be >= 1");
  const vectors: number[][] = [];
  for (let start = 0; start < rows.length; start += batchSize) {
    const batch = rows.slice(start, start + batchSize);
    const encoded = await encoder.encode(batch.map((r) => r.sentence));
    if (encoded.length !== batch.length) {
      throw new Error(`encoder returned ${encoded.length} vectors for a batch of ${batch.length}`);
    }
    vectors.push(...encoded);
  }
  return vectors;
}

export async function runExport(job: ExportJob): Promise<ExportResult> {
  const text = await readFile(job.inputTsv, "utf-8");
  const rows = parseSentencesTsv(text);
  const vectors = await encodeRows(rows, job.encoder, job.batchSize);
  const out = formatEmbeddingFile(rows, vectors, job.encoder.dim, job.encoder.id);
  await writeFile(job.outputFile, out, "utf-8");
  return { rows: rows.length, dim: job.encoder.dim, encoderId: job.encoder.id };
}
