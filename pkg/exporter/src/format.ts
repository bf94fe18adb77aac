/**
 * The two text formats the exporter touches.
 *
 * Input (sentences TSV, produced by `dirclust tokenize`):
 *   entry_id<TAB>raw path<TAB>sentence
 *
 * Output (embedding file, consumed by `dirclust cluster` etc.):
 *   #dim=<D>
 *   #encoder=<id>
 *   entry_id<TAB>raw path<TAB>v0 v1 ... v{D-1}    (six-decimal floats)
 *
 * Both are UTF-8 with LF line endings. Entry ids and input order are
 * preserved exactly.
 */

export interface SentenceRow {
  entryId: number;
  raw: string;
  sentence: string;
}

export function parseSentencesTsv(text: string): SentenceRow[] {
  const rows: SentenceRow[] = [];
  const seen = new Set<number>();
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i];
    if (line === "" && i === lines.length - 1) continue; // trailing newline
    const lineno = i + 1;
    const parts = line.split("\t");
    if (parts.length !== 3) {
      throw new Error(`line ${lineno}: expected 3 tab-separated fields, got ${parts.length}`);
    }
    const entryId = Number(parts[0]);
    if (!Number.isInteger(entryId) || entryId < 0) {
      throw new Error(`line ${lineno}: bad entry id ${JSON.stringify(parts[0])}`);
    }
    if (seen.has(entryId)) {
      throw new Error(`line ${lineno}: duplicate entry id ${entryId}`);
    }
    if (parts[2].length === 0) {
      throw new Error(`line ${lineno}: empty sentence for ${parts[1]}`);
    }
    seen.add(entryId);
    rows.push({ entryId, raw: parts[1], sentence: parts[2] });
  }
  if (rows.length === 0) {
    throw new Error("sentences file contains no rows");
  }
  return rows;
}

export function formatEmbeddingFile(
  rows: SentenceRow[],
  vectors: number[][],
  dim: number,
  encoderId: string,
): string {
  if (vectors.length !== rows.length) {
    throw new Error(`got ${vectors.length} vectors for ${rows.length} rows`);
  }
  const lines: string[] = [`#dim=${dim}`, `#encoder=${encoderId}`];
  for (let i = 0; i < rows.length; i++) {
    const vec = vectors[i];
    if (vec.length !== dim) {
      throw new Error(`row ${i} (entry ${rows[i].entryId}): vector length ${vec.length} != dim ${dim}`);
    }
    for (const v of vec) {
      if (!Number.isFinite(v)) {
        throw new Error(`row ${i} (entry ${rows[i].entryId}): non-finite value from encoder`);
      }
    }
    const values = vec.map((v) => v.toFixed(6)).join(" ");
    lines.push(`${rows[i].entryId}\t${rows[i].raw}\t${values}`);
  }
  return lines.map((l) => l + "\n").join("");
}
