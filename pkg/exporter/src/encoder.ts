/** A batch sentence encoder: fixed output dimension, order-preserving. */
export interface Encoder {
  /** Recorded in the output file's #encoder= comment line. */
  id: string;
  dim: number;
  encode(sentences: string[]): Promise<number[][]>;
}
