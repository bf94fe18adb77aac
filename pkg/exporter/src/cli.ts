#!/usr/bin/env node
/**
 * dirclust-export --in sentences.tsv --out embeddings.txt [--backend use|hash]
 *                 [--dim 512] [--seed 0] [--batch-size 64]
 *
 * Pipeline position: `dirclust tokenize --wordlist w.txt --out sentences.tsv`
 * produces the input; the output feeds `dirclust cluster`.
 */
import { makeHashEncoder } from "./hashEncoder.js";
import { runExport } from "./exporter.js";
import { loadUseEncoder, USE_DIM } from "./useEncoder.js";

interface Args {
  in?: string;
  out?: string;
  backend: "use" | "hash";
  dim: number;
  seed: bigint;
  batchSize: number;
}

function usage(message?: string): never {
  if (message) console.error(`error: ${message}`);
  console.error(
    "usage: dirclust-export --in sentences.tsv --out embeddings.txt " +
      "[--backend use|hash] [--dim 512] [--seed 0] [--batch-size 64]",
  );
  process.exit(1);
}

function parseArgs(argv: string[]): Args {
  const args: Args = { backend: "use", dim: USE_DIM, seed: 0n, batchSize: 64 };
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const value = () => {
      if (i + 1 >= argv.length) usage(`${flag} needs a value`);
      return argv[++i];
    };
    switch (flag) {
      case "--in":
        args.in = value();
        break;
      case "--out":
        args.out = value();
        break;
      case "--backend": {
        const b = value();
        if (b !== "use" && b !== "hash") usage(`unknown backend ${b}`);
        args.backend = b;
        break;
      }
      case "--dim":
        args.dim = Number(value());
        break;
      case "--seed":
        args.seed = BigInt(value());
        break;
      case "--batch-size":
        args.batchSize = Number(value());
        break;
      case "--help":
      case "-h":
        usage();
        break;
      default:
        usage(`unknown flag ${flag}`);
    }
  }
  if (!args.in) usage("--in is required");
  if (!args.out) usage("--out is required");
  return args;
}

async function main(): Promise<void> {
  const args = parseArgs(process.argv.slice(2));
  if (args.backend === "use" && args.dim !== USE_DIM) {
    usage(`the use backend always emits dim ${USE_DIM}`);
  }
  const encoder =
    args.backend === "use" ? await loadUseEncoder() : makeHashEncoder(args.dim, args.seed);
  const result = await runExport({
    inputTsv: args.in!,
    outputFile: args.out!,
    encoder,
    batchSize: args.batchSize,
  });
  console.log(
    `wrote ${result.rows} vectors (dim=${result.dim}, encoder=${result.encoderId}) to ${args.out}`,
  );
}

main().catch((err: Error) => {
  console.error(err.message);
  process.exit(2);
});
