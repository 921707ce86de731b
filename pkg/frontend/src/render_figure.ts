import * as fs from "fs";
import * as path from "path";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { readHarnessCsv } from "./schema";
import { FIGURE_IDS, FigureId, FigureSpec, renderFigure } from "./figures";

function loadSpec(specPath: string): FigureSpec {
  if (!fs.existsSync(specPath)) {
    throw new Error(`spec file not found: ${specPath}`);
  }
  const spec = JSON.parse(fs.readFileSync(specPath, "utf8")) as FigureSpec;
  if (!FIGURE_IDS.includes(spec.id)) {
    throw new Error(`unknown figure id: ${spec.id}`);
  }
  if (!spec.csv || !spec.output) {
    throw new Error("spec must set csv and output paths");
  }
  return spec;
}

export function main(argv: string[]): void {
  const args = yargs(argv)
    .option("spec", { type: "string", demandOption: true,
                      describe: "JSON figure spec (id, csv, output)" })
    .strict()
    .parseSync();

  const spec = loadSpec(args.spec);
  const base = path.dirname(path.resolve(args.spec));
  const csvPath = path.resolve(base, spec.csv);
  const outPath = path.resolve(base, spec.output);

  const rows = readHarnessCsv(csvPath);
  const svg = renderFigure(spec.id as FigureId, rows, spec);
  fs.mkdirSync(path.dirname(outPath), { recursive: true });
  fs.writeFileSync(outPath, svg);
  process.stderr.write(`wrote ${outPath} (${rows.length} rows)\n`);
}

if (require.main === module) {
  try {
    main(hideBin(process.argv));
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    process.exit(1);
  }
}
