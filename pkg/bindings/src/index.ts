/**
 * Thin Node surface over the relhom CLI. This layer marshals arrays and
 * config to temp files and flags, and parses what the CLI prints back;
 * every number is produced by the CLI, never recomputed here.
 */
import { writeFileSync } from "node:fs";
import { join } from "node:path";
import { runCli, withTempDir } from "./cli.js";
import {
  BindingResult,
  DiagramConfig,
  ImageParams,
  InputError,
  LabeledDiagrams,
} from "./types.js";

export * from "./types.js";

const PH_KEYS = [
  "complex",
  "k",
  "max-dim",
  "max-hom-dim",
  "threshold",
  "swap",
  "cap",
] as const;

const IMAGE_KEYS = ["rows", "cols", "bandwidth", "weight", "essential"] as const;

function num(x: number): string {
  if (typeof x !== "number" || !Number.isFinite(x)) {
    throw new InputError(`expected a finite number, got ${x}`);
  }
  return String(x);
}

// --key=value survives values that begin with a dash (negative thresholds,
// range endpoints), which space-separated flags do not
function phArgs(config: DiagramConfig): string[] {
  const args: string[] = [];
  for (const key of PH_KEYS) {
    const v = config[key];
    if (v !== undefined) args.push(`--${key}=${v}`);
  }
  return args;
}

function matrixCsv(data: number[][]): string {
  if (data.length === 0 || data[0].length === 0) {
    throw new InputError("matrix must be nonempty");
  }
  const width = data[0].length;
  const lines = data.map(row => {
    if (row.length !== width) throw new InputError("matrix rows must have equal length");
    return row.map(num).join(",");
  });
  return lines.join("\n") + "\n";
}

// The two sides are rewritten to synthetic labels so that a class can sit on
// both sides of the relation (the CLI requires distinct side labels).
function pointsCsv(points: number[][], labels: string[], x: string, y: string): string {
  if (points.length !== labels.length) {
    throw new InputError("labels must have one entry per point");
  }
  if (points.length === 0) throw new InputError("points must be nonempty");
  const width = points[0].length;
  if (width < 1) throw new InputError("points need at least one coordinate");
  const header = "label," + Array.from({ length: width }, (_, i) => `c${i + 1}`).join(",");
  const lines = [header];
  let nx = 0;
  let ny = 0;
  for (const [side, label] of [["__x", x], ["__y", y]] as const) {
    for (let i = 0; i < points.length; i++) {
      if (labels[i] !== label) continue;
      if (points[i].length !== width) {
        throw new InputError("all points must have the same dimension");
      }
      lines.push(side + "," + points[i].map(num).join(","));
      if (side === "__x") nx += 1;
      else ny += 1;
    }
  }
  if (nx === 0) throw new InputError(`no points labeled ${JSON.stringify(x)}`);
  if (ny === 0) throw new InputError(`no points labeled ${JSON.stringify(y)}`);
  return lines.join("\n") + "\n";
}

function resolveSides(labels: string[], config: DiagramConfig): [string, string] {
  const distinct: string[] = [];
  for (const lb of labels) if (!distinct.includes(lb)) distinct.push(lb);
  const x = config["x-label"] ?? distinct[0];
  const y = config["y-label"] ?? distinct.find(lb => lb !== x);
  if (x === undefined || y === undefined) {
    throw new InputError(
      "cannot infer the two sides; pass x-label/y-label or label the points with two classes"
    );
  }
  return [x, y];
}

const toNumber = (v: number | string): number => (v === "inf" ? Infinity : (v as number));

function parseDiagramJson(text: string): BindingResult {
  const payload = JSON.parse(text) as {
    metadata?: Record<string, unknown>;
    diagrams?: Array<{ dim: number; points: Array<[number, number | string]> }>;
  };
  const points: Record<string, Array<[number, number]>> = {};
  for (const entry of payload.diagrams ?? []) {
    points[String(entry.dim)] = entry.points.map(([b, d]) => [toNumber(b), toNumber(d)]);
  }
  return { points, metadata: payload.metadata ?? {} };
}

function encodeDiagramJson(result: BindingResult): string {
  const dims = Object.keys(result.points)
    .map(Number)
    .sort((a, b) => a - b);
  return JSON.stringify({
    metadata: result.metadata ?? {},
    diagrams: dims.map(dim => ({
      dim,
      points: result.points[String(dim)].map(([b, d]) => [b, d === Infinity ? "inf" : d]),
    })),
  });
}

function parseImageCsv(text: string): number[] {
  const out: number[] = [];
  for (const line of text.split("\n")) {
    const t = line.trim();
    if (!t) continue;
    for (const cell of t.split(",")) out.push(Number(cell));
  }
  return out;
}

/**
 * Compute a persistence diagram through the CLI.
 *
 * With `labels === null`, `data` is a cross-distance matrix (rows = X side,
 * columns = Y side). Otherwise `data` rows are point coordinates and
 * `labels[i]` names the class of row i; the X and Y sides are the classes
 * picked by `x-label`/`y-label` (defaulting to the first two distinct labels
 * in order of appearance). The same class may sit on both sides.
 *
 * Throws InputError / ResourceLimitError mirroring CLI exit codes 2 / 3.
 */
export function computeDiagrams(
  data: number[][],
  labels: string[] | null,
  config: DiagramConfig = {}
): BindingResult {
  return withTempDir(dir => {
    let inputArgs: string[];
    if (labels === null) {
      const file = join(dir, "matrix.csv");
      writeFileSync(file, matrixCsv(data));
      inputArgs = ["--matrix", file];
    } else {
      const [x, y] = resolveSides(labels, config);
      const file = join(dir, "points.csv");
      writeFileSync(file, pointsCsv(data, labels, x, y));
      inputArgs = ["--points", file, "--x-label", "__x", "--y-label", "__y"];
      if (config.metric !== undefined) inputArgs.push("--metric", config.metric);
    }
    const out = runCli(["ph", ...inputArgs, "--format", "json", ...phArgs(config)]);
    return parseDiagramJson(out);
  });
}

/**
 * Diagrams for every unordered pair of classes (self-pairs included) in one
 * call: two classes a, b yield (a,a), (a,b), (b,b).
 */
export function computeDiagramBatch(
  points: number[][],
  labels: string[],
  config: DiagramConfig = {}
): LabeledDiagrams[] {
  const classes = [...new Set(labels)].sort();
  if (classes.length === 0) throw new InputError("points must carry at least one class");
  const out: LabeledDiagrams[] = [];
  for (let i = 0; i < classes.length; i++) {
    for (let j = i; j < classes.length; j++) {
      const pair = { ...config, "x-label": classes[i], "y-label": classes[j] };
      out.push({
        xLabel: classes[i],
        yLabel: classes[j],
        result: computeDiagrams(points, labels, pair),
      });
    }
  }
  return out;
}

/**
 * Rasterize one homology dimension of a diagram to a flat row-major vector
 * (length rows * cols), exactly as `relhom image` prints it.
 */
export function persistenceImageVector(
  result: BindingResult,
  dim: number,
  params: ImageParams = {}
): number[] {
  return withTempDir(dir => {
    const file = join(dir, "diagram.json");
    writeFileSync(file, encodeDiagramJson(result));
    const args = ["image", file, `--dim=${dim}`];
    for (const key of IMAGE_KEYS) {
      const v = params[key];
      if (v !== undefined) args.push(`--${key}=${v}`);
    }
    for (const key of ["birth-range", "pers-range"] as const) {
      const v = params[key];
      if (v !== undefined) args.push(`--${key}=${num(v[0])},${num(v[1])}`);
    }
    return parseImageCsv(runCli(args));
  });
}
