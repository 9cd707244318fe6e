/** Config keys mirror the `relhom ph` CLI flag names, without the dashes. */
export interface DiagramConfig {
  complex?: "dowker" | "dowker-rips" | "kflag";
  k?: number;
  "max-dim"?: number;
  "max-hom-dim"?: number;
  threshold?: number;
  swap?: "auto" | "never" | "always";
  cap?: number;
  metric?: "euclidean" | "manhattan" | "chebyshev";
  "x-label"?: string;
  "y-label"?: string;
}

/** Keys mirror the `relhom image` CLI flag names. */
export interface ImageParams {
  rows?: number;
  cols?: number;
  bandwidth?: number;
  "birth-range"?: [number, number];
  "pers-range"?: [number, number];
  weight?: "linear" | "constant";
  essential?: "drop" | "clamp";
}

/**
 * A persistence diagram as the CLI reports it: per-dimension arrays of
 * (birth, death) pairs plus the CLI's metadata map, passed through verbatim.
 * Essential classes carry death = Infinity.
 */
export interface BindingResult {
  points: Record<string, Array<[number, number]>>;
  metadata: Record<string, unknown>;
}

export interface LabeledDiagrams {
  xLabel: string;
  yLabel: string;
  result: BindingResult;
}

/** Malformed input (CLI exit code 2). */
export class InputError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "InputError";
  }
}

/** Enumeration or simplex budget exceeded (CLI exit code 3). */
export class ResourceLimitError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ResourceLimitError";
  }
}
