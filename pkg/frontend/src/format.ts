// Display formatting.  Rounding for display is the only arithmetic the
// client performs on server numbers; the single exception is
// normalizing user-typed coefficient vectors before submission.

export function formatPercent(probability: number): string {
  return `${(probability * 100).toFixed(1)}%`;
}

export function barWidth(probability: number): number {
  return Math.round(probability * 1000) / 10;
}

export function formatEigenvalue(value: number): string {
  const rounded = Math.round(value * 10000) / 10000;
  return rounded >= 0 ? `+${rounded}` : `${rounded}`;
}

export function formatJointValues(values: number[]): string {
  return values.map(formatEigenvalue).join(", ");
}

export function formatPhase(radians: number): string {
  const turns = radians / Math.PI;
  return `${(Math.round(turns * 100) / 100).toFixed(2)}π`;
}

export function formatMagnitude(value: number): string {
  return value.toFixed(4);
}

export function parseCoefficients(text: string): number[] {
  const parts = text.split(",").map((part) => part.trim()).filter(Boolean);
  const values = parts.map(Number);
  if (values.length === 0 || values.some((v) => !Number.isFinite(v))) {
    throw new Error(`cannot parse coefficients from "${text}"`);
  }
  return values;
}

/** Client-side input hygiene: custom questions are normalized (and the
 * normalized vector shown back) before they go to the server. */
export function normalizeCoefficients(values: number[]): number[] {
  const norm = Math.sqrt(values.reduce((acc, v) => acc + v * v, 0));
  if (norm === 0) {
    throw new Error("coefficient vector is all zeros");
  }
  return values.map((v) => v / norm);
}

export function describeQuestion(ref: string | number[]): string {
  if (typeof ref === "string") return ref;
  return `[${ref.map((v) => (Math.round(v * 1000) / 1000).toString()).join(", ")}]`;
}
