/** Discrete quantile color bins for count cells.
 *
 * Zero is its own visually distinct class; nonzero counts fall into up to
 * four quantile bins over the observed values, so small counts stay
 * distinguishable no matter how large the maximum gets.
 */

export const ZERO_CLASS = "heat-0";
export const BIN_CLASSES = ["heat-1", "heat-2", "heat-3", "heat-4"] as const;

function quantile(sorted: number[], q: number): number {
  const position = (sorted.length - 1) * q;
  const lower = Math.floor(position);
  const upper = Math.ceil(position);
  if (lower === upper) return sorted[lower];
  return sorted[lower] + (sorted[upper] - sorted[lower]) * (position - lower);
}

export class CountScale {
  private readonly thresholds: number[];

  constructor(counts: number[]) {
    const nonzero = counts.filter((c) => c > 0).sort((a, b) => a - b);
    if (nonzero.length === 0) {
      this.thresholds = [];
    } else {
      this.thresholds = [0.25, 0.5, 0.75].map((q) => quantile(nonzero, q));
    }
  }

  /** 0 for zero counts, 1..4 for ascending quantile bins. */
  level(count: number): number {
    if (count <= 0) return 0;
    let bin = 0;
    for (const threshold of this.thresholds) {
      if (count > threshold) bin += 1;
    }
    return bin + 1;
  }

  cssClass(count: number): string {
    const level = this.level(count);
    return level === 0 ? ZERO_CLASS : BIN_CLASSES[level - 1];
  }
}
