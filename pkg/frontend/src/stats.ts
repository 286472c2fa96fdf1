import { ResultRow } from "./types.js";

const Z95 = 1.959963984540054;

export interface Interval {
    low: number;
    high: number;
}

/** Wilson score interval for a binomial proportion. */
export function wilsonInterval(failures: number, trials: number, z = Z95): Interval {
    if (trials <= 0 || failures < 0 || failures > trials) {
        throw new Error(`invalid counts: ${failures}/${trials}`);
    }
    const p = failures / trials;
    const denom = 1 + (z * z) / trials;
    const center = (p + (z * z) / (2 * trials)) / denom;
    const half = (z * Math.sqrt((p * (1 - p)) / trials + (z * z) / (4 * trials * trials))) / denom;
    // clamp so the interval always brackets p despite float rounding
    return { low: Math.max(0, Math.min(center - half, p)), high: Math.min(1, Math.max(center + half, p)) };
}

export function intervalsOverlap(a: Interval, b: Interval): boolean {
    return a.low <= b.high && b.low <= a.high;
}

export interface RowCheck {
    row: ResultRow;
    merConsistent: boolean;      // mer == failures / trials
    intervalConsistent: boolean; // ci columns reproduce the Wilson interval
    accountingConsistent: boolean; // packet errors can cover message failures
}

/** Re-derive the per-row statistics and compare against the file's columns. */
export function verifyRow(row: ResultRow, tol = 1e-9): RowCheck {
    const merConsistent = Math.abs(row.mer - row.failures / row.trials) <= tol;
    const wilson = wilsonInterval(row.failures, row.trials);
    const intervalConsistent =
        Math.abs(wilson.low - row.ci_low) <= 1e-6 && Math.abs(wilson.high - row.ci_high) <= 1e-6;
    const accountingConsistent = row.failures === 0 || row.bler > 0;
    return { row, merConsistent, intervalConsistent, accountingConsistent };
}

export interface Comparison {
    schemeA: string;
    schemeB: string;
    sweptParam: string;
    value: number;
    merA: number;
    merB: number;
    /** "A" or "B" when the confidence intervals are disjoint, else "tie" */
    better: "A" | "B" | "tie";
}

/** Ordinal scheme comparison at matched sweep points: a winner is declared
 *  only when the 95% intervals do not overlap. */
export function compareSchemes(rows: ResultRow[], schemeA: string, schemeB: string): Comparison[] {
    const key = (r: ResultRow) => `${r.swept_param}=${r.value}`;
    const byPoint = new Map<string, Partial<Record<"A" | "B", ResultRow>>>();
    for (const r of rows) {
        const slot = r.scheme === schemeA ? "A" : r.scheme === schemeB ? "B" : null;
        if (!slot) continue;
        const entry = byPoint.get(key(r)) ?? {};
        entry[slot] = r;
        byPoint.set(key(r), entry);
    }
    const out: Comparison[] = [];
    for (const entry of byPoint.values()) {
        if (!entry.A || !entry.B) continue;
        const a = entry.A, b = entry.B;
        const disjoint = !intervalsOverlap(
            { low: a.ci_low, high: a.ci_high }, { low: b.ci_low, high: b.ci_high });
        out.push({
            schemeA, schemeB,
            sweptParam: a.swept_param, value: a.value,
            merA: a.mer, merB: b.mer,
            better: disjoint ? (a.mer < b.mer ? "A" : "B") : "tie",
        });
    }
    return out.sort((x, y) => x.value - y.value);
}
