import { ResultRow, Scheme, SchemeSeries } from "./types.js";

/** Group rows into per-scheme curves ordered by swept value. */
export function buildSeries(rows: ResultRow[]): SchemeSeries[] {
    const groups = new Map<string, ResultRow[]>();
    for (const r of rows) {
        const key = `${r.scheme}|${r.swept_param}`;
        (groups.get(key) ?? groups.set(key, []).get(key)!).push(r);
    }
    const out: SchemeSeries[] = [];
    for (const [key, rs] of groups) {
        rs.sort((a, b) => a.value - b.value);
        const [scheme, sweptParam] = key.split("|");
        out.push({
            scheme: scheme as Scheme,
            sweptParam,
            values: rs.map(r => r.value),
            mer: rs.map(r => r.mer),
            ciLow: rs.map(r => r.ci_low),
            ciHigh: rs.map(r => r.ci_high),
        });
    }
    return out.sort((a, b) => a.scheme.localeCompare(b.scheme));
}

/** Sweep points where MER rises beyond what CI overlap explains.  These
 *  are flagged for attention, mirroring the simulator's trend checker. */
export function trendViolations(series: SchemeSeries): string[] {
    const flags: string[] = [];
    for (let i = 1; i < series.values.length; i++) {
        const rose = series.mer[i] > series.mer[i - 1];
        const disjoint = series.ciLow[i] > series.ciHigh[i - 1];
        if (rose && disjoint) {
            flags.push(`${series.scheme}: mer rose from ${series.mer[i - 1].toPrecision(3)} ` +
                `(${series.sweptParam}=${series.values[i - 1]}) to ` +
                `${series.mer[i].toPrecision(3)} (${series.values[i]}) beyond CI overlap`);
        }
    }
    return flags;
}
