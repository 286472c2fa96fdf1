import { buildSeries, trendViolations } from "./series.js";
import { Comparison, compareSchemes, verifyRow } from "./stats.js";
import { ResultRow, SCHEMES } from "./types.js";

function fmt(x: number, digits = 4): string {
    if (x === 0) return "0";
    if (x >= 0.01) return x.toFixed(digits);
    return x.toExponential(2);
}

function comparisonLine(c: Comparison): string {
    const verdict = c.better === "tie"
        ? "no significant difference"
        : `${c.better === "A" ? c.schemeA : c.schemeB} better (CIs disjoint)`;
    return `| ${c.sweptParam}=${c.value} | ${fmt(c.merA)} | ${fmt(c.merB)} | ${verdict} |`;
}

/** Markdown report: per-row table, statistics verification, pairwise
 *  scheme verdicts, and trend flags. */
export function buildReport(rows: ResultRow[]): string {
    const lines: string[] = ["# Simulation results", ""];
    lines.push(`${rows.length} rows, schemes: ` +
        [...new Set(rows.map(r => r.scheme))].join(", "), "");

    lines.push("## Rows", "");
    lines.push("| scheme | point | trials | failures | mer | 95% CI | bler | predicted |");
    lines.push("|---|---|---|---|---|---|---|---|");
    for (const r of rows) {
        const point = r.swept_param ? `${r.swept_param}=${r.value}` : "-";
        lines.push(`| ${r.scheme} | ${point} | ${r.trials} | ${r.failures} | ${fmt(r.mer)} ` +
            `| [${fmt(r.ci_low)}, ${fmt(r.ci_high)}] | ${fmt(r.bler)} | ${fmt(r.predicted_mer)} |`);
    }
    lines.push("");

    const checks = rows.map(r => verifyRow(r));
    const bad = checks.filter(c => !(c.merConsistent && c.intervalConsistent && c.accountingConsistent));
    lines.push("## Statistics verification", "");
    lines.push(bad.length === 0
        ? "All rows reproduce their Wilson intervals and failure ratios."
        : `${bad.length} rows failed verification:`);
    for (const c of bad) {
        lines.push(`- ${c.row.scheme} ${c.row.swept_param}=${c.row.value}: ` +
            `mer ok=${c.merConsistent}, interval ok=${c.intervalConsistent}, ` +
            `accounting ok=${c.accountingConsistent}`);
    }
    lines.push("");

    const present = SCHEMES.filter(s => rows.some(r => r.scheme === s));
    for (let i = 0; i < present.length; i++) {
        for (let j = i + 1; j < present.length; j++) {
            const cmp = compareSchemes(rows, present[i], present[j]);
            if (cmp.length === 0) continue;
            lines.push(`## ${present[i]} vs ${present[j]}`, "");
            lines.push(`| point | mer(${present[i]}) | mer(${present[j]}) | verdict |`);
            lines.push("|---|---|---|---|");
            for (const c of cmp) lines.push(comparisonLine(c));
            lines.push("");
        }
    }

    const flags = buildSeries(rows).flatMap(trendViolations);
    if (flags.length > 0) {
        lines.push("## Trend flags", "");
        for (const f of flags) lines.push(`- ${f}`);
        lines.push("");
    }
    return lines.join("\n");
}
