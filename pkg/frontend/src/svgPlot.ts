import { SchemeSeries } from "./types.js";

const COLORS: Record<string, string> = {
    swsc: "#1f77b4",
    eswsc: "#d62728",
    ldpc_stacked: "#2ca02c",
    mldpc: "#9467bd",
};

const W = 640, H = 420;
const M = { left: 70, right: 150, top: 24, bottom: 48 };
const FLOOR = 1e-12; // zero estimates are clamped onto the axis floor

function logTicks(lo: number, hi: number): number[] {
    const ticks: number[] = [];
    for (let e = Math.floor(Math.log10(lo)); e <= Math.ceil(Math.log10(hi)); e++) {
        ticks.push(10 ** e);
    }
    return ticks;
}

/** Render MER-vs-value curves with confidence bands on a log-scale y axis.
 *  Self-contained SVG string, no DOM required. */
export function renderMerCurves(series: SchemeSeries[], title = "message error rate"): string {
    if (series.length === 0) throw new Error("no series to plot");
    const xs = series.flatMap(s => s.values);
    const ys = series.flatMap(s => [...s.mer, ...s.ciLow, ...s.ciHigh])
        .map(v => Math.max(v, FLOOR)).filter(v => v > 0);
    const x0 = Math.min(...xs), x1 = Math.max(...xs);
    const yMin = Math.min(...ys), yMax = Math.max(...ys, 1e-6);
    const ly0 = Math.log10(Math.max(yMin, FLOOR)) - 0.1;
    const ly1 = Math.log10(Math.min(Math.max(yMax * 1.5, 1e-6), 1)) + 0.05;
    const px = (x: number) =>
        x1 === x0 ? (M.left + (W - M.left - M.right) / 2)
            : M.left + ((x - x0) / (x1 - x0)) * (W - M.left - M.right);
    const py = (y: number) => {
        const ly = Math.log10(Math.max(y, FLOOR));
        return H - M.bottom - ((ly - ly0) / (ly1 - ly0)) * (H - M.top - M.bottom);
    };

    const parts: string[] = [];
    parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" ` +
        `viewBox="0 0 ${W} ${H}" font-family="sans-serif" font-size="12">`);
    parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
    parts.push(`<text x="${W / 2}" y="16" text-anchor="middle" font-size="14">${title}</text>`);

    for (const tick of logTicks(10 ** ly0, 10 ** ly1)) {
        const y = py(tick);
        if (y < M.top || y > H - M.bottom) continue;
        parts.push(`<line x1="${M.left}" y1="${y.toFixed(1)}" x2="${W - M.right}" ` +
            `y2="${y.toFixed(1)}" stroke="#ddd"/>`);
        parts.push(`<text x="${M.left - 6}" y="${(y + 4).toFixed(1)}" text-anchor="end">` +
            `1e${Math.round(Math.log10(tick))}</text>`);
    }
    const xTicks = [...new Set(xs)].sort((a, b) => a - b);
    for (const tick of xTicks) {
        const x = px(tick);
        parts.push(`<line x1="${x.toFixed(1)}" y1="${H - M.bottom}" x2="${x.toFixed(1)}" ` +
            `y2="${H - M.bottom + 5}" stroke="#333"/>`);
        parts.push(`<text x="${x.toFixed(1)}" y="${H - M.bottom + 20}" ` +
            `text-anchor="middle">${tick}</text>`);
    }
    parts.push(`<text x="${(M.left + W - M.right) / 2}" y="${H - 10}" text-anchor="middle">` +
        `${series[0].sweptParam || "value"}</text>`);
    parts.push(`<line x1="${M.left}" y1="${M.top}" x2="${M.left}" y2="${H - M.bottom}" stroke="#333"/>`);
    parts.push(`<line x1="${M.left}" y1="${H - M.bottom}" x2="${W - M.right}" ` +
        `y2="${H - M.bottom}" stroke="#333"/>`);

    let legendY = M.top + 8;
    for (const s of series) {
        const color = COLORS[s.scheme] ?? "#555";
        const band = [
            ...s.values.map((v, i) => `${px(v).toFixed(1)},${py(s.ciHigh[i]).toFixed(1)}`),
            ...[...s.values].reverse().map((v, i) => {
                const j = s.values.length - 1 - i;
                return `${px(v).toFixed(1)},${py(s.ciLow[j]).toFixed(1)}`;
            }),
        ].join(" ");
        parts.push(`<polygon points="${band}" fill="${color}" opacity="0.15"/>`);
        const line = s.values.map((v, i) =>
            `${px(v).toFixed(1)},${py(s.mer[i]).toFixed(1)}`).join(" ");
        parts.push(`<polyline points="${line}" fill="none" stroke="${color}" stroke-width="2"/>`);
        for (let i = 0; i < s.values.length; i++) {
            parts.push(`<circle cx="${px(s.values[i]).toFixed(1)}" ` +
                `cy="${py(s.mer[i]).toFixed(1)}" r="3" fill="${color}"/>`);
        }
        parts.push(`<rect x="${W - M.right + 10}" y="${legendY - 9}" width="12" height="12" fill="${color}"/>`);
        parts.push(`<text x="${W - M.right + 27}" y="${legendY + 1}">${s.scheme}</text>`);
        legendY += 20;
    }
    parts.push("</svg>");
    return parts.join("\n");
}
