import { readFileSync } from "node:fs";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { parseResults, ResultsParseError } from "../src/parseResults.js";
import { RESULTS_HEADER } from "../src/types.js";

const FIXTURE = readFileSync(join(__dirname, "fixtures", "results.csv"), "utf-8");

describe("parseResults", () => {
    it("parses a simulator-produced file", () => {
        const rows = parseResults(FIXTURE);
        expect(rows).toHaveLength(12);
        expect(new Set(rows.map(r => r.scheme))).toEqual(
            new Set(["swsc", "eswsc", "ldpc_stacked", "mldpc"]));
        const first = rows[0];
        expect(first.scheme).toBe("swsc");
        expect(first.swept_param).toBe("snr_db");
        expect(first.trials).toBe(800);
        expect(first.mer).toBeCloseTo(first.failures / first.trials, 12);
    });

    it("keeps rows self-consistent", () => {
        for (const r of parseResults(FIXTURE)) {
            expect(r.failures).toBeLessThanOrEqual(r.trials);
            expect(r.ci_low).toBeLessThanOrEqual(r.mer);
            expect(r.mer).toBeLessThanOrEqual(r.ci_high);
        }
    });

    it("rejects a wrong header", () => {
        const bad = FIXTURE.replace("scheme,", "plan,");
        expect(() => parseResults(bad)).toThrowError(ResultsParseError);
        expect(() => parseResults(bad)).toThrowError(/header/);
    });

    it("rejects non-numeric fields with the line number", () => {
        const lines = FIXTURE.trim().split("\n");
        lines[2] = lines[2].replace(/,800,/, ",many,");
        expect(() => parseResults(lines.join("\n"))).toThrowError(/line 3/);
    });

    it("rejects impossible counts", () => {
        const lines = FIXTURE.trim().split("\n");
        const cols = lines[1].split(",");
        cols[RESULTS_HEADER.indexOf("failures")] = String(Number(cols[3]) + 1);
        lines[1] = cols.join(",");
        expect(() => parseResults(lines.join("\n"))).toThrowError(/failures exceed trials/);
    });

    it("accepts nan sweep values from sweep-less runs", () => {
        const header = RESULTS_HEADER.join(",");
        const row = "swsc,,nan,100,5,0.05,0.021,0.112,0.01,0.99,0.98,0.05,7";
        const rows = parseResults(`${header}\n${row}\n`);
        expect(rows[0].value).toBe(0);
    });
});
