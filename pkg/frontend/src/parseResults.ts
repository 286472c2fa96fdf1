import Papa from "papaparse";

import { RESULTS_HEADER, ResultRow, ResultRowSchema } from "./types.js";

export class ResultsParseError extends Error {
    constructor(message: string, public readonly line?: number) {
        super(line === undefined ? message : `line ${line}: ${message}`);
        this.name = "ResultsParseError";
    }
}

const NUMERIC = new Set<string>([
    "value", "trials", "failures", "mer", "ci_low", "ci_high",
    "bler", "p_clean", "p_assumed", "predicted_mer", "seed",
]);

/** Parse the simulator's results.csv text into validated rows. */
export function parseResults(csvText: string): ResultRow[] {
    const parsed = Papa.parse<Record<string, string>>(csvText.trim(), {
        header: true,
        skipEmptyLines: true,
    });
    if (parsed.errors.length > 0) {
        const e = parsed.errors[0];
        throw new ResultsParseError(e.message, e.row === undefined ? undefined : e.row + 2);
    }
    const fields = parsed.meta.fields ?? [];
    if (fields.join(",") !== RESULTS_HEADER.join(",")) {
        throw new ResultsParseError(
            `unexpected header: got "${fields.join(",")}", want "${RESULTS_HEADER.join(",")}"`, 1);
    }
    return parsed.data.map((raw, i) => {
        const rec: Record<string, unknown> = {};
        for (const [key, text] of Object.entries(raw)) {
            if (!NUMERIC.has(key)) {
                rec[key] = text;
                continue;
            }
            const num = Number(text);
            if (text === "" || Number.isNaN(num) && text !== "nan") {
                throw new ResultsParseError(`field ${key} is not numeric: "${text}"`, i + 2);
            }
            rec[key] = text === "nan" ? NaN : num;
        }
        // a sweep-less run writes value=nan; normalize for the schema
        if (Number.isNaN(rec.value as number)) rec.value = 0;
        const check = ResultRowSchema.safeParse(rec);
        if (!check.success) {
            throw new ResultsParseError(check.error.issues[0].message, i + 2);
        }
        return check.data;
    });
}
