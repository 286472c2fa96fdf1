#!/usr/bin/env node
import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { parseResults, ResultsParseError } from "./parseResults.js";
import { buildReport } from "./report.js";
import { buildSeries } from "./series.js";
import { renderMerCurves } from "./svgPlot.js";

export async function main(argv: string[]): Promise<number> {
    const args = await yargs(argv)
        .command("report <csv>", "analyze a results.csv file", y => y
            .positional("csv", { type: "string", demandOption: true })
            .option("out", { type: "string", default: "report" }))
        .demandCommand(1)
        .strict()
        .parse();

    try {
        const rows = parseResults(readFileSync(args.csv as string, "utf-8"));
        mkdirSync(args.out as string, { recursive: true });
        const reportPath = join(args.out as string, "report.md");
        writeFileSync(reportPath, buildReport(rows));
        const series = buildSeries(rows);
        const written = [reportPath];
        if (series.some(s => s.values.length > 0)) {
            const svgPath = join(args.out as string, "mer_curves.svg");
            writeFileSync(svgPath, renderMerCurves(series));
            written.push(svgPath);
        }
        console.log(`wrote ${written.join(", ")}`);
        return 0;
    } catch (err) {
        if (err instanceof ResultsParseError || err instanceof Error) {
            console.error(`error: ${err.message}`);
            return 2;
        }
        throw err;
    }
}

const invokedDirectly = process.argv[1]?.endsWith("cli.js");
if (invokedDirectly) {
    main(hideBin(process.argv)).then(code => process.exit(code));
}
