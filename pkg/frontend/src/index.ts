export { parseResults, ResultsParseError } from "./parseResults.js";
export { buildReport } from "./report.js";
export { buildSeries, trendViolations } from "./series.js";
export { compareSchemes, intervalsOverlap, verifyRow, wilsonInterval } from "./stats.js";
export { renderMerCurves } from "./svgPlot.js";
export { RESULTS_HEADER, ResultRowSchema, SCHEMES } from "./types.js";
export type { Comparison, Interval, RowCheck } from "./stats.js";
export type { ResultRow, Scheme, SchemeSeries } from "./types.js";
