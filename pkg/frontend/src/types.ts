import { z } from "zod";

/** Column order of the simulator's results.csv; the header must match exactly. */
export const RESULTS_HEADER = [
    "scheme", "swept_param", "value", "trials", "failures", "mer",
    "ci_low", "ci_high", "bler", "p_clean", "p_assumed", "predicted_mer", "seed",
] as const;

export const SCHEMES = ["swsc", "eswsc", "ldpc_stacked", "mldpc"] as const;
export type Scheme = (typeof SCHEMES)[number];

export const ResultRowSchema = z.object({
    scheme: z.enum(SCHEMES),
    swept_param: z.string(),
    value: z.number(),
    trials: z.number().int().positive(),
    failures: z.number().int().nonnegative(),
    mer: z.number().min(0).max(1),
    ci_low: z.number().min(0).max(1),
    ci_high: z.number().min(0).max(1),
    bler: z.number().min(0).max(1),
    p_clean: z.number().min(0).max(1),
    p_assumed: z.number().min(0).max(1),
    predicted_mer: z.number().min(0).max(1),
    seed: z.number().int(),
}).refine(r => r.failures <= r.trials, { message: "failures exceed trials" })
    .refine(r => r.ci_low <= r.mer && r.mer <= r.ci_high,
        { message: "mer outside its own confidence interval" });

export type ResultRow = z.infer<typeof ResultRowSchema>;

export interface SchemeSeries {
    scheme: Scheme;
    sweptParam: string;
    values: number[];
    mer: number[];
    ciLow: number[];
    ciHigh: number[];
}
