/* tslint:disable */
/* eslint-disable */

/**
 * The log-moment balance sampled across the tie interval.
 */
export function balance_curve(data: string, alpha: string, points: number): string;

/**
 * Location, estimates from every method, and the tie interval if any.
 */
export function estimate(data: string, alpha: string): string;

/**
 * The perturbed loss over `[x_(1), x_(n)]` and its minimizer for one ε.
 */
export function loss_curve(data: string, alpha: string, eps: number, points: number): string;

/**
 * Minimizers over a decade schedule and their distance to the limit.
 */
export function sweep(data: string, alpha: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly balance_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly estimate: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly loss_curve: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number, number];
    readonly sweep: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
