/* tslint:disable */
/* eslint-disable */

export class Curves {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly averaged: Float64Array;
    readonly n: Float64Array;
    readonly slopeAveraged: number;
    /**
     * NaN when too few points were recorded for a fit.
     */
    readonly slopeVanilla: number;
    readonly vanilla: Float64Array;
}

export class Oracle {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly cltHolds: boolean;
    readonly cltMargin: number;
    readonly kind: string;
    readonly meanLifetime: number;
    readonly principalValue: number;
    readonly qsd: Float64Array;
    readonly spectrumIm: Float64Array;
    readonly spectrumRe: Float64Array;
    readonly text: string;
}

export function cltSweep(template: string, values: Float64Array): Float64Array;

export function curves(chain: string, tours: number, replicates: number, seed: number, alpha: number): Curves;

export function oracle(chain: string): Oracle;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_curves_free: (a: number, b: number) => void;
    readonly __wbg_oracle_free: (a: number, b: number) => void;
    readonly cltSweep: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly curves: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly curves_averaged: (a: number) => [number, number];
    readonly curves_n: (a: number) => [number, number];
    readonly curves_slopeAveraged: (a: number) => number;
    readonly curves_slopeVanilla: (a: number) => number;
    readonly curves_vanilla: (a: number) => [number, number];
    readonly oracle: (a: number, b: number) => [number, number, number];
    readonly oracle_cltHolds: (a: number) => number;
    readonly oracle_cltMargin: (a: number) => number;
    readonly oracle_kind: (a: number) => [number, number];
    readonly oracle_meanLifetime: (a: number) => number;
    readonly oracle_principalValue: (a: number) => number;
    readonly oracle_qsd: (a: number) => [number, number];
    readonly oracle_spectrumIm: (a: number) => [number, number];
    readonly oracle_spectrumRe: (a: number) => [number, number];
    readonly oracle_text: (a: number) => [number, number];
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
