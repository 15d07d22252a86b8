/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_curves_free: (a: number, b: number) => void;
export const __wbg_oracle_free: (a: number, b: number) => void;
export const cltSweep: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const curves: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const curves_averaged: (a: number) => [number, number];
export const curves_n: (a: number) => [number, number];
export const curves_slopeAveraged: (a: number) => number;
export const curves_slopeVanilla: (a: number) => number;
export const curves_vanilla: (a: number) => [number, number];
export const oracle: (a: number, b: number) => [number, number, number];
export const oracle_cltHolds: (a: number) => number;
export const oracle_cltMargin: (a: number) => number;
export const oracle_kind: (a: number) => [number, number];
export const oracle_meanLifetime: (a: number) => number;
export const oracle_principalValue: (a: number) => number;
export const oracle_qsd: (a: number) => [number, number];
export const oracle_spectrumIm: (a: number) => [number, number];
export const oracle_spectrumRe: (a: number) => [number, number];
export const oracle_text: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
