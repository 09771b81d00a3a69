/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const analyze_config: (a: number, b: number) => [number, number];
export const example_config: (a: number, b: number) => [number, number];
export const example_names: () => [number, number];
export const jacobian_hilbert: (a: number, b: number, c: number) => [number, number];
export const theta_convergence: (a: number, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
