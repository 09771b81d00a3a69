/* tslint:disable */
/* eslint-disable */

/**
 * Runs the full pipeline on configuration text.
 */
export function analyze_config(text: string): string;

/**
 * Text of a bundled configuration, or an empty string.
 */
export function example_config(name: string): string;

/**
 * Names of the bundled configurations.
 */
export function example_names(): string;

/**
 * Hilbert function of the Jacobian ring of the Fermat hypersurface of
 * the given degree, and its middle Hodge numbers.
 */
export function jacobian_hilbert(weights: string, degree: number): string;

/**
 * Errors of the Newton projection on Phi0 + eps * eta for random
 * directions of both kinds, with fitted log-log slopes.
 */
export function theta_convergence(directions: number, seed: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_config: (a: number, b: number) => [number, number];
    readonly example_config: (a: number, b: number) => [number, number];
    readonly example_names: () => [number, number];
    readonly jacobian_hilbert: (a: number, b: number, c: number) => [number, number];
    readonly theta_convergence: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
