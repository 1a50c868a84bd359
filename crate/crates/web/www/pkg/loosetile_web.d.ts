/* tslint:disable */
/* eslint-disable */

/**
 * Runs the extremal-case solver. On success the stages are returned
 * separately so the page can colour them.
 */
export function extremal_solve(h3: string, eps: number, seed: bigint): string;

/**
 * Exact factor search with a node budget.
 */
export function find_factor(h3: string, max_nodes: bigint): string;

/**
 * Generates `family` (space-barrier, covered-extremal, ideal-case or
 * random) at order `n`. `param` is the noise, rho or edge probability,
 * ignored for the barrier. Returns `{h3, n, edges, min_codegree, sets}`.
 */
export function generate(family: string, n: number, param: number, seed: bigint): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly extremal_solve: (a: number, b: number, c: number, d: bigint) => [number, number];
    readonly find_factor: (a: number, b: number, c: bigint) => [number, number];
    readonly generate: (a: number, b: number, c: number, d: number, e: bigint) => [number, number];
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
