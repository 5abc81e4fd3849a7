/* tslint:disable */
/* eslint-disable */

/**
 * Group ring isomorphism and the twisted relation for two abelian groups.
 */
export function compare_abelian(g: string, h: string, field: string): string;

/**
 * Wedderburn signature of `F^α G`; `class` is a descriptor or empty for the group algebra.
 */
export function decompose_abelian(group: string, field: string, _class: string): string;

/**
 * H²(G, F^*) with one descriptor per cyclic generator.
 */
export function h2_abelian(group: string, field: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly compare_abelian: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly decompose_abelian: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly h2_abelian: (a: number, b: number, c: number, d: number) => [number, number];
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
