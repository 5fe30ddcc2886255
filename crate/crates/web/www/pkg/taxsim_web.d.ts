/* tslint:disable */
/* eslint-disable */

/**
 * A loaded taxonomy with its probability model.
 */
export class Session {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * All word-level measures for a pair, with witnesses.
     */
    compare(w1: string, w2: string): string;
    /**
     * Frequency, probability, IC and depth for every concept.
     */
    concepts(): string;
    /**
     * The bundled WordNet-style sample.
     */
    static mini(): Session;
    constructor(edges: string, lexicon: string, counts: string, log_base: number, plural_fold: boolean);
    words(): string;
}

/**
 * Correlations recomputed from the bundled per-item table, plus the
 * points for a scatter plot.
 */
export function replay(): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_session_free: (a: number, b: number) => void;
    readonly replay: () => [number, number];
    readonly session_compare: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly session_concepts: (a: number) => [number, number];
    readonly session_mini: () => number;
    readonly session_new: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly session_words: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
