/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const band_demo: (a: number, b: number, c: number) => [number, number];
export const brick_demo: (a: number, b: number, c: number) => [number, number];
export const search_demo: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
