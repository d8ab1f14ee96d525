/**
 * Wire-format model types: a field-for-field mirror of the stored element
 * records, as served by the backend's JSON API.
 */

export type NodeKind = 'Concept' | 'Const' | 'Var' | 'Event' | 'Func' | 'Char';
export type ArcKind = 'TArc' | 'RoleArc';
export type ElementType = NodeKind | ArcKind | 'Frame';

export const NODE_KINDS: NodeKind[] = ['Concept', 'Const', 'Var', 'Event', 'Func', 'Char'];

export const DEFAULT_WIDTH = 100;
export const DEFAULT_HEIGHT = 50;
export const DEFAULT_DESCRIPTION = 'No Description';

export interface ElementRecord {
  id: number;
  type: ElementType;
  name: string;
  left: number;
  top: number;
  width: number;
  height: number;
  prev: number;
  next: number;
  description: string;
  extra?: [string, string][];
}

export interface ModelBody {
  elements: ElementRecord[];
}

export interface ModelEnvelope {
  name: string;
  version: number;
  model: ModelBody;
}

export interface Diagnostic {
  code: string;
  subject: number;
  message: string;
}

export function isNode(r: ElementRecord): boolean {
  return (NODE_KINDS as string[]).includes(r.type);
}

export function isArc(r: ElementRecord): boolean {
  return r.type === 'TArc' || r.type === 'RoleArc';
}

export function nextId(elements: ElementRecord[]): number {
  return elements.reduce((max, e) => Math.max(max, e.id), 0) + 1;
}

export function findElement(elements: ElementRecord[], id: number): ElementRecord | undefined {
  return elements.find((e) => e.id === id);
}

/** Structural equality over everything the backend persists. */
export function recordsEqual(a: ElementRecord[], b: ElementRecord[]): boolean {
  if (a.length !== b.length) return false;
  const sort = (xs: ElementRecord[]) => [...xs].sort((p, q) => p.id - q.id);
  const norm = (e: ElementRecord) => JSON.stringify([
    e.id, e.type, e.name, e.left, e.top, e.width, e.height,
    e.prev, e.next, e.description, e.extra ?? [],
  ]);
  const as = sort(a).map(norm);
  const bs = sort(b).map(norm);
  return as.every((x, i) => x === bs[i]);
}

export function cloneElements(elements: ElementRecord[]): ElementRecord[] {
  return elements.map((e) => ({ ...e, extra: e.extra ? e.extra.map((p) => [...p] as [string, string]) : undefined }));
}
