/** The five event-frame roles offered by the arc picker. */

export interface RoleEntry {
  short: string;
  long: string;
  /** Tooltip text shown in the picker. */
  semantics: string;
}

export const ROLES: readonly RoleEntry[] = [
  { short: 'a', long: 'agent', semantics: 'Action initiator (actor)' },
  { short: 'o', long: 'object', semantics: 'Action addressee' },
  { short: 's', long: 'source', semantics: 'Action addressee location before the event' },
  { short: 'd', long: 'destination', semantics: 'Action addressee location after the event' },
  { short: 'r', long: 'result', semantics: 'Action result' },
] as const;

export function roleByShort(short: string): RoleEntry {
  const entry = ROLES.find((r) => r.short === short);
  if (!entry) throw new Error(`unknown role denotation '${short}'`);
  return entry;
}
