/**
 * Editor state: one open model envelope plus selection, dirty tracking,
 * diagnostics and a bounded undo history. All mutations snapshot the
 * element list first, so undo is a straight pop.
 */

import { ApiClient, ConflictError } from './client.js';
import {
  DEFAULT_DESCRIPTION,
  DEFAULT_HEIGHT,
  DEFAULT_WIDTH,
  cloneElements,
  findElement,
  isNode,
  nextId,
} from './model.js';
import type { Diagnostic, ElementRecord, ModelEnvelope, NodeKind } from './model.js';
import { roleByShort } from './roles.js';

export const UNDO_LIMIT = 100;

export type ArcTool = 'TArc' | 'RoleArc';

export interface SaveConflict {
  kind: 'conflict';
  serverVersion: number;
}

export interface SaveOk {
  kind: 'saved';
  version: number;
}

export class EditorState {
  envelope: ModelEnvelope;
  selection: number | null = null;
  dirty = false;
  diagnostics: Diagnostic[] = [];
  /** Last compiled artifact shown in the preview pane. */
  preview = '';
  previewTarget: 'uml' | 'sql' | 'svg' = 'sql';
  private undoStack: ElementRecord[][] = [];

  constructor(private client: ApiClient, name = 'untitled') {
    this.envelope = { name, version: 0, model: { elements: [] } };
  }

  get elements(): ElementRecord[] {
    return this.envelope.model.elements;
  }

  private checkpoint(): void {
    this.undoStack.push(cloneElements(this.elements));
    if (this.undoStack.length > UNDO_LIMIT) this.undoStack.shift();
    this.dirty = true;
  }

  undo(): boolean {
    const prior = this.undoStack.pop();
    if (!prior) return false;
    this.envelope.model.elements = prior;
    if (this.selection !== null && !findElement(prior, this.selection)) {
      this.selection = null;
    }
    return true;
  }

  /** Drop a node from the palette at the given canvas position. */
  palettePlace(kind: NodeKind, name: string, left: number, top: number): ElementRecord {
    this.checkpoint();
    const record: ElementRecord = {
      id: nextId(this.elements),
      type: kind,
      name,
      left,
      top,
      width: DEFAULT_WIDTH,
      height: DEFAULT_HEIGHT,
      prev: 0,
      next: 0,
      description: DEFAULT_DESCRIPTION,
    };
    this.elements.push(record);
    this.selection = record.id;
    return record;
  }

  /**
   * Connect two nodes. Type arcs carry no role; role arcs must name one of
   * the five picker roles by its short denotation.
   */
  drawArc(tool: ArcTool, sourceId: number, targetId: number, roleShort?: string): ElementRecord {
    const source = findElement(this.elements, sourceId);
    const target = findElement(this.elements, targetId);
    if (!source || !target) throw new Error('arc endpoints must exist');
    if (!isNode(source) || !isNode(target)) throw new Error('arcs connect nodes only');
    let name = 't';
    if (tool === 'RoleArc') {
      if (!roleShort) throw new Error('role arcs need a role');
      name = roleByShort(roleShort).short;
    }
    this.checkpoint();
    const record: ElementRecord = {
      id: nextId(this.elements),
      type: tool,
      name,
      left: 0,
      top: 0,
      width: 0,
      height: 0,
      prev: sourceId,
      next: targetId,
      description: DEFAULT_DESCRIPTION,
    };
    this.elements.push(record);
    this.selection = record.id;
    return record;
  }

  /** Typing shortcut: Const nodes reference their concept via `next`. */
  setConstantConcept(constId: number, conceptId: number): void {
    const node = findElement(this.elements, constId);
    if (!node || node.type !== 'Const') throw new Error('not a constant');
    this.checkpoint();
    node.next = conceptId;
  }

  /** Dragging changes position only: size and links are untouched. */
  moveElement(id: number, left: number, top: number): void {
    const record = findElement(this.elements, id);
    if (!record || !isNode(record)) return;
    this.checkpoint();
    record.left = left;
    record.top = top;
  }

  renameElement(id: number, name: string): void {
    const record = findElement(this.elements, id);
    if (!record) return;
    this.checkpoint();
    record.name = name;
  }

  deleteElement(id: number): void {
    if (!findElement(this.elements, id)) return;
    this.checkpoint();
    this.envelope.model.elements = this.elements.filter(
      (e) => e.id !== id && e.prev !== id && e.next !== id,
    );
    if (this.selection === id) this.selection = null;
  }

  async load(name: string): Promise<void> {
    this.envelope = await this.client.loadModel(name);
    this.undoStack = [];
    this.selection = null;
    this.dirty = false;
    this.diagnostics = [];
  }

  async save(): Promise<SaveOk | SaveConflict> {
    try {
      const version = await this.client.saveModel(this.envelope);
      this.envelope.version = version;
      this.dirty = false;
      return { kind: 'saved', version };
    } catch (err) {
      if (err instanceof ConflictError) {
        return { kind: 'conflict', serverVersion: err.currentVersion };
      }
      throw err;
    }
  }

  /** Re-save over a concurrent edit after the user confirmed the overwrite. */
  async forceSave(serverVersion: number): Promise<SaveOk | SaveConflict> {
    this.envelope.version = serverVersion;
    return this.save();
  }

  async refreshDiagnostics(): Promise<Diagnostic[]> {
    this.diagnostics = await this.client.validate(
      this.envelope.name,
      this.envelope.model,
    );
    return this.diagnostics;
  }

  async refreshPreview(): Promise<string> {
    this.preview = await this.client.compile(
      this.envelope.name,
      this.previewTarget,
      this.envelope.model,
    );
    return this.preview;
  }
}
