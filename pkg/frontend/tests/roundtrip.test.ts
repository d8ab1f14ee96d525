import { execFileSync, spawn, type ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/client.js';
import { recordsEqual } from '../src/model.js';
import { EditorState } from '../src/state.js';

/**
 * End-to-end run against the real backend: the editor draws a model,
 * saves it over HTTP, reloads it, and compares what came back.
 */

const PORT = 8000 + (process.pid % 1000);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let modelDir: string;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 100; i++) {
    try {
      const res = await fetch(`${BASE}/api/models`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 100));
  }
  throw new Error('backend did not come up');
}

beforeAll(async () => {
  modelDir = mkdtempSync(join(tmpdir(), 'conceptforge-'));
  server = spawn('conceptforge', ['serve', '--port', String(PORT), modelDir], {
    stdio: 'ignore',
  });
  await waitForServer();
}, 20000);

afterAll(() => {
  server?.kill();
  rmSync(modelDir, { recursive: true, force: true });
});

/** Draw the worked supply example: three concepts, an event, three typed
 * variables, and agent/object/destination role arcs. */
function drawSupply(state: EditorState): void {
  const manager = state.palettePlace('Concept', 'manager', 20, 20);
  const candidate = state.palettePlace('Concept', 'candidate', 220, 20);
  const employer = state.palettePlace('Concept', 'employer', 420, 20);
  const supply = state.palettePlace('Event', 'supply', 220, 260);
  const who = state.palettePlace('Var', 'who', 20, 140);
  const whom = state.palettePlace('Var', 'whom', 220, 140);
  const where = state.palettePlace('Var', 'where', 420, 140);
  state.drawArc('TArc', who.id, manager.id);
  state.drawArc('TArc', whom.id, candidate.id);
  state.drawArc('TArc', where.id, employer.id);
  state.drawArc('RoleArc', supply.id, who.id, 'a');
  state.drawArc('RoleArc', supply.id, whom.id, 'o');
  state.drawArc('RoleArc', supply.id, where.id, 'd');
}

describe('editor against the live backend', () => {
  it('saves a drawn model and reads it back unchanged', async () => {
    const client = new ApiClient(BASE);
    const state = new EditorState(client, 'supply');
    drawSupply(state);
    expect(state.elements).toHaveLength(13);

    const saved = await state.save();
    expect(saved.kind).toBe('saved');
    expect(state.envelope.version).toBe(1);
    expect(state.dirty).toBe(false);

    const drawn = state.envelope.model.elements;
    const reloaded = new EditorState(client);
    await reloaded.load('supply');
    expect(reloaded.envelope.version).toBe(1);
    expect(recordsEqual(reloaded.elements, drawn)).toBe(true);
  }, 20000);

  it('reports a clean model through validate', async () => {
    const client = new ApiClient(BASE);
    const state = new EditorState(client, 'supply');
    await state.load('supply');
    expect(await state.refreshDiagnostics()).toEqual([]);
  });

  it('flags an untyped variable before saving', async () => {
    const client = new ApiClient(BASE);
    const state = new EditorState(client, 'supply');
    await state.load('supply');
    state.palettePlace('Var', 'stray', 600, 140);
    const diags = await state.refreshDiagnostics();
    expect(diags.map((d) => d.code)).toContain('UNTYPED_VARIABLE');
  });

  it('previews the same SQL the command line emits', async () => {
    const client = new ApiClient(BASE);
    const state = new EditorState(client, 'supply');
    await state.load('supply');
    state.previewTarget = 'sql';
    const preview = await state.refreshPreview();
    const cliOut = execFileSync(
      'conceptforge',
      ['compile', '--target', 'sql', join(modelDir, 'supply.cmx')],
      { encoding: 'utf-8' },
    );
    expect(preview).toBe(cliOut);
  });

  it('detects concurrent saves through the version check', async () => {
    const client = new ApiClient(BASE);
    const first = new EditorState(client, 'supply');
    const second = new EditorState(client, 'supply');
    await first.load('supply');
    await second.load('supply');

    first.renameElement(first.elements[0].id, 'boss');
    expect((await first.save()).kind).toBe('saved');

    second.renameElement(second.elements[0].id, 'chief');
    const clash = await second.save();
    expect(clash.kind).toBe('conflict');
    if (clash.kind === 'conflict') {
      const forced = await second.forceSave(clash.serverVersion);
      expect(forced.kind).toBe('saved');
    }
  });
});
