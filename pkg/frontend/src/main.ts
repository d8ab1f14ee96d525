/** Browser entry point: wires the editor state to the page. */

import { ApiClient } from './client.js';
import { NODE_KINDS } from './model.js';
import type { NodeKind } from './model.js';
import { renderCanvas } from './render.js';
import { EditorState } from './state.js';
import { ROLES } from './roles.js';

const SERVICE_URL = (window as any).CONCEPTFORGE_URL ?? 'http://127.0.0.1:8000';

function $(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
}

function main(): void {
  const client = new ApiClient(SERVICE_URL);
  const state = new EditorState(client);
  let tool: { kind: 'select' } | { kind: 'place'; node: NodeKind } | { kind: 'arc'; arc: 'TArc' | 'RoleArc' } = {
    kind: 'select',
  };
  let arcSource: number | null = null;

  const canvas = $('canvas');
  const palette = $('palette');
  const diagnosticsPane = $('diagnostics');
  const previewPane = $('preview');
  const status = $('status');

  function redraw(): void {
    canvas.innerHTML = renderCanvas(state.elements, state.selection);
    status.textContent =
      `${state.envelope.name} v${state.envelope.version}` + (state.dirty ? ' *' : '');
  }

  function showDiagnostics(): void {
    if (state.diagnostics.length === 0) {
      diagnosticsPane.textContent = 'No diagnostics.';
      return;
    }
    diagnosticsPane.innerHTML = state.diagnostics
      .map((d) => `<div class="diag">[${d.code}] #${d.subject}: ${d.message}</div>`)
      .join('');
  }

  // Palette: one button per node kind, then the two arc tools.
  for (const kind of NODE_KINDS) {
    const btn = document.createElement('button');
    btn.textContent = kind;
    btn.onclick = () => {
      tool = { kind: 'place', node: kind };
    };
    palette.appendChild(btn);
  }
  for (const arc of ['TArc', 'RoleArc'] as const) {
    const btn = document.createElement('button');
    btn.textContent = arc === 'TArc' ? 'type arc' : 'role arc';
    btn.onclick = () => {
      tool = { kind: 'arc', arc };
      arcSource = null;
    };
    palette.appendChild(btn);
  }

  function pickRole(): string | null {
    const lines = ROLES.map((r) => `${r.short} — ${r.long}: ${r.semantics}`);
    const short = window.prompt(`Role?\n${lines.join('\n')}`, 'a');
    if (short === null) return null;
    return short.trim();
  }

  function hitTest(x: number, y: number): number | null {
    for (let i = state.elements.length - 1; i >= 0; i--) {
      const e = state.elements[i];
      if (e.type === 'TArc' || e.type === 'RoleArc' || e.type === 'Frame') continue;
      if (x >= e.left && x <= e.left + e.width && y >= e.top && y <= e.top + e.height) {
        return e.id;
      }
    }
    return null;
  }

  canvas.addEventListener('click', (ev) => {
    const rect = canvas.getBoundingClientRect();
    const x = ev.clientX - rect.left;
    const y = ev.clientY - rect.top;
    if (tool.kind === 'place') {
      const name = window.prompt('Name?', tool.node) ?? tool.node;
      state.palettePlace(tool.node, name, Math.round(x), Math.round(y));
      tool = { kind: 'select' };
    } else if (tool.kind === 'arc') {
      const hit = hitTest(x, y);
      if (hit === null) return;
      if (arcSource === null) {
        arcSource = hit;
        state.selection = hit;
      } else {
        const role = tool.arc === 'RoleArc' ? pickRole() : undefined;
        if (tool.arc !== 'RoleArc' || role) {
          state.drawArc(tool.arc, arcSource, hit, role ?? undefined);
        }
        arcSource = null;
        tool = { kind: 'select' };
      }
    } else {
      state.selection = hitTest(x, y);
    }
    redraw();
  });

  // Drag to move under the select tool.
  let drag: { id: number; dx: number; dy: number } | null = null;
  canvas.addEventListener('mousedown', (ev) => {
    if (tool.kind !== 'select') return;
    const rect = canvas.getBoundingClientRect();
    const x = ev.clientX - rect.left;
    const y = ev.clientY - rect.top;
    const hit = hitTest(x, y);
    if (hit === null) return;
    const e = state.elements.find((r) => r.id === hit)!;
    drag = { id: hit, dx: x - e.left, dy: y - e.top };
  });
  canvas.addEventListener('mouseup', (ev) => {
    if (!drag) return;
    const rect = canvas.getBoundingClientRect();
    const x = ev.clientX - rect.left;
    const y = ev.clientY - rect.top;
    state.moveElement(drag.id, Math.round(x - drag.dx), Math.round(y - drag.dy));
    drag = null;
    redraw();
  });

  document.addEventListener('keydown', (ev) => {
    if ((ev.ctrlKey || ev.metaKey) && ev.key === 'z') {
      ev.preventDefault();
      if (state.undo()) redraw();
    } else if (ev.key === 'Delete' && state.selection !== null) {
      state.deleteElement(state.selection);
      redraw();
    }
  });

  $('btn-validate').onclick = async () => {
    await state.refreshDiagnostics();
    showDiagnostics();
  };

  $('btn-preview').onclick = async () => {
    state.previewTarget = ($('preview-target') as HTMLSelectElement).value as
      | 'uml'
      | 'sql'
      | 'svg';
    try {
      await state.refreshPreview();
      if (state.previewTarget === 'svg') {
        previewPane.innerHTML = state.preview;
      } else {
        previewPane.textContent = state.preview;
      }
    } catch (err) {
      previewPane.textContent = String(err);
    }
  };

  $('btn-save').onclick = async () => {
    const result = await state.save();
    if (result.kind === 'conflict') {
      const overwrite = window.confirm(
        `The model changed on the server (version ${result.serverVersion}). Overwrite?`,
      );
      if (overwrite) await state.forceSave(result.serverVersion);
    }
    redraw();
  };

  $('btn-load').onclick = async () => {
    const names = await client.listModels();
    const name = window.prompt(
      `Model?\n${names.map((n) => `${n.name} (v${n.version})`).join('\n')}`,
    );
    if (!name) return;
    await state.load(name.trim());
    redraw();
    showDiagnostics();
  };

  redraw();
}

main();
