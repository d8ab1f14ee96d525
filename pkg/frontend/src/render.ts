/**
 * Canvas rendering. Produces an SVG string with the same shape vocabulary
 * the backend uses for exports: ellipses for concepts, plain rectangles
 * for variables and constants, rounded rectangles for predicates, and
 * labelled connector lines.
 */

import { findElement, isArc, isNode } from './model.js';
import type { ElementRecord } from './model.js';

const MARGIN = 20;

function esc(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function center(e: ElementRecord): [number, number] {
  return [e.left + e.width / 2, e.top + e.height / 2];
}

function shapeFor(e: ElementRecord, selected: boolean): string {
  const cls = selected ? ' class="selected"' : '';
  const label =
    `<text x="${e.left + e.width / 2}" y="${e.top + e.height / 2}" ` +
    `text-anchor="middle" dominant-baseline="middle">${esc(e.name)}</text>`;
  switch (e.type) {
    case 'Concept':
      return (
        `<ellipse cx="${e.left + e.width / 2}" cy="${e.top + e.height / 2}" ` +
        `rx="${e.width / 2}" ry="${e.height / 2}"${cls}/>` + label
      );
    case 'Event':
    case 'Func':
    case 'Char':
      return (
        `<rect x="${e.left}" y="${e.top}" width="${e.width}" ` +
        `height="${e.height}" rx="8"${cls}/>` + label
      );
    default:
      return (
        `<rect x="${e.left}" y="${e.top}" width="${e.width}" ` +
        `height="${e.height}"${cls}/>` + label
      );
  }
}

function arcFor(e: ElementRecord, elements: ElementRecord[], selected: boolean): string {
  const source = findElement(elements, e.prev);
  const target = findElement(elements, e.next);
  if (!source || !target) return '';
  const [x1, y1] = center(source);
  const [x2, y2] = center(target);
  const cls = selected ? ' class="selected"' : '';
  const label = e.type === 'TArc' ? 't' : e.name;
  return (
    `<line x1="${x1}" y1="${y1}" x2="${x2}" y2="${y2}"${cls}/>` +
    `<text x="${(x1 + x2) / 2}" y="${(y1 + y2) / 2 - 4}" ` +
    `text-anchor="middle" class="arc-label">${esc(label)}</text>`
  );
}

export function renderCanvas(elements: ElementRecord[], selection: number | null): string {
  const nodes = elements.filter(isNode);
  const arcs = elements.filter(isArc);
  let viewBox = '0 0 40 40';
  if (nodes.length > 0) {
    const minX = Math.min(...nodes.map((n) => n.left)) - MARGIN;
    const minY = Math.min(...nodes.map((n) => n.top)) - MARGIN;
    const maxX = Math.max(...nodes.map((n) => n.left + n.width)) + MARGIN;
    const maxY = Math.max(...nodes.map((n) => n.top + n.height)) + MARGIN;
    viewBox = `${minX} ${minY} ${maxX - minX} ${maxY - minY}`;
  }
  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="${viewBox}">`,
    // arcs first so node shapes sit on top of the lines
    ...arcs.map((a) => arcFor(a, elements, a.id === selection)),
    ...nodes.map((n) => shapeFor(n, n.id === selection)),
    '</svg>',
  ];
  return parts.filter(Boolean).join('\n');
}
