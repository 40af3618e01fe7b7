// DOM rendering: region boxes with +/- resolution buttons, a status banner,
// the move history, and optional analysis and reduction-trace panels.

import type { GameSnapshot, MoveRef, PositionAnalysis, SessionAnalysis } from './api.js';
import {
  Settings,
  annotationFor,
  canResolve,
  describeMove,
  outcomeSummary,
  regionLabel,
  statusLine,
} from './state.js';

export interface Handlers {
  onNewGame(settings: Settings): void;
  onHumanMove(move: MoveRef): void;
  onToggleAnalysis(show: boolean): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderSettings(settings: Settings, handlers: Handlers): HTMLElement {
  const form = el('div', 'settings');

  const position = el('input') as HTMLInputElement;
  position.value = settings.position;
  position.title = 'position, e.g. [(3),(1),(3)] or [(2),(2)]#[(3)]';

  const role = el('select') as HTMLSelectElement;
  for (const value of ['knotter', 'unknotter']) {
    const option = el('option', undefined, `engine plays ${value}`) as HTMLOptionElement;
    option.value = value;
    role.appendChild(option);
  }
  role.value = settings.engineRole;

  const first = el('select') as HTMLSelectElement;
  for (const [value, label] of [
    ['human', 'you start'],
    ['engine', 'engine starts'],
  ]) {
    const option = el('option', undefined, label) as HTMLOptionElement;
    option.value = value as string;
    first.appendChild(option);
  }
  first.value = settings.humanFirst ? 'human' : 'engine';

  const start = el('button', 'primary', 'new game') as HTMLButtonElement;
  start.onclick = () =>
    handlers.onNewGame({
      position: position.value.trim(),
      engineRole: role.value as Settings['engineRole'],
      humanFirst: first.value === 'human',
      showAnalysis: settings.showAnalysis,
    });

  const analysis = el('label', 'analysis-toggle');
  const checkbox = el('input') as HTMLInputElement;
  checkbox.type = 'checkbox';
  checkbox.checked = settings.showAnalysis;
  checkbox.onchange = () => handlers.onToggleAnalysis(checkbox.checked);
  analysis.append(checkbox, document.createTextNode(' analysis'));

  form.append(position, role, first, start, analysis);
  return form;
}

function renderBoard(
  snapshot: GameSnapshot,
  analysis: SessionAnalysis | null,
  handlers: Handlers,
): HTMLElement {
  const board = el('div', 'board');
  snapshot.components.forEach((regions, ci) => {
    if (ci > 0) board.appendChild(el('div', 'sum-sign', '#'));
    const comp = el('div', 'component');
    regions.forEach((region, ri) => {
      const box = el('div', region.unresolved > 0 ? 'region open' : 'region');
      box.appendChild(el('div', 'label', regionLabel(region.resolved, region.unresolved)));
      for (const sign of [1, -1]) {
        const move = { component: ci, region: ri, sign };
        const button = el('button', undefined, sign > 0 ? '+' : '−') as HTMLButtonElement;
        button.disabled = !canResolve(snapshot, move);
        button.onclick = () => handlers.onHumanMove(move);
        const note = annotationFor(analysis, move);
        if (note) {
          button.classList.add(note.winning_for_mover ? 'winning' : 'losing');
          button.title = `outcome after: ${note.outcome_after}`;
        }
        box.appendChild(button);
      }
      comp.appendChild(box);
    });
    board.appendChild(comp);
  });
  return board;
}

function renderHistory(snapshot: GameSnapshot): HTMLElement {
  const panel = el('div', 'history');
  panel.appendChild(el('h3', undefined, 'moves'));
  if (snapshot.history.length === 0) {
    panel.appendChild(el('p', 'empty', 'none yet'));
    return panel;
  }
  const list = el('ol');
  for (const entry of snapshot.history) {
    list.appendChild(el('li', entry.mover, describeMove(entry, snapshot.components.length)));
  }
  panel.appendChild(list);
  return panel;
}

function renderAnalysis(report: PositionAnalysis): HTMLElement {
  const panel = el('div', 'position-analysis');
  panel.appendChild(el('h3', undefined, 'position'));
  panel.appendChild(el('p', undefined, `outcome ${outcomeSummary(report)}, parity ${report.parity}`));
  panel.appendChild(
    el(
      'p',
      undefined,
      `unknotter first: ${report.winners.unknotter_first} wins; ` +
        `knotter first: ${report.winners.knotter_first} wins`,
    ),
  );
  for (const part of report.classification ?? []) {
    const block = el('div', 'trace');
    block.appendChild(el('h4', undefined, `${part.component}: ${part.kind}`));
    if (part.trace.length > 0) {
      const list = el('ul');
      for (const line of part.trace) list.appendChild(el('li', undefined, line));
      block.appendChild(list);
    }
    panel.appendChild(block);
  }
  return panel;
}

export interface ViewState {
  settings: Settings;
  snapshot: GameSnapshot | null;
  sessionAnalysis: SessionAnalysis | null;
  positionAnalysis: PositionAnalysis | null;
  error: string | null;
  busy: boolean;
}

export function render(root: HTMLElement, view: ViewState, handlers: Handlers): void {
  root.replaceChildren();
  root.appendChild(el('h1', undefined, 'knotting-unknotting'));
  root.appendChild(renderSettings(view.settings, handlers));

  if (view.error) root.appendChild(el('div', 'banner error', view.error));

  if (!view.snapshot) {
    root.appendChild(el('p', 'empty', 'start a game to play'));
    return;
  }

  const banner = el('div', `banner ${view.snapshot.status}`, statusLine(view.snapshot));
  if (view.busy) banner.textContent = 'engine thinking…';
  root.appendChild(banner);
  root.appendChild(el('div', 'position-text', view.snapshot.position));
  root.appendChild(
    renderBoard(view.snapshot, view.settings.showAnalysis ? view.sessionAnalysis : null, handlers),
  );
  root.appendChild(renderHistory(view.snapshot));
  if (view.settings.showAnalysis && view.positionAnalysis) {
    root.appendChild(renderAnalysis(view.positionAnalysis));
  }
}
