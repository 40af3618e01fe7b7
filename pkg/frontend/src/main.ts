import { ApiError, GameClient } from './api.js';
import { Settings, defaultSettings } from './state.js';
import { Handlers, ViewState, render } from './ui.js';

// Served by `knotgame serve --ui-dir frontend` under /ui, same origin as the API.
const client = new GameClient('..');

const view: ViewState = {
  settings: { ...defaultSettings },
  snapshot: null,
  sessionAnalysis: null,
  positionAnalysis: null,
  error: null,
  busy: false,
};

const root = document.getElementById('app');
if (!root) throw new Error('missing #app element');

function repaint(): void {
  render(root as HTMLElement, view, handlers);
}

function showError(err: unknown): void {
  view.error = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
}

async function refreshAnalysis(): Promise<void> {
  view.sessionAnalysis = null;
  view.positionAnalysis = null;
  if (!view.settings.showAnalysis || !view.snapshot) return;
  try {
    if (view.snapshot.status === 'in-progress' && view.snapshot.to_move === 'human') {
      view.sessionAnalysis = await client.sessionAnalysis(view.snapshot.id);
    }
    view.positionAnalysis = await client.analyzePosition(view.snapshot.position);
  } catch (err) {
    showError(err);
  }
}

async function engineReplyIfDue(): Promise<void> {
  while (view.snapshot && view.snapshot.status === 'in-progress' && view.snapshot.to_move === 'engine') {
    view.busy = true;
    repaint();
    view.snapshot = await client.engineMove(view.snapshot.id);
    view.busy = false;
  }
}

const handlers: Handlers = {
  async onNewGame(settings: Settings) {
    view.settings = settings;
    view.error = null;
    try {
      view.snapshot = await client.createGame({
        position: settings.position,
        engine_role: settings.engineRole,
        first_mover: settings.humanFirst ? 'human' : 'engine',
      });
      await engineReplyIfDue();
      await refreshAnalysis();
    } catch (err) {
      showError(err);
    }
    repaint();
  },

  async onHumanMove(move) {
    if (!view.snapshot) return;
    view.error = null;
    try {
      view.snapshot = await client.submitMove(view.snapshot.id, move, view.snapshot.version);
      await engineReplyIfDue();
      await refreshAnalysis();
    } catch (err) {
      showError(err);
      view.busy = false;
    }
    repaint();
  },

  async onToggleAnalysis(show) {
    view.settings.showAnalysis = show;
    await refreshAnalysis();
    repaint();
  },
};

repaint();
