import { describe, expect, it } from 'vitest';

import type { GameSnapshot, SessionAnalysis } from '../src/api.js';
import {
  annotationFor,
  canResolve,
  describeMove,
  humanRole,
  isLegal,
  regionLabel,
  statusLine,
  winningMoves,
} from '../src/state.js';

function snapshot(overrides: Partial<GameSnapshot> = {}): GameSnapshot {
  return {
    id: 'abc',
    position: '[(2),(2)]',
    components: [
      [
        { resolved: 0, unresolved: 2 },
        { resolved: 0, unresolved: 2 },
      ],
    ],
    engine_plays: 'unknotter',
    to_move: 'human',
    status: 'in-progress',
    winner: null,
    version: 0,
    history: [],
    legal_moves: [
      { component: 0, region: 0, sign: 1 },
      { component: 0, region: 0, sign: -1 },
      { component: 0, region: 1, sign: 1 },
      { component: 0, region: 1, sign: -1 },
    ],
    ...overrides,
  };
}

describe('roles and status', () => {
  it('derives the human role from the engine role', () => {
    expect(humanRole(snapshot())).toBe('knotter');
    expect(humanRole(snapshot({ engine_plays: 'knotter' }))).toBe('unknotter');
  });

  it('renders turn and result banners', () => {
    expect(statusLine(snapshot())).toBe('Your move (you play the Knotter)');
    expect(statusLine(snapshot({ to_move: 'engine' }))).toBe('Engine to move (Unknotter)');
    expect(statusLine(snapshot({ status: 'unknotter-won', to_move: null }))).toBe('Unknotter wins');
    expect(statusLine(snapshot({ status: 'knotter-won', to_move: null }))).toBe('Knotter wins');
  });
});

describe('legality mirroring', () => {
  it('accepts exactly the server-listed moves', () => {
    const snap = snapshot();
    expect(isLegal(snap, { component: 0, region: 0, sign: 1 })).toBe(true);
    expect(isLegal(snap, { component: 0, region: 0, sign: 2 })).toBe(false);
    expect(isLegal(snap, { component: 1, region: 0, sign: 1 })).toBe(false);
  });

  it('only enables buttons on the human turn of a live game', () => {
    const move = { component: 0, region: 0, sign: 1 };
    expect(canResolve(snapshot(), move)).toBe(true);
    expect(canResolve(snapshot({ to_move: 'engine' }), move)).toBe(false);
    expect(canResolve(snapshot({ status: 'unknotter-won', to_move: null }), move)).toBe(false);
  });
});

describe('labels', () => {
  it('prints regions in the position grammar', () => {
    expect(regionLabel(0, 3)).toBe('(3)');
    expect(regionLabel(2, 0)).toBe('2');
    expect(regionLabel(-1, 2)).toBe('-1(2)');
    expect(regionLabel(0, 0)).toBe('0');
  });

  it('describes history entries', () => {
    const entry = { component: 0, region: 1, sign: -1, mover: 'engine' as const };
    expect(describeMove(entry, 1)).toBe('engine resolves region 2 with -1');
    expect(describeMove(entry, 2)).toBe('engine resolves component 1, region 2 with -1');
  });
});

describe('analysis overlay', () => {
  const analysis: SessionAnalysis = {
    id: 'abc',
    position: '[(2),(2)]',
    side_to_move: 'knotter',
    moves: [
      { component: 0, region: 0, sign: 1, outcome_after: '1', winning_for_mover: false },
      { component: 0, region: 0, sign: -1, outcome_after: '2', winning_for_mover: true },
    ],
  };

  it('finds the annotation for a concrete move', () => {
    const note = annotationFor(analysis, { component: 0, region: 0, sign: -1 });
    expect(note?.winning_for_mover).toBe(true);
    expect(annotationFor(analysis, { component: 0, region: 1, sign: 1 })).toBeUndefined();
    expect(annotationFor(null, { component: 0, region: 0, sign: 1 })).toBeUndefined();
  });

  it('filters the winning moves', () => {
    expect(winningMoves(analysis)).toHaveLength(1);
    expect(winningMoves(null)).toEqual([]);
  });
});
