// Pure view-model helpers. The one rule here: never invent game knowledge.
// Legality, turn order and outcomes all mirror the latest server snapshot.

import type {
  GameSnapshot,
  HistoryEntry,
  MoveAnnotation,
  MoveRef,
  PositionAnalysis,
  Role,
  SessionAnalysis,
} from './api.js';

export interface Settings {
  position: string;
  engineRole: Role;
  humanFirst: boolean;
  showAnalysis: boolean;
}

export const defaultSettings: Settings = {
  position: '[(3),(1),(3)]',
  engineRole: 'knotter',
  humanFirst: true,
  showAnalysis: false,
};

export function humanRole(snapshot: GameSnapshot): Role {
  return snapshot.engine_plays === 'unknotter' ? 'knotter' : 'unknotter';
}

export function roleName(role: Role): string {
  return role === 'unknotter' ? 'Unknotter' : 'Knotter';
}

export function statusLine(snapshot: GameSnapshot): string {
  if (snapshot.status === 'unknotter-won') return 'Unknotter wins';
  if (snapshot.status === 'knotter-won') return 'Knotter wins';
  if (snapshot.to_move === 'human') {
    return `Your move (you play the ${roleName(humanRole(snapshot))})`;
  }
  return `Engine to move (${roleName(snapshot.engine_plays)})`;
}

export function sameMove(a: MoveRef, b: MoveRef): boolean {
  return a.component === b.component && a.region === b.region && a.sign === b.sign;
}

export function isLegal(snapshot: GameSnapshot, move: MoveRef): boolean {
  return snapshot.legal_moves.some((m) => sameMove(m, move));
}

export function canResolve(snapshot: GameSnapshot, move: MoveRef): boolean {
  return snapshot.status === 'in-progress' && snapshot.to_move === 'human' && isLegal(snapshot, move);
}

/// "a(b)" in the position grammar: resolved twists plus open crossings.
export function regionLabel(resolved: number, unresolved: number): string {
  if (unresolved === 0) return `${resolved}`;
  if (resolved === 0) return `(${unresolved})`;
  return `${resolved}(${unresolved})`;
}

export function describeMove(entry: HistoryEntry, componentCount: number): string {
  const sign = entry.sign > 0 ? '+1' : '-1';
  const where =
    componentCount > 1
      ? `component ${entry.component + 1}, region ${entry.region + 1}`
      : `region ${entry.region + 1}`;
  return `${entry.mover} resolves ${where} with ${sign}`;
}

export function annotationFor(
  analysis: SessionAnalysis | null,
  move: MoveRef,
): MoveAnnotation | undefined {
  return analysis?.moves.find((m) => sameMove(m, move));
}

// Moves the session analysis marks as winning for the side to move.
export function winningMoves(analysis: SessionAnalysis | null): MoveRef[] {
  if (!analysis) return [];
  return analysis.moves.filter((m) => m.winning_for_mover);
}

export function outcomeSummary(analysis: PositionAnalysis): string {
  const names = { U: 'Unknotter win', K: 'Knotter win', '1': 'first-player win', '2': 'second-player win' };
  const label = names[analysis.outcome as keyof typeof names] ?? analysis.outcome;
  return `${analysis.outcome} (${label})`;
}
