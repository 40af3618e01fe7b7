// Typed client for the knotgame HTTP API. Everything the UI knows about the
// game arrives through these responses; there is no game logic on this side.

export type Role = 'unknotter' | 'knotter';
export type Mover = 'human' | 'engine';
export type GameStatus = 'in-progress' | 'unknotter-won' | 'knotter-won';

export interface RegionState {
  resolved: number;
  unresolved: number;
}

export interface MoveRef {
  component: number;
  region: number;
  sign: number;
}

export interface HistoryEntry extends MoveRef {
  mover: Mover;
}

export interface GameSnapshot {
  id: string;
  position: string;
  components: RegionState[][];
  engine_plays: Role;
  to_move: Mover | null;
  status: GameStatus;
  winner: Role | null;
  version: number;
  history: HistoryEntry[];
  legal_moves: MoveRef[];
  engine_move?: MoveRef;
}

export interface MoveAnnotation extends MoveRef {
  outcome_after: string;
  winning_for_mover: boolean;
}

export interface SessionAnalysis {
  id: string;
  position: string;
  side_to_move: Role | null;
  moves: MoveAnnotation[];
}

export interface ComponentClassification {
  component: string;
  kind: 'odd-even-reducible' | 'irreducible-21';
  trace: string[];
}

export interface PositionAnalysis {
  position: string;
  parity: number;
  outcome: string;
  winners: { unknotter_first: Role; knotter_first: Role };
  moves: Array<MoveRef & { outcome_after: string; winning_for_unknotter: boolean }>;
  classification?: ComponentClassification[];
}

export interface CreateGameRequest {
  position: string;
  engine_role?: Role;
  first_mover?: Mover;
}

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class GameClient {
  constructor(
    private readonly baseUrl: string = '',
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const body = await res.json().catch(() => null);
    if (!res.ok) {
      const code = body && typeof body.code === 'string' ? body.code : `HTTP${res.status}`;
      const message = body && typeof body.message === 'string' ? body.message : res.statusText;
      throw new ApiError(code, message, res.status);
    }
    return body as T;
  }

  private post<T>(path: string, payload?: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: payload === undefined ? undefined : JSON.stringify(payload),
    });
  }

  health(): Promise<{ status: string; sessions: number }> {
    return this.request('/health');
  }

  createGame(req: CreateGameRequest): Promise<GameSnapshot> {
    return this.post('/games', req);
  }

  getGame(id: string): Promise<GameSnapshot> {
    return this.request(`/games/${id}`);
  }

  submitMove(id: string, move: MoveRef, version?: number): Promise<GameSnapshot> {
    return this.post(`/games/${id}/moves`, version === undefined ? move : { ...move, version });
  }

  engineMove(id: string): Promise<GameSnapshot> {
    return this.post(`/games/${id}/engine-move`);
  }

  sessionAnalysis(id: string): Promise<SessionAnalysis> {
    return this.request(`/games/${id}/analysis`);
  }

  analyzePosition(position: string): Promise<PositionAnalysis> {
    return this.request(`/analyze?position=${encodeURIComponent(position)}`);
  }
}
