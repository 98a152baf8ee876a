/**
 * In-memory console session: query history plus per-turn rating state.
 *
 * The session is the only mutable state in the console. It enforces the
 * workflow rules: one query in flight at a time, a failed query leaves the
 * history untouched, and a rating can only follow a displayed draft with
 * all five categories set to integers in 1..5.
 */

import { ConsoleApi, Mode, QueryResponse, RatingPayload } from "./api.js";

export const RATING_CATEGORIES = [
  "Wording",
  "ProblemAnalysis",
  "Guidance",
  "Treatment",
  "EnvironmentalAnalysis",
] as const;

export type RatingCategory = (typeof RATING_CATEGORIES)[number];
export type RatingValues = Partial<Record<RatingCategory, number>>;
export type RatingState = "unrated" | "submitted";

export interface QueryTurn {
  id: number;
  query: string;
  mode: Mode;
  response: QueryResponse;
  ratingState: RatingState;
}

export class SessionError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SessionError";
  }
}

export class ConsoleSession {
  readonly turns: QueryTurn[] = [];
  private nextId = 1;
  private inFlight = false;

  constructor(
    private readonly api: ConsoleApi,
    readonly raterId: string,
  ) {}

  get busy(): boolean {
    return this.inFlight;
  }

  canSubmit(text: string): boolean {
    return text.trim().length > 0 && !this.inFlight;
  }

  async submitQuery(text: string, mode: Mode): Promise<QueryTurn> {
    if (!text.trim()) {
      throw new SessionError("query text is empty");
    }
    if (this.inFlight) {
      throw new SessionError("a query is already in flight");
    }
    this.inFlight = true;
    try {
      const response = await this.api.submitQuery(text, mode);
      const turn: QueryTurn = {
        id: this.nextId++,
        query: text,
        mode,
        response,
        ratingState: "unrated",
      };
      this.turns.push(turn);
      return turn;
    } finally {
      this.inFlight = false;
    }
  }

  canRate(turn: QueryTurn): boolean {
    return turn.ratingState === "unrated" && Boolean(turn.response.draft.text);
  }

  /** Categories that are missing or outside the integer 1..5 range. */
  ratingProblems(values: RatingValues): RatingCategory[] {
    const problems: RatingCategory[] = [];
    for (const category of RATING_CATEGORIES) {
      const value = values[category];
      if (
        value === undefined ||
        !Number.isInteger(value) ||
        value < 1 ||
        value > 5
      ) {
        problems.push(category);
      }
    }
    return problems;
  }

  buildRatingPayload(turn: QueryTurn, values: RatingValues): RatingPayload[] {
    return RATING_CATEGORIES.map((category) => ({
      rater_id: this.raterId,
      model_id: turn.response.draft.model_id,
      mode: turn.mode,
      category,
      value: values[category] as number,
    }));
  }

  async submitRating(turn: QueryTurn, values: RatingValues): Promise<number> {
    if (!this.canRate(turn)) {
      throw new SessionError("no unrated draft to rate");
    }
    const problems = this.ratingProblems(values);
    if (problems.length > 0) {
      throw new SessionError(`incomplete rating: ${problems.join(", ")}`);
    }
    const { accepted } = await this.api.submitRatings(
      this.buildRatingPayload(turn, values),
    );
    turn.ratingState = "submitted";
    return accepted;
  }
}
