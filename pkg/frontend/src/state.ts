import { ApiClient, ApiError } from "./api.js";
import type { AskResponse, SourceStub } from "./types.js";

export const SOURCES_FROM_RETRIEVAL_FLAG = "sources_from_retrieval";

export interface Turn {
  question: string;
  answer: string;
  uncited: boolean;
  sources: SourceStub[];
  fromRetrieval: boolean;
  trace: unknown[];
}

export interface ViewState {
  sessionId: string | null;
  turns: Turn[];
  pending: boolean;
  strategy: string;
  error: string | null;
}

export function initialState(strategy = "vanilla"): ViewState {
  return { sessionId: null, turns: [], pending: false, strategy, error: null };
}

function turnOf(question: string, response: AskResponse): Turn {
  return {
    question,
    answer: response.answer,
    uncited: response.uncited,
    sources: response.sources,
    fromRetrieval: response.flags.includes(SOURCES_FROM_RETRIEVAL_FLAG),
    trace: response.trace,
  };
}

/** Ask the server one question and fold the reply into the state.
 *
 * Blank questions and in-flight asks send nothing.  Failures set the
 * error banner and re-enable input; the turn list is never touched on
 * error.  Follow-ups reuse the stored session id.
 */
export async function submitQuestion(
  state: ViewState,
  client: ApiClient,
  question: string,
): Promise<ViewState> {
  const trimmed = question.trim();
  if (!trimmed || state.pending) return state;

  state.pending = true;
  state.error = null;
  try {
    const response = await client.ask({
      question: trimmed,
      session_id: state.sessionId ?? undefined,
      strategy: state.strategy,
    });
    state.sessionId = response.session_id;
    state.turns.push(turnOf(trimmed, response));
  } catch (error) {
    state.error =
      error instanceof ApiError
        ? `the assistant could not answer (${error.status}): ${error.message}`
        : "the assistant is unreachable";
  } finally {
    state.pending = false;
  }
  return state;
}

/** Selection applies to later questions only; past turns stay as served. */
export function selectStrategy(state: ViewState, name: string): ViewState {
  state.strategy = name;
  return state;
}
