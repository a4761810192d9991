// Shapes of the service's JSON API, verbatim.

export interface SourceStub {
  id: string;
  title: string;
}

export interface AskResponse {
  session_id: string;
  answer: string;
  uncited: boolean;
  citations: string[];
  sources: SourceStub[];
  flags: string[];
  strategy: string;
  trace: unknown[];
}

export interface StrategyDefaults {
  strategy: string;
  k: number;
  tau: number;
  max_iterations: number;
  rerank: boolean;
}

export interface StrategiesResponse {
  strategies: string[];
  defaults: StrategyDefaults;
}

export interface SourceDetail {
  persistent_id: string;
  title: string;
  description: string;
  custom_fields: Record<string, string[]>;
  file_manifest: { name: string; media_type: string; byte_size: number }[];
  collection_id: string;
}

export interface AskRequestBody {
  question: string;
  session_id?: string;
  strategy?: string;
}
