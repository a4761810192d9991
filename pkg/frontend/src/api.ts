import type {
  AskRequestBody,
  AskResponse,
  SourceDetail,
  StrategiesResponse,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

async function readDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
    if (body.detail !== undefined) return JSON.stringify(body.detail);
  } catch {
    // fall through to the status line
  }
  return `request failed with status ${response.status}`;
}

/** Thin client over the documented JSON API; transport is injectable so
 * tests run against a mock. */
export class ApiClient {
  constructor(
    private readonly fetchFn: FetchLike,
    private readonly baseUrl = "",
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`);
    if (!response.ok) throw new ApiError(response.status, await readDetail(response));
    return (await response.json()) as T;
  }

  async ask(body: AskRequestBody): Promise<AskResponse> {
    const response = await this.fetchFn(`${this.baseUrl}/api/ask`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) throw new ApiError(response.status, await readDetail(response));
    return (await response.json()) as AskResponse;
  }

  strategies(): Promise<StrategiesResponse> {
    return this.getJson<StrategiesResponse>("/api/strategies");
  }

  source(id: string): Promise<SourceDetail> {
    return this.getJson<SourceDetail>(`/api/sources/${encodeURIComponent(id)}`);
  }
}
