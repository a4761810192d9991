export class ApiError extends Error {
    constructor(status, detail) {
        super(detail);
        this.status = status;
        this.name = "ApiError";
    }
}
async function readDetail(response) {
    try {
        const body = (await response.json());
        if (typeof body.detail === "string")
            return body.detail;
        if (body.detail !== undefined)
            return JSON.stringify(body.detail);
    }
    catch {
        // fall through to the status line
    }
    return `request failed with status ${response.status}`;
}
/** Thin client over the documented JSON API; transport is injectable so
 * tests run against a mock. */
export class ApiClient {
    constructor(fetchFn, baseUrl = "") {
        this.fetchFn = fetchFn;
        this.baseUrl = baseUrl;
    }
    async getJson(path) {
        const response = await this.fetchFn(`${this.baseUrl}${path}`);
        if (!response.ok)
            throw new ApiError(response.status, await readDetail(response));
        return (await response.json());
    }
    async ask(body) {
        const response = await this.fetchFn(`${this.baseUrl}/api/ask`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(body),
        });
        if (!response.ok)
            throw new ApiError(response.status, await readDetail(response));
        return (await response.json());
    }
    strategies() {
        return this.getJson("/api/strategies");
    }
    source(id) {
        return this.getJson(`/api/sources/${encodeURIComponent(id)}`);
    }
}
