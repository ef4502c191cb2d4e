import type {
  CandidateRecord,
  DecisionAction,
  EntitySummary,
  EventSummary,
  ProvenanceItem,
} from "./types";

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client over the curation API; every number shown in the UI
 * comes from one of these calls. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(`network failure: ${String(err)}`, 0);
    }
    if (!response.ok) {
      throw new ApiError(`${init?.method ?? "GET"} ${path} -> ${response.status}`, response.status);
    }
    return (await response.json()) as T;
  }

  searchEntities(query: string): Promise<EntitySummary[]> {
    return this.request(`/api/entities?q=${encodeURIComponent(query)}`);
  }

  relations(): Promise<string[]> {
    return this.request("/api/relations");
  }

  eventsFor(subjectId: string, relation: string): Promise<EventSummary[]> {
    const params = `subject=${encodeURIComponent(subjectId)}&relation=${encodeURIComponent(relation)}`;
    return this.request(`/api/events?${params}`);
  }

  candidates(eventKey: string): Promise<CandidateRecord[]> {
    return this.request(`/api/events/${encodeURIComponent(eventKey)}/candidates`);
  }

  decide(recordId: string, action: DecisionAction, curator: string): Promise<CandidateRecord> {
    return this.request(`/api/records/${encodeURIComponent(recordId)}/decision`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ action, curator }),
    });
  }

  provenance(recordId: string): Promise<ProvenanceItem[]> {
    return this.request(`/api/records/${encodeURIComponent(recordId)}/provenance`);
  }
}
