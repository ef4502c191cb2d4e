import { ApiClient, ApiError } from "./api";
import {
  renderCandidateTable,
  renderError,
  renderObjects,
  renderProvenance,
  renderRelations,
  renderSuggestions,
} from "./render";
import type { CandidateRecord, DecisionAction } from "./types";

export type Region =
  | "suggestions"
  | "relations"
  | "objects"
  | "candidates"
  | "provenance";

export type RenderSink = (region: Region, html: string) => void;

/** UI state machine. All extraction data flows in through the API client;
 * nothing is recomputed on the client beyond display formatting. */
export class CuratorController {
  subjectId: string | null = null;
  relation: string | null = null;
  eventKey: string | null = null;
  candidates: CandidateRecord[] = [];

  private debounceTimer: ReturnType<typeof setTimeout> | null = null;
  private decisionInFlight = false;

  constructor(
    private readonly api: ApiClient,
    private readonly render: RenderSink,
    private readonly curator: string = "curator",
    readonly debounceMs: number = 250,
  ) {}

  /** Debounced typeahead; an empty query issues no request at all. */
  searchInput(query: string): void {
    if (this.debounceTimer !== null) {
      clearTimeout(this.debounceTimer);
      this.debounceTimer = null;
    }
    const trimmed = query.trim();
    if (!trimmed) {
      this.render("suggestions", "");
      return;
    }
    this.debounceTimer = setTimeout(() => {
      this.debounceTimer = null;
      void this.runSearch(trimmed);
    }, this.debounceMs);
  }

  private async runSearch(query: string): Promise<void> {
    try {
      const entities = await this.api.searchEntities(query);
      this.render("suggestions", renderSuggestions(entities));
    } catch (err) {
      this.render("suggestions", renderError(describe(err)));
    }
  }

  async selectEntity(entityId: string): Promise<void> {
    this.subjectId = entityId;
    this.relation = null;
    this.eventKey = null;
    this.candidates = [];
    this.render("objects", "");
    this.render("candidates", "");
    this.render("provenance", "");
    try {
      const relations = await this.api.relations();
      this.render("relations", renderRelations(relations));
    } catch (err) {
      this.render("relations", renderError(describe(err)));
    }
  }

  async selectRelation(relation: string): Promise<void> {
    if (!this.subjectId) {
      return;
    }
    this.relation = relation;
    try {
      const events = await this.api.eventsFor(this.subjectId, relation);
      this.render("objects", renderObjects(events));
    } catch (err) {
      this.render("objects", renderError(describe(err)));
    }
  }

  async openEvent(eventKey: string): Promise<void> {
    this.eventKey = eventKey;
    try {
      this.candidates = await this.api.candidates(eventKey);
      this.render("candidates", renderCandidateTable(this.candidates));
    } catch (err) {
      this.render("candidates", renderError(describe(err)));
    }
  }

  /** Optimistic accept/reject reconciled with the server; a conflict (409)
   * reloads the table instead of re-sending the decision. */
  async decide(recordId: string, action: DecisionAction): Promise<void> {
    if (this.decisionInFlight) {
      return;
    }
    const target = this.candidates.find((c) => c.record_id === recordId);
    if (!target || target.status !== "pending") {
      return;
    }
    this.decisionInFlight = true;
    this.applyLocalDecision(recordId, action);
    this.render("candidates", renderCandidateTable(this.candidates));
    try {
      const updated = await this.api.decide(recordId, action, this.curator);
      this.candidates = this.candidates.map((c) =>
        c.record_id === updated.record_id ? updated : c,
      );
      this.render("candidates", renderCandidateTable(this.candidates));
    } catch (err) {
      if (err instanceof ApiError && err.status === 409 && this.eventKey) {
        await this.openEvent(this.eventKey);
      } else {
        this.render("candidates", renderError(describe(err)));
      }
    } finally {
      this.decisionInFlight = false;
    }
  }

  private applyLocalDecision(recordId: string, action: DecisionAction): void {
    this.candidates = this.candidates.map((c) => {
      if (c.record_id === recordId) {
        return { ...c, status: action === "accept" ? "accepted" : "rejected" };
      }
      if (action === "accept" && c.status === "pending") {
        return { ...c, status: "rejected" };
      }
      return c;
    });
  }

  async showProvenance(recordId: string): Promise<void> {
    try {
      const items = await this.api.provenance(recordId);
      this.render("provenance", renderProvenance(items));
    } catch (err) {
      this.render("provenance", renderError(describe(err)));
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    return err.status === 0 ? "network failure" : `request failed (${err.status})`;
  }
  return String(err);
}
