import type { CandidateRecord, EntitySummary, EventSummary, ProvenanceItem } from "../src/types";

/** Canned responses conforming to the curation API contract. */

export const ENTITIES: EntitySummary[] = [
  { entity_id: "skype", name: "Skype", surface_forms: ["Skype", "Skype Technologies", "Skype Limited"] },
  { entity_id: "solstice_networks", name: "Solstice Networks", surface_forms: ["Solstice Networks"] },
];

export const RELATIONS = ["buy", "earn", "pay", "sell", "spend"];

export const EVENTS: EventSummary[] = [
  { object_id: "peoplesoft", object_name: "PeopleSoft", confidence: 0.64, event_key: "oracle~buy~peoplesoft" },
];

export const CANDIDATES: CandidateRecord[] = [
  {
    record_id: "oracle~buy~peoplesoft@5",
    event_key: "oracle~buy~peoplesoft",
    subject_id: "oracle",
    predicate_label: "acquire",
    predicate_class: "buy",
    object_id: "peoplesoft",
    amount: "10300000000",
    currency: "USD",
    date: "2004-01-01",
    date_granularity: "year",
    date_is_publication: false,
    published: "2007-03-01",
    confidence: 0.64,
    methods: ["supervised"],
    status: "pending",
  },
  {
    record_id: "oracle~buy~peoplesoft@0",
    event_key: "oracle~buy~peoplesoft",
    subject_id: "oracle",
    predicate_label: "acquire",
    predicate_class: "buy",
    object_id: "peoplesoft",
    amount: "7300000000",
    currency: "USD",
    date: "2003-01-01",
    date_granularity: "year",
    date_is_publication: false,
    published: "2003-11-25",
    confidence: 0.52,
    methods: ["earliest"],
    status: "pending",
  },
  {
    record_id: "oracle~buy~peoplesoft@7",
    event_key: "oracle~buy~peoplesoft",
    subject_id: "oracle",
    predicate_label: "purchase",
    predicate_class: "buy",
    object_id: "peoplesoft",
    amount: "20000000000",
    currency: "USD",
    date: "2007-01-01",
    date_granularity: "year",
    date_is_publication: false,
    published: "2007-03-21",
    confidence: 0.31,
    methods: ["latest"],
    status: "pending",
  },
];

// served oldest first; the UI renders rows in exactly this order
export const PROVENANCE: ProvenanceItem[] = [
  {
    sentence_id: "t5d1:0",
    doc_id: "t5d1",
    text: "Oracle moved to acquire PeopleSoft for $7.3 billion in 2003.",
    published: "2003-11-25",
    value_span: [39, 51],
    date_span: [55, 59],
    title: "A bid emerges",
  },
  {
    sentence_id: "t5d4:0",
    doc_id: "t5d4",
    text: "Oracle acquired PeopleSoft after raising its $1.3 billion bid to $7.038 billion in 2004.",
    published: "2005-12-23",
    value_span: [45, 57],
    date_span: [84, 88],
    title: "The long fight",
  },
  {
    sentence_id: "t5d5:0",
    doc_id: "t5d5",
    text: "Oracle acquired PeopleSoft for $10.3 billion in 2004.",
    published: "2007-03-01",
    value_span: [31, 44],
    date_span: [48, 52],
    title: "Deal recap",
  },
];

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

export interface MockRoute {
  match: (url: string, method: string) => boolean;
  respond: (call: RecordedCall) => { status: number; body: unknown };
}

export function makeMockFetch(routes: MockRoute[], calls: RecordedCall[]) {
  return async (url: string, init?: RequestInit): Promise<Response> => {
    const method = init?.method ?? "GET";
    const call: RecordedCall = {
      url,
      method,
      body: init?.body ? JSON.parse(String(init.body)) : undefined,
    };
    calls.push(call);
    for (const route of routes) {
      if (route.match(url, method)) {
        const { status, body } = route.respond(call);
        return new Response(JSON.stringify(body), {
          status,
          headers: { "Content-Type": "application/json" },
        });
      }
    }
    return new Response(JSON.stringify({ detail: "not found" }), { status: 404 });
  };
}

export function contractRoutes(overrides: Partial<Record<string, MockRoute>> = {}): MockRoute[] {
  const routes: Record<string, MockRoute> = {
    entities: {
      match: (url, method) => method === "GET" && url.includes("/api/entities"),
      respond: (call) => {
        const query = new URL(call.url, "http://x").searchParams.get("q") ?? "";
        const hits = ENTITIES.filter((e) =>
          e.surface_forms.some((f) => f.toLowerCase().startsWith(query.toLowerCase())),
        );
        return { status: 200, body: hits };
      },
    },
    relations: {
      match: (url, method) => method === "GET" && url.includes("/api/relations"),
      respond: () => ({ status: 200, body: RELATIONS }),
    },
    events: {
      match: (url, method) => method === "GET" && url.includes("/api/events?"),
      respond: () => ({ status: 200, body: EVENTS }),
    },
    candidates: {
      match: (url, method) => method === "GET" && url.includes("/candidates"),
      respond: () => ({ status: 200, body: CANDIDATES }),
    },
    decision: {
      match: (url, method) => method === "POST" && url.includes("/decision"),
      respond: (call) => {
        const id = decodeURIComponent(call.url.split("/records/")[1].split("/decision")[0]);
        const target = CANDIDATES.find((c) => c.record_id === id);
        if (!target) {
          return { status: 404, body: { detail: "unknown record" } };
        }
        const action = (call.body as { action: string }).action;
        return {
          status: 200,
          body: { ...target, status: action === "accept" ? "accepted" : "rejected" },
        };
      },
    },
    provenance: {
      match: (url, method) => method === "GET" && url.includes("/provenance"),
      respond: () => ({ status: 200, body: PROVENANCE }),
    },
  };
  return Object.values({ ...routes, ...overrides });
}
