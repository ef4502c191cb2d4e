/** Shapes served by the curation HTTP API. The UI renders these verbatim. */

export interface EntitySummary {
  entity_id: string;
  name: string;
  surface_forms: string[];
}

export interface EventSummary {
  object_id: string;
  object_name: string;
  confidence: number;
  event_key: string;
}

export type RecordStatus = "pending" | "accepted" | "rejected";

export interface CandidateRecord {
  record_id: string;
  event_key: string;
  subject_id: string;
  predicate_label: string;
  predicate_class: string;
  object_id: string;
  amount: string;
  currency: string;
  date: string;
  date_granularity: "day" | "month" | "year";
  date_is_publication: boolean;
  published: string;
  confidence: number;
  methods: string[];
  status: RecordStatus;
}

export interface ProvenanceItem {
  sentence_id: string;
  doc_id: string;
  text: string;
  published: string;
  value_span: [number, number];
  date_span: [number, number] | null;
  title?: string;
  descriptors?: string[];
}

export type DecisionAction = "accept" | "reject";
