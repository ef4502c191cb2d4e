import { escapeHtml, formatConfidence, formatDate, formatMoney } from "./format";
import type { CandidateRecord, EntitySummary, EventSummary, ProvenanceItem } from "./types";

/** Pure HTML renderers. Row order always equals the order served by the API. */

export function renderSuggestions(entities: EntitySummary[]): string {
  if (entities.length === 0) {
    return `<div class="empty">no entities</div>`;
  }
  const items = entities
    .map(
      (e) =>
        `<li class="suggestion" data-entity-id="${escapeHtml(e.entity_id)}">` +
        `${escapeHtml(e.name)}</li>`,
    )
    .join("");
  return `<ul class="suggestions">${items}</ul>`;
}

export function renderRelations(relations: string[], selected?: string): string {
  const options = relations
    .map((r) => {
      const flag = r === selected ? " selected" : "";
      return `<option value="${escapeHtml(r)}"${flag}>${escapeHtml(r)}</option>`;
    })
    .join("");
  return `<select id="relation-picker">${options}</select>`;
}

export function renderObjects(events: EventSummary[]): string {
  if (events.length === 0) {
    return `<div class="empty">no events for this entity and relation</div>`;
  }
  const items = events
    .map(
      (e) =>
        `<li class="object" data-event-key="${escapeHtml(e.event_key)}">` +
        `${escapeHtml(e.object_name)} <span class="conf">${formatConfidence(e.confidence)}</span></li>`,
    )
    .join("");
  return `<ul class="objects">${items}</ul>`;
}

function confidenceBar(confidence: number): string {
  const width = Math.round(confidence * 100);
  return (
    `<span class="bar"><span class="fill" style="width:${width}%"></span></span>` +
    `<span class="pct">${formatConfidence(confidence)}</span>`
  );
}

function methodBadges(methods: string[]): string {
  return methods.map((m) => `<span class="badge badge-${escapeHtml(m)}">${escapeHtml(m)}</span>`).join("");
}

export function renderCandidateTable(candidates: CandidateRecord[]): string {
  const rows = candidates
    .map((c) => {
      const buttons =
        c.status === "pending"
          ? `<button class="accept" data-record-id="${escapeHtml(c.record_id)}">accept</button>` +
            `<button class="reject" data-record-id="${escapeHtml(c.record_id)}">reject</button>`
          : "";
      return (
        `<tr class="candidate status-${c.status}" data-record-id="${escapeHtml(c.record_id)}">` +
        `<td>${escapeHtml(c.predicate_label)}</td>` +
        `<td>${escapeHtml(formatMoney(c.amount, c.currency))}</td>` +
        `<td>${escapeHtml(formatDate(c.date, c.date_granularity))}${
          c.date_is_publication ? ' <span class="pubdate">(publication date)</span>' : ""
        }</td>` +
        `<td>${confidenceBar(c.confidence)}</td>` +
        `<td>${methodBadges(c.methods)}</td>` +
        `<td class="status">${c.status}</td>` +
        `<td>${buttons}<button class="provenance" data-record-id="${escapeHtml(c.record_id)}">sources</button></td>` +
        `</tr>`
      );
    })
    .join("");
  return (
    `<table class="candidates"><thead><tr>` +
    `<th>predicate</th><th>value</th><th>date</th><th>confidence</th>` +
    `<th>methods</th><th>status</th><th></th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

/** Highlight the served char spans without re-parsing the sentence text. */
export function highlightSpans(
  text: string,
  valueSpan: [number, number],
  dateSpan: [number, number] | null,
): string {
  const marks: Array<{ start: number; end: number; cls: string }> = [
    { start: valueSpan[0], end: valueSpan[1], cls: "money" },
  ];
  if (dateSpan) {
    marks.push({ start: dateSpan[0], end: dateSpan[1], cls: "date" });
  }
  marks.sort((a, b) => a.start - b.start);
  let cursor = 0;
  let html = "";
  for (const mark of marks) {
    if (mark.start < cursor) {
      continue; // overlapping spans: keep the first
    }
    html += escapeHtml(text.slice(cursor, mark.start));
    html += `<mark class="${mark.cls}">${escapeHtml(text.slice(mark.start, mark.end))}</mark>`;
    cursor = mark.end;
  }
  html += escapeHtml(text.slice(cursor));
  return html;
}

export function renderProvenance(items: ProvenanceItem[]): string {
  if (items.length === 0) {
    return `<div class="empty">no provenance available</div>`;
  }
  const blocks = items
    .map(
      (item) =>
        `<article class="provenance-item">` +
        `<header>${escapeHtml(item.doc_id)} — published ${escapeHtml(item.published)}` +
        (item.title ? ` — ${escapeHtml(item.title)}` : "") +
        `</header>` +
        `<p>${highlightSpans(item.text, item.value_span, item.date_span)}</p>` +
        `</article>`,
    )
    .join("");
  return `<div class="provenance-pane">${blocks}</div>`;
}

export function renderError(message: string): string {
  return `<div class="error">${escapeHtml(message)} <button class="retry">retry</button></div>`;
}
