import { describe, expect, it } from "vitest";

import { formatConfidence, formatDate, formatMoney } from "../src/format";
import {
  highlightSpans,
  renderCandidateTable,
  renderProvenance,
  renderSuggestions,
} from "../src/render";
import { CANDIDATES, ENTITIES, PROVENANCE } from "./fixtures";

describe("formatting", () => {
  it("renders compact money", () => {
    expect(formatMoney("10300000000", "USD")).toBe("$10.3 billion");
    expect(formatMoney("450000000", "USD")).toBe("$450 million");
    expect(formatMoney("1650000000", "EUR")).toBe("€1.65 billion");
    expect(formatMoney("1200", "CHF")).toBe("CHF 1,200");
  });

  it("renders dates at stored granularity, never implying precision", () => {
    expect(formatDate("2004-01-01", "year")).toBe("2004");
    expect(formatDate("2006-10-01", "month")).toBe("October 2006");
    expect(formatDate("2006-10-09", "day")).toBe("2006-10-09");
  });

  it("renders confidence as a percentage", () => {
    expect(formatConfidence(0.64)).toBe("64%");
    expect(formatConfidence(1)).toBe("100%");
  });
});

describe("renderSuggestions", () => {
  it("matches the suggestion list snapshot", () => {
    expect(renderSuggestions(ENTITIES)).toMatchSnapshot();
  });

  it("renders an empty state for zero matches", () => {
    expect(renderSuggestions([])).toContain("no entities");
  });
});

describe("renderCandidateTable", () => {
  it("keeps rows in exactly the served order", () => {
    const html = renderCandidateTable(CANDIDATES);
    const positions = CANDIDATES.map((c) => html.indexOf(c.record_id));
    expect(positions).toEqual([...positions].sort((a, b) => a - b));
    expect(positions.every((p) => p >= 0)).toBe(true);
  });

  it("matches the candidate table snapshot", () => {
    expect(renderCandidateTable(CANDIDATES)).toMatchSnapshot();
  });

  it("shows method badges and the publication-date marker", () => {
    const withPub = [
      { ...CANDIDATES[0], date_is_publication: true },
    ];
    const html = renderCandidateTable(withPub);
    expect(html).toContain("badge-supervised");
    expect(html).toContain("(publication date)");
  });
});

describe("provenance highlighting", () => {
  it("wraps exactly the served character spans", () => {
    const item = PROVENANCE[0];
    const html = highlightSpans(item.text, item.value_span, item.date_span);
    const [vs, ve] = item.value_span;
    expect(html).toContain(`<mark class="money">${item.text.slice(vs, ve)}</mark>`);
    const [ds, de] = item.date_span ?? [0, 0];
    expect(html).toContain(`<mark class="date">${item.text.slice(ds, de)}</mark>`);
    const stripped = html.replace(/<\/?mark[^>]*>/g, "");
    expect(stripped).toBe(item.text);
  });

  it("escapes markup inside the sentence text", () => {
    const html = highlightSpans("a <b> $5 </b>", [6, 8], null);
    expect(html).toContain("&lt;b&gt;");
    expect(html).toContain(`<mark class="money">$5</mark>`);
  });

  it("matches the provenance pane snapshot", () => {
    expect(renderProvenance(PROVENANCE)).toMatchSnapshot();
  });
});
