const MONTHS = [
  "January", "February", "March", "April", "May", "June",
  "July", "August", "September", "October", "November", "December",
];

const SYMBOLS: Record<string, string> = { USD: "$", EUR: "€", GBP: "£", JPY: "¥" };

function trimTrailingZeros(value: number): string {
  return value.toFixed(3).replace(/\.?0+$/, "");
}

/** Compact human form: "$10.3 billion", "€450 million", "CHF 1,200". */
export function formatMoney(amount: string, currency: string): string {
  const value = Number(amount);
  const prefix = SYMBOLS[currency] ?? `${currency} `;
  if (!Number.isFinite(value)) {
    return `${prefix}${amount}`;
  }
  if (value >= 1e9) {
    return `${prefix}${trimTrailingZeros(value / 1e9)} billion`;
  }
  if (value >= 1e6) {
    return `${prefix}${trimTrailingZeros(value / 1e6)} million`;
  }
  return `${prefix}${value.toLocaleString("en-US")}`;
}

/** Dates render at their stored granularity: "2004", "October 2006", "2006-10-09". */
export function formatDate(isoDate: string, granularity: "day" | "month" | "year"): string {
  const [year, month] = isoDate.split("-");
  if (granularity === "year") {
    return year;
  }
  if (granularity === "month") {
    return `${MONTHS[Number(month) - 1]} ${year}`;
  }
  return isoDate;
}

export function formatConfidence(confidence: number): string {
  return `${Math.round(confidence * 100)}%`;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}
