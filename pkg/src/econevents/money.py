"""Recognition and exact-decimal normalization of monetary expressions.

The grammar covers currency symbols, names, and ISO codes placed before or
after the amount; plain, comma-grouped, and decimal numerals; spelled-out
numbers; and magnitude words up to trillions, in mixed forms such as
"$3.2 billion" or "two billion US dollars".  Amounts are kept as exact
decimals so downstream tolerance comparisons are reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path

_DATA_DIR = Path(__file__).parent / "data"


def format_amount(amount: Decimal) -> str:
    """Plain decimal string; integral values drop their fractional part."""
    integral = amount.to_integral_value()
    if amount == integral:
        amount = integral
    return format(amount, "f")


@dataclass(frozen=True)
class MonetaryValue:
    amount: Decimal
    currency: str
    char_span: tuple[int, int]
    raw_text: str

    def to_record(self) -> dict:
        return {
            "amount": format_amount(self.amount),
            "currency": self.currency,
            "char_span": list(self.char_span),
            "raw_text": self.raw_text,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "MonetaryValue":
        return cls(
            amount=Decimal(rec["amount"]),
            currency=rec["currency"],
            char_span=tuple(rec["char_span"]),
            raw_text=rec.get("raw_text", ""),
        )


def _load_currency_table() -> tuple[dict[str, str], dict[tuple[str, ...], str], set[str]]:
    symbols: dict[str, str] = {}
    names: dict[tuple[str, ...], str] = {}
    codes: set[str] = set()
    for line in (_DATA_DIR / "currencies.tsv").read_text(encoding="utf-8").splitlines():
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        code, symbol_field, name_field = line.split("\t")
        codes.add(code)
        for sym in filter(None, symbol_field.split("|")):
            symbols[sym] = code
        for name in filter(None, name_field.split("|")):
            names[tuple(name.lower().split())] = code
    return symbols, names, codes


_SYMBOLS, _NAMES, _CODES = _load_currency_table()
_MAX_NAME_WORDS = max(len(k) for k in _NAMES)

_SYMBOL_ALTERNATION = "|".join(re.escape(s) for s in sorted(_SYMBOLS, key=len, reverse=True))
_TOKEN_RE = re.compile(
    rf"(?P<sym>{_SYMBOL_ALTERNATION})"
    r"|(?P<number>\d{1,3}(?:,\d{3})+(?:\.\d+)?|\d+(?:\.\d+)?)"
    r"|(?P<word>[A-Za-z]+)"
)

_UNITS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5, "six": 6, "seven": 7,
    "eight": 8, "nine": 9, "ten": 10, "eleven": 11, "twelve": 12, "thirteen": 13,
    "fourteen": 14, "fifteen": 15, "sixteen": 16, "seventeen": 17, "eighteen": 18,
    "nineteen": 19,
}
_TENS = {
    "twenty": 20, "thirty": 30, "forty": 40, "fifty": 50,
    "sixty": 60, "seventy": 70, "eighty": 80, "ninety": 90,
}
_MAGNITUDES = {
    "hundred": 10**2,
    "thousand": 10**3,
    "million": 10**6,
    "billion": 10**9,
    "trillion": 10**12,
}
_SCALE_WORDS = ("thousand", "million", "billion", "trillion")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    start: int
    end: int


def _tokenize(text: str) -> list[_Token]:
    out = []
    for m in _TOKEN_RE.finditer(text):
        kind = m.lastgroup or "word"
        out.append(_Token(kind, m.group(), m.start(), m.end()))
    return out


def _parse_word_number(tokens: list[_Token], i: int) -> tuple[Decimal, int] | None:
    """Parse a spelled-out integer starting at token i; returns (value, last_index)."""
    total = 0
    current = 0
    last_value_idx = -1
    j = i
    n = len(tokens)
    while j < n and tokens[j].kind == "word":
        w = tokens[j].text.lower()
        if w == "and":
            if last_value_idx < 0:
                break
            j += 1
            continue
        if w in _UNITS:
            current += _UNITS[w]
        elif w in _TENS:
            current += _TENS[w]
        elif w == "hundred":
            current = (current or 1) * 100
        elif w in _SCALE_WORDS:
            total += (current or 1) * _MAGNITUDES[w]
            current = 0
        else:
            break
        last_value_idx = j
        j += 1
    if last_value_idx < 0:
        return None
    return Decimal(total + current), last_value_idx


def _scan_quantity(tokens: list[_Token], i: int) -> tuple[Decimal, int, int] | None:
    """A numeral or word-number phrase with optional magnitude words."""
    tok = tokens[i]
    if tok.kind == "number":
        amount = Decimal(tok.text.replace(",", ""))
        j = i + 1
        while j < len(tokens) and tokens[j].kind == "word" and tokens[j].text.lower() in _MAGNITUDES:
            amount *= _MAGNITUDES[tokens[j].text.lower()]
            j += 1
        return amount, i, j - 1
    if tok.kind == "word":
        parsed = _parse_word_number(tokens, i)
        if parsed is not None:
            value, last = parsed
            return value, i, last
    return None


def _currency_after(tokens: list[_Token], j: int) -> tuple[str, int] | None:
    """Match a currency name or ISO code starting at token j (exclusive end)."""
    n = len(tokens)
    for length in range(min(_MAX_NAME_WORDS, n - j), 0, -1):
        window = tokens[j : j + length]
        if all(t.kind == "word" for t in window):
            key = tuple(t.text.lower() for t in window)
            if key in _NAMES:
                return _NAMES[key], j + length - 1
    if j < n and tokens[j].kind == "word" and tokens[j].text in _CODES:
        return tokens[j].text, j
    return None


def recognize_monetary_values(text: str) -> list[MonetaryValue]:
    """All normalized (amount, currency) mentions in the text, left to right."""
    tokens = _tokenize(text)
    out: list[MonetaryValue] = []
    used_until = -1
    i = 0
    n = len(tokens)
    while i < n:
        if tokens[i].start <= used_until:
            i += 1
            continue
        quantity = _scan_quantity(tokens, i)
        if quantity is None:
            i += 1
            continue
        amount, qi, qj = quantity
        currency = None
        first_tok, last_tok = qi, qj
        prev = tokens[qi - 1] if qi > 0 else None
        if prev is not None and prev.start > used_until:
            if prev.kind == "sym":
                currency = _SYMBOLS[prev.text]
                first_tok = qi - 1
            elif prev.kind == "word" and prev.text in _CODES:
                currency = prev.text
                first_tok = qi - 1
        if currency is None:
            after = _currency_after(tokens, qj + 1)
            if after is not None:
                currency, last_tok = after
        if currency is None or amount <= 0:
            i = qj + 1
            continue
        start, end = tokens[first_tok].start, tokens[last_tok].end
        out.append(MonetaryValue(amount, currency, (start, end), text[start:end]))
        used_until = end
        i = last_tok + 1
    return out
