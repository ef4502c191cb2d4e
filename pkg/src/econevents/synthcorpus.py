"""Deterministic synthetic news corpus with conflicting event reportings.

Every ground-truth event is reported several times: correct reports carry
the true value with an explicit event date, rumor-style reports appear a
year early with a value off by far more than 10%, and a few decoy events
have no ground truth at all.  The generated text is designed to round-trip
through the shipped annotators.

Regenerate the packaged fixtures with ``python -m econevents.synthcorpus``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from datetime import date
from decimal import Decimal
from pathlib import Path

from .corpus import Document
from .jsonl import write_records
from .matching import GroundTruthEvent

DEFAULT_SEED = 20070411

_MONTH_NAMES = (
    "January", "February", "March", "April", "May", "June",
    "July", "August", "September", "October", "November", "December",
)

_FILLERS = (
    "Analysts said the quarter was otherwise uneventful.",
    "The companies declined to comment.",
    "Executives are expected to discuss the plan with regulators.",
    "Industry observers called the terms unremarkable.",
    "Advisers on both sides were not named.",
    "Trading volumes stayed close to seasonal averages.",
)

_FILLER_DOCS = (
    ("Quantum Industries posts steady quarter",
     "Quantum Industries reported quarterly revenue of $2 billion. Margins were flat.",
     ["Business"]),
    ("Meridian Bank names finance chief",
     "Meridian Bank named a new chief financial officer. The appointment takes effect next quarter.",
     ["Business"]),
    ("Redwood Software climbs on upgrade",
     "Redwood Software shares rose after an analyst upgrade. Volume was heavy.",
     ["Markets"]),
    ("Atlas Energy sees strong demand",
     "Atlas Energy said winter demand was strong. Officials gave no forecast.",
     ["Business"]),
    ("Fund managers stay cautious",
     "A survey of fund managers found little appetite for risk. Cash allocations edged higher.",
     ["Markets"]),
    ("Solstice Networks expands abroad",
     "Solstice Networks opened a research office in Lisbon. Hiring begins this fall.",
     ["Technology"]),
)


@dataclass(frozen=True)
class _EventSpec:
    subject: str
    object: str
    predicate: str
    noun: str | None
    amount: Decimal
    year: int
    rumored: bool
    n_correct: int
    near_report: bool = False
    extra_rumor: bool = False
    multi_value: bool = False
    retro_report: bool = False


EVENTS: tuple[_EventSpec, ...] = (
    _EventSpec("Northbridge Capital", "Bluebird Analytics", "acquire", "acquisition",
               Decimal("1200000000"), 2004, True, 3, near_report=True),
    _EventSpec("Northbridge Capital", "Copper Mountain Mining", "purchase", "purchase",
               Decimal("450000000"), 2006, False, 2, near_report=True, retro_report=True),
    _EventSpec("Redwood Software", "Driftwood Studios", "acquire", "acquisition",
               Decimal("2500000000"), 2005, True, 3, extra_rumor=True),
    _EventSpec("Redwood Software", "Eastgate Logistics", "buy", None,
               Decimal("800000000"), 2007, False, 2, retro_report=True),
    _EventSpec("Atlas Energy", "Foxglove Biotech", "acquire", "acquisition",
               Decimal("3400000000"), 2003, True, 2),
    _EventSpec("Pinnacle Media", "Glasswing Aviation", "purchase", "purchase",
               Decimal("950000000"), 2006, True, 3),
    _EventSpec("Quantum Industries", "Harborview Media", "buy", None,
               Decimal("1800000000"), 2005, False, 3, multi_value=True, retro_report=True),
    _EventSpec("Meridian Bank", "Juniper Robotics", "invest", "investment",
               Decimal("600000000"), 2004, True, 2, extra_rumor=True),
    _EventSpec("Meridian Bank", "Kestrel Security", "invest", "investment",
               Decimal("250000000"), 2007, False, 2),
    _EventSpec("Solstice Networks", "Mosswood Games", "pay", None,
               Decimal("1100000000"), 2006, True, 3, retro_report=True),
    _EventSpec("Ironwood Holdings", "Nightowl Data", "acquire", "acquisition",
               Decimal("5200000000"), 2004, True, 2),
    _EventSpec("Solstice Networks", "Opaline Materials", "pay", None,
               Decimal("700000000"), 2003, False, 2, retro_report=True),
    _EventSpec("Atlas Energy", "Ravenrock Mining", "acquire", "acquisition",
               Decimal("2800000000"), 2005, True, 2),
    _EventSpec("Quantum Industries", "Sablewood Paper", "purchase", "purchase",
               Decimal("650000000"), 2004, True, 3),
    _EventSpec("Ironwood Holdings", "Thornfield Labs", "invest", "investment",
               Decimal("350000000"), 2006, False, 2, retro_report=True),
    _EventSpec("Pinnacle Media", "Ulexite Chemicals", "buy", None,
               Decimal("1400000000"), 2003, True, 2),
    _EventSpec("Meridian Bank", "Violetbay Resorts", "pay", None,
               Decimal("500000000"), 2005, False, 3),
    _EventSpec("Redwood Software", "Westgate Rail", "acquire", "acquisition",
               Decimal("4100000000"), 2006, True, 3),
)

#: Reported once each, with no ground-truth counterpart.
NOISE_EVENTS: tuple[tuple[str, str, str, Decimal, int], ...] = (
    ("Quantum Industries", "Palisade Cloud", "acquire", Decimal("900000000"), 2005),
    ("Atlas Energy", "Silvergate Payments", "purchase", Decimal("2200000000"), 2006),
    ("Pinnacle Media", "Silvergate Payments", "pay", Decimal("150000000"), 2004),
)

_PAST = {"acquire": "acquired", "purchase": "purchased", "buy": "bought",
         "invest": "invested", "pay": "paid"}
_PARTICIPLE = {"acquire": "acquired", "purchase": "purchased", "buy": "bought"}


def entity_id(name: str) -> str:
    return "".join(ch for ch in name.casefold() if ch.isalnum() or ch.isspace()).replace(" ", "_")


def money_phrase(amount: Decimal) -> str:
    for scale, word in ((Decimal(10**9), "billion"), (Decimal(10**6), "million")):
        if amount >= scale:
            q = (amount / scale).normalize()
            return f"${format(q, 'f')} {word}"
    return f"${amount:,}"


def _wrong_amount(amount: Decimal, rng: random.Random) -> Decimal:
    factor = rng.choice((Decimal("0.5"), Decimal("1.5"), Decimal("2"), Decimal("2.5")))
    return amount * factor


def _near_amount(amount: Decimal) -> Decimal:
    return (amount * Decimal("1.04")).quantize(Decimal("1"))


def _correct_sentence(ev: _EventSpec, amount: Decimal, date_text: str, template: int) -> str:
    s, o, money = ev.subject, ev.object, money_phrase(amount)
    if ev.predicate == "invest":
        if template == 3 and ev.noun:
            return f"{s}'s {ev.noun} of {money} in {o} was completed in {date_text}."
        if template == 0:
            return f"{s} agreed to invest {money} in {o} in {date_text}."
        return f"{s} invested {money} in {o} in {date_text}."
    if ev.predicate == "pay":
        if template == 0:
            return f"{s} agreed to pay {money} for {o} in {date_text}."
        return f"{s} paid {money} for {o} in {date_text}."
    if template == 0:
        return f"{s} agreed to {ev.predicate} {o} for {money} in {date_text}."
    if template == 1:
        return f"{s} {_PAST[ev.predicate]} {o} for {money} in {date_text}."
    if template == 2 and ev.predicate in _PARTICIPLE:
        return f"{o} was {_PARTICIPLE[ev.predicate]} by {s} for {money} in {date_text}."
    if template == 3 and ev.noun:
        return f"{s}'s {ev.noun} of {o} for {money} was completed in {date_text}."
    return f"{s} {_PAST[ev.predicate]} {o} for {money} in {date_text}."


def _rumor_sentence(ev: _EventSpec, amount: Decimal, style: int) -> str:
    s, o, money = ev.subject, ev.object, money_phrase(amount)
    if style == 0:
        # rumors expect the deal to close in the year they are written
        closing = f"with a deal possible later in {ev.year - 1}"
        if ev.predicate == "invest":
            return f"{s} is in talks to invest about {money} in {o}, {closing}."
        if ev.predicate == "pay":
            return f"{s} is in talks to pay about {money} for {o}, {closing}."
        return f"{s} is in talks to {ev.predicate} {o} for about {money}, {closing}."
    if ev.predicate == "invest":
        return (f"A deal worth {money} could see {s} invest in {o}, "
                "people familiar with the matter said.")
    if ev.predicate == "pay":
        return (f"A deal worth {money} could see {s} pay for {o}, "
                "people familiar with the matter said.")
    return (f"A deal worth {money} could see {s} {ev.predicate} {o}, "
            "people familiar with the matter said.")


def _retro_sentence(ev: _EventSpec, amount: Decimal) -> str:
    s, o, money = ev.subject, ev.object, money_phrase(amount)
    if ev.predicate == "invest":
        middle = f"invested {money} in {o}"
    elif ev.predicate == "pay":
        middle = f"paid {money} for {o}"
    else:
        middle = f"{_PAST[ev.predicate]} {o} for {money}"
    return f"Analysts still debate whether {s} overpaid when it {middle}."


def _noun_retro_sentence(ev: _EventSpec, amount: Decimal) -> str:
    s, o, money = ev.subject, ev.object, money_phrase(amount)
    linker = "in" if ev.predicate == "invest" else "of"
    return (f"{s}'s {ev.noun} {linker} {o} came only after a {money} approach "
            f"collapsed earlier in {ev.year}.")


def _noun_rumor_sentence(ev: _EventSpec, amount: Decimal) -> str:
    s, o, money = ev.subject, ev.object, money_phrase(amount)
    linker = "in" if ev.predicate == "invest" else "of"
    return (f"{s}'s rumored {ev.noun} {linker} {o}, said to be worth about {money}, "
            f"could close in {ev.year - 1}, bankers said.")


def _noise_sentence(subject: str, obj: str, predicate: str, amount: Decimal) -> str:
    return f"{subject} {_PAST[predicate]} {obj} for {money_phrase(amount)}."


@dataclass
class _Draft:
    published: date
    title: str
    sentences: list[str]
    descriptors: list[str]


def generate_corpus(seed: int = DEFAULT_SEED) -> tuple[list[Document], list[GroundTruthEvent]]:
    rng = random.Random(seed)
    drafts: list[_Draft] = []
    truths: list[GroundTruthEvent] = []

    def pub_date(year: int) -> date:
        return date(year, rng.randint(1, 12), rng.randint(1, 28))

    for ev in EVENTS:
        truths.append(
            GroundTruthEvent(
                company_tag=entity_id(ev.subject),
                subject_id=entity_id(ev.subject),
                predicate=ev.predicate,
                object_id=entity_id(ev.object),
                amount=ev.amount,
                currency="USD",
                event_date=date(ev.year, 1, 1),
                granularity="year",
            )
        )
        for i in range(ev.n_correct):
            amount = ev.amount
            if ev.near_report and i == ev.n_correct - 1:
                amount = _near_amount(ev.amount)
            # correct reports cite the event year; one month-granularity
            # mention stays in to exercise date granularity end to end
            if ev.multi_value and i == 1:
                date_text = f"{rng.choice(_MONTH_NAMES)} {ev.year}"
            else:
                date_text = str(ev.year)
            template = rng.choice((0, 1, 2, 3))
            if ev.multi_value and i == 0:
                lower = money_phrase((ev.amount * Decimal("0.8")).quantize(Decimal("1")))
                sentence = (
                    f"{ev.subject} {_PAST[ev.predicate]} {ev.object} for "
                    f"{money_phrase(ev.amount)} in {ev.year}, topping an earlier "
                    f"{lower} offer."
                )
            else:
                sentence = _correct_sentence(ev, amount, date_text, template)
            drafts.append(
                _Draft(
                    published=pub_date(ev.year),
                    title=f"{ev.subject} moves on {ev.object}",
                    sentences=[sentence],
                    descriptors=["Business"],
                )
            )
        if ev.rumored:
            drafts.append(
                _Draft(
                    published=pub_date(ev.year - 1),
                    title=f"{ev.subject} said to weigh {ev.object} deal",
                    sentences=[_rumor_sentence(ev, _wrong_amount(ev.amount, rng), 0)],
                    descriptors=["Business"],
                )
            )
            if ev.extra_rumor:
                drafts.append(
                    _Draft(
                        published=pub_date(ev.year - 1),
                        title=f"{ev.subject} interest in {ev.object} reported",
                        sentences=[_rumor_sentence(ev, _wrong_amount(ev.amount, rng), 1)],
                        descriptors=["Business"],
                    )
                )
        if ev.retro_report:
            factor = rng.choice((Decimal("3"), Decimal("4")))
            drafts.append(
                _Draft(
                    published=pub_date(ev.year + 1),
                    title=f"The {ev.object} deal, revisited",
                    sentences=[_retro_sentence(ev, ev.amount * factor)],
                    descriptors=["Business"],
                )
            )
        if ev.rumored and ev.noun:
            drafts.append(
                _Draft(
                    published=pub_date(ev.year),
                    title=f"Long road to the {ev.object} deal",
                    sentences=[_noun_retro_sentence(ev, _wrong_amount(ev.amount, rng))],
                    descriptors=["Business"],
                )
            )
            drafts.append(
                _Draft(
                    published=pub_date(ev.year - 1),
                    title=f"{ev.object} deal talk resurfaces",
                    sentences=[_noun_rumor_sentence(ev, _wrong_amount(ev.amount, rng))],
                    descriptors=["Business"],
                )
            )

    for subject, obj, predicate, amount, year in NOISE_EVENTS:
        drafts.append(
            _Draft(
                published=pub_date(year),
                title=f"{subject} adds {obj}",
                sentences=[_noise_sentence(subject, obj, predicate, amount)],
                descriptors=["Business"],
            )
        )

    for title, body, descriptors in _FILLER_DOCS:
        drafts.append(
            _Draft(
                published=pub_date(rng.randint(2003, 2007)),
                title=title,
                sentences=[body],
                descriptors=list(descriptors),
            )
        )

    for draft in drafts:
        filler = rng.choice(_FILLERS)
        if rng.random() < 0.5:
            draft.sentences.append(filler)
        else:
            draft.sentences.insert(0, filler)

    drafts.sort(key=lambda d: (d.published, d.title))
    docs = [
        Document(
            doc_id=f"d{i:03d}",
            publication_date=draft.published,
            title=draft.title,
            body=" ".join(draft.sentences),
            descriptors=tuple(draft.descriptors),
        )
        for i, draft in enumerate(drafts, start=1)
    ]
    truths.sort(key=lambda t: (t.company_tag, t.object_id))
    return docs, truths


def write_fixtures(data_dir: str | Path, seed: int = DEFAULT_SEED) -> tuple[int, int]:
    data_dir = Path(data_dir)
    docs, truths = generate_corpus(seed)
    n_docs = write_records(data_dir / "corpus.jsonl", (d.to_record() for d in docs))
    n_truths = write_records(data_dir / "ground_truth.jsonl", (t.to_record() for t in truths))
    return n_docs, n_truths


if __name__ == "__main__":
    target = Path(__file__).parent / "data"
    written = write_fixtures(target)
    print(f"wrote {written[0]} documents and {written[1]} ground-truth events to {target}")
