"""HTTP API for the curation workflow: search, browse, decide, inspect.

Thin read/write layer over KBStore, EntityRepository, and the ontology;
every number shown by a client originates here.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .entities import EntityRepository
from .money import format_amount
from .events import EventKey
from .kbstore import (
    DecisionConflictError,
    KBRecord,
    KBStore,
    ProvenanceSourceError,
    RecordNotFoundError,
)
from .ontology import Ontology


class DecisionRequest(BaseModel):
    action: str
    curator: str = "anonymous"


def _record_payload(rec: KBRecord) -> dict:
    cand = rec.candidate
    return {
        "record_id": rec.record_id,
        "event_key": rec.event_key.encode(),
        "subject_id": cand.subject_id,
        "predicate_label": cand.predicate_label,
        "predicate_class": cand.predicate_class,
        "object_id": cand.object_id,
        "amount": format_amount(cand.value.amount),
        "currency": cand.value.currency,
        "date": cand.date.date.isoformat(),
        "date_granularity": cand.date.granularity,
        "date_is_publication": cand.date_is_publication,
        "published": cand.published.isoformat(),
        "confidence": rec.confidence,
        "methods": list(rec.methods),
        "status": rec.status,
    }


def create_app(
    store: KBStore, repository: EntityRepository, ontology: Ontology
) -> FastAPI:
    app = FastAPI(title="econevents curation API")

    @app.get("/api/entities")
    def search_entities(q: str = "") -> list[dict]:
        if not q:
            return []
        return [
            {
                "entity_id": rec.entity_id,
                "name": rec.canonical_name,
                "surface_forms": list(rec.surface_forms),
            }
            for rec in repository.search(q)
        ]

    @app.get("/api/relations")
    def relations() -> list[str]:
        return ontology.second_level_labels()

    @app.get("/api/events")
    def events(subject: str, relation: str) -> list[dict]:
        out = []
        for object_id, confidence in store.query_objects(subject, relation):
            rec = repository.get(object_id)
            out.append(
                {
                    "object_id": object_id,
                    "object_name": rec.canonical_name if rec else object_id,
                    "confidence": confidence,
                    "event_key": EventKey(subject, relation, object_id).encode(),
                }
            )
        return out

    @app.get("/api/events/{key}/candidates")
    def candidates(key: str) -> list[dict]:
        try:
            event_key = EventKey.parse(key)
            records = store.list_candidates(event_key)
        except (ValueError, RecordNotFoundError):
            raise HTTPException(status_code=404, detail=f"unknown event {key!r}")
        return [_record_payload(rec) for rec in records]

    @app.post("/api/records/{record_id}/decision")
    def decide(record_id: str, request: DecisionRequest) -> dict:
        try:
            rec = store.decide(record_id, request.action, request.curator)
        except RecordNotFoundError:
            raise HTTPException(status_code=404, detail=f"unknown record {record_id!r}")
        except DecisionConflictError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return _record_payload(rec)

    @app.get("/api/records/{record_id}/provenance")
    def provenance(record_id: str) -> list[dict]:
        try:
            return store.get_provenance(record_id)
        except RecordNotFoundError:
            raise HTTPException(status_code=404, detail=f"unknown record {record_id!r}")
        except ProvenanceSourceError as exc:
            raise HTTPException(status_code=503, detail=f"provenance source unavailable: {exc}")

    return app
