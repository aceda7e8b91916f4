"""HTTP facade for the annotator UI: documents, generation, conflicts, metrics.

A thin stateful shell over the pure modules. Documents are served in envelopes
with a monotonically increasing version; writes must cite the version they
read, and a stale write is rejected with 409 (optimistic concurrency,
serialized per document).
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Query
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .anchors import resolve_anchor
from .consistency import check
from .corpus_io import (
    document_to_json,
    load_corpus,
    parse_document,
    relation_set_to_json,
    report_to_json,
    save_document,
)
from .dates import parse_date
from .errors import (
    DegenerateMatrixError,
    EmptyLayersError,
    FuzzyForbiddenError,
    NeedDateError,
    SchemaError,
    TimelineError,
)
from .metrics import corpus_stats, event_iaa, relation_iaa, span_keyed_labels
from .model import AnchorOption
from .relgen import generate_relations
from .report import agreement_to_json, stats_to_json
from .validate import lint_events, validate_document


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


def create_app(corpus_dir: str | Path, static_dir: str | Path | None = None) -> FastAPI:
    corpus_dir = Path(corpus_dir)
    corpus = load_corpus(corpus_dir)
    versions: dict[str, int] = {doc_id: 1 for doc_id in corpus.documents}
    locks: dict[str, threading.Lock] = {doc_id: threading.Lock() for doc_id in corpus.documents}

    app = FastAPI(title="timelinekit", version="0.1.0")

    def envelope(doc_id: str) -> dict:
        return {
            "version": versions[doc_id],
            "document": document_to_json(corpus.documents[doc_id]),
        }

    def pick_layer(doc_id: str, layer: str | None) -> str | None:
        doc = corpus.documents[doc_id]
        if layer is None:
            names = doc.layer_names()
            return names[0] if names else None
        return layer if layer in doc.layers else None

    @app.get("/api/documents")
    def list_documents():
        return {"documents": list(corpus.documents)}

    @app.get("/api/documents/{doc_id}")
    def get_document(doc_id: str):
        if doc_id not in corpus.documents:
            return _error(404, "E_NOT_FOUND", f"unknown document {doc_id!r}")
        return envelope(doc_id)

    @app.put("/api/documents/{doc_id}")
    def put_document(doc_id: str, body: dict):
        if doc_id not in corpus.documents:
            return _error(404, "E_NOT_FOUND", f"unknown document {doc_id!r}")
        if not isinstance(body.get("version"), int) or "document" not in body:
            return _error(400, "E_BODY", "body must carry integer 'version' and 'document'")
        try:
            doc = parse_document(body["document"], source=f"PUT {doc_id}")
        except SchemaError as exc:
            return JSONResponse(status_code=422, content={
                "errors": [{"code": exc.code, "message": exc.reason,
                            "pointer": exc.pointer, "event_id": None, "layer": None}],
                "warnings": [],
            })
        if doc.doc_id != doc_id:
            return _error(400, "E_BODY", "document doc_id must match the URL")
        report = validate_document(doc)
        if not report.ok:
            return JSONResponse(status_code=422, content=report_to_json(report))
        with locks[doc_id]:
            if body["version"] != versions[doc_id]:
                return _error(
                    409, "E_STALE_VERSION",
                    f"version {body['version']} is stale (current {versions[doc_id]})",
                )
            corpus.documents[doc_id] = doc
            save_document(corpus, corpus_dir, doc_id)
            versions[doc_id] += 1
            return envelope(doc_id)

    @app.post("/api/documents/{doc_id}/relations:generate")
    def generate(doc_id: str, layer: str | None = None):
        if doc_id not in corpus.documents:
            return _error(404, "E_NOT_FOUND", f"unknown document {doc_id!r}")
        chosen = pick_layer(doc_id, layer)
        if chosen is None:
            return _error(400, "E_LAYER", f"document {doc_id!r} has no layer {layer!r}")
        doc = corpus.documents[doc_id]
        report = validate_document(doc)
        if not report.ok:
            return JSONResponse(status_code=422, content=report_to_json(report))
        return relation_set_to_json(generate_relations(doc, chosen))

    @app.get("/api/documents/{doc_id}/conflicts")
    def conflicts(doc_id: str, layer: str | None = None):
        if doc_id not in corpus.documents:
            return _error(404, "E_NOT_FOUND", f"unknown document {doc_id!r}")
        doc = corpus.documents[doc_id]
        report = validate_document(doc)
        if not report.ok:
            return JSONResponse(status_code=422, content=report_to_json(report))
        layers = doc.layer_names() if layer is None else [layer]
        out = []
        for name in layers:
            if name not in doc.layers:
                return _error(400, "E_LAYER", f"document {doc_id!r} has no layer {name!r}")
            relset = generate_relations(doc, name)
            for c in check(relset, doc.layer(name)):
                out.append({
                    "layer": name, "kind": c.kind.value,
                    "events": list(c.events), "detail": c.detail,
                })
        return {"conflicts": out}

    @app.get("/api/documents/{doc_id}/lint")
    def lint(doc_id: str):
        if doc_id not in corpus.documents:
            return _error(404, "E_NOT_FOUND", f"unknown document {doc_id!r}")
        return report_to_json(lint_events(corpus.documents[doc_id]))

    @app.get("/api/corpus/stats")
    def stats(layer: str | None = None):
        items = []
        for doc_id, doc in corpus.documents.items():
            chosen = pick_layer(doc_id, layer)
            if chosen is None:
                return _error(400, "E_LAYER", f"document {doc_id!r} has no layer {layer!r}")
            items.append((doc, generate_relations(doc, chosen)))
        return stats_to_json(corpus_stats(items))

    @app.get("/api/iaa")
    def iaa(layerA: str = Query(default=None), layerB: str = Query(default=None)):
        if not layerA or not layerB:
            return _error(400, "E_QUERY", "layerA and layerB are required")
        events_a, events_b = {}, {}
        labels_a, labels_b = {}, {}
        try:
            for doc_id, doc in corpus.documents.items():
                if layerA in doc.layers:
                    events_a[doc_id] = doc.layers[layerA]
                    labels_a.update(span_keyed_labels(doc, layerA, generate_relations(doc, layerA)))
                if layerB in doc.layers:
                    events_b[doc_id] = doc.layers[layerB]
                    labels_b.update(span_keyed_labels(doc, layerB, generate_relations(doc, layerB)))
            f1 = event_iaa(events_a, events_b)
            agreement = relation_iaa(labels_a, labels_b, event_f1=f1)
        except (EmptyLayersError, DegenerateMatrixError) as exc:
            return _error(422, exc.code, str(exc))
        return agreement_to_json(agreement)

    @app.get("/api/anchors:resolve")
    def anchors_resolve(option: str = Query(default=None),
                        date: str = Query(default=None),
                        dct: str = Query(default=None)):
        if option is None or dct is None:
            return _error(400, "E_QUERY", "option and dct are required")
        try:
            opt = AnchorOption(int(option))
        except ValueError:
            return _error(400, "E_QUERY", f"option must be 1-6, got {option!r}")
        try:
            dct_date = parse_date(dct)
            entered = parse_date(date) if date else None
            resolved = resolve_anchor(opt, entered, dct_date)
        except (ValueError, NeedDateError, FuzzyForbiddenError) as exc:
            return _error(400, getattr(exc, "code", "E_QUERY"), str(exc))
        return {"anchor": resolved.render()}

    @app.exception_handler(TimelineError)
    def timeline_error(_, exc: TimelineError):  # pragma: no cover - safety net
        return _error(500, exc.code, str(exc))

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
