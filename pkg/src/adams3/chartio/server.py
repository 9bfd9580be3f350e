"""HTTP serve mode: a JSON facade over a live spectral-sequence ledger.

Every state change flows through assert_differential or audit-log replay
(rollback); reads serve snapshots.  Mutations are serialized by a lock
(single writer), concurrent readers never block the writer for long.

Endpoints (bodies JSON, UTF-8):
    GET    /api/pages/{r}            page r as a ChartDocument
    POST   /api/differentials        {page, source, target, coefficient}
    DELETE /api/differentials/{id}   replay the log up to that assertion
    GET    /api/homotopy             the homotopy table, when available
    GET    /api/export/svg?page=r    rendered SVG
"""

from __future__ import annotations

import json
import re
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from ..sseq import ADAMS_PROFILE, LedgerError, LinearitySet, Sseq
from ..tmf.patterns import act_by_name, stem_parity
from ..tmf.stages import D2_MULTIPLIERS
from .document import ChartDocument, export_chart
from .svg import RenderStyle, render_svg


def adams_linearity() -> LinearitySet:
    return LinearitySet(multipliers=D2_MULTIPLIERS, act=act_by_name, parity=stem_parity)


class LedgerSession:
    """A rebuildable ledger: base classes + an append-only assertion log."""

    def __init__(self, classes: list, start_page: int, homotopy_json: str | None = None,
                 linearity: LinearitySet | None = None, metadata: dict | None = None):
        self.base_classes = list(classes)
        self.start_page = start_page
        self.homotopy_json = homotopy_json
        self.linearity = linearity if linearity is not None else adams_linearity()
        self.metadata = dict(metadata or {})
        self.log: list[dict] = []
        self.lock = threading.Lock()
        self.ledger = self._build(self.log)

    @classmethod
    def from_document(cls, doc: ChartDocument, homotopy_json: str | None = None):
        page = int(doc.metadata.get("page", 2))
        classes = []
        for c in doc.classes:
            if c.alive:
                classes.append((c.name, (c.y, c.x + c.y), c.pattern_tag))
        return cls(classes, page, homotopy_json, metadata=dict(doc.metadata))

    def _build(self, log: list) -> Sseq:
        ledger = Sseq(ADAMS_PROFILE, self.base_classes, start_page=self.start_page)
        for entry in log:
            ledger.assert_differential(
                entry["page"], entry["source"], entry["target"],
                entry.get("coefficient", 1), provenance=entry.get("provenance", "interactive"),
                linearity=self.linearity,
            )
        return ledger

    def assert_differential(self, page: int, source: str, target: str,
                            coefficient: int = 1) -> dict:
        with self.lock:
            report = self.ledger.assert_differential(
                page, source, target, coefficient, provenance="interactive",
                linearity=self.linearity,
            )
            entry = {
                "id": len(self.log), "page": page, "source": source, "target": target,
                "coefficient": coefficient % 3, "provenance": "interactive",
            }
            self.log.append(entry)
            return {
                "id": entry["id"],
                "asserted": [list(a) for a in report.asserted],
                "merged": [list(m) for m in report.merged],
            }

    def rollback(self, assertion_id: int) -> None:
        """Replay the audit log up to (excluding) the given assertion."""
        with self.lock:
            if not any(e["id"] == assertion_id for e in self.log):
                raise KeyError(assertion_id)
            kept = [e for e in self.log if e["id"] < assertion_id]
            self.ledger = self._build(kept)
            self.log = kept

    def page_document(self, page: int) -> ChartDocument:
        with self.lock:
            if page < self.ledger.profile.first_page or page > self.ledger.page:
                raise KeyError(page)
            return export_chart(self.ledger, page, metadata=self.metadata)


class _Handler(BaseHTTPRequestHandler):
    session: LedgerSession  # set by serve()

    def log_message(self, *args):  # quiet
        pass

    def _send(self, code: int, body: str, content_type: str = "application/json"):
        data = body.encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", f"{content_type}; charset=utf-8")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()
        self.wfile.write(data)

    def _json(self, code: int, obj):
        self._send(code, json.dumps(obj, sort_keys=True, separators=(",", ":")))

    def do_OPTIONS(self):
        self._send(204, "")

    def do_GET(self):
        m = re.match(r"^/api/pages/(\d+)$", self.path)
        if m:
            try:
                doc = self.session.page_document(int(m.group(1)))
            except KeyError:
                self._json(404, {"error": f"unknown page {m.group(1)}"})
                return
            self._send(200, doc.to_json())
            return
        if self.path == "/api/homotopy":
            if self.session.homotopy_json is None:
                self._json(404, {"error": "no homotopy table attached"})
                return
            self._send(200, self.session.homotopy_json)
            return
        m = re.match(r"^/api/export/svg\?page=(\d+)(?:&stems=(\d+)\.\.(\d+))?$", self.path)
        if m:
            try:
                doc = self.session.page_document(int(m.group(1)))
            except KeyError:
                self._json(404, {"error": f"unknown page {m.group(1)}"})
                return
            stems = (int(m.group(2)), int(m.group(3))) if m.group(2) else None
            self._send(200, render_svg(doc, RenderStyle(), stem_range=stems),
                       content_type="image/svg+xml")
            return
        self._json(404, {"error": f"unknown endpoint {self.path}"})

    def do_POST(self):
        if self.path != "/api/differentials":
            self._json(404, {"error": f"unknown endpoint {self.path}"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            body = json.loads(self.rfile.read(length) or b"{}")
            page = int(body["page"])
            source = str(body["source"])
            target = str(body["target"])
            coefficient = int(body.get("coefficient", 1))
        except (KeyError, ValueError, json.JSONDecodeError) as exc:
            self._json(422, {"error": f"malformed body: {exc}"})
            return
        try:
            report = self.session.assert_differential(page, source, target, coefficient)
        except LedgerError as exc:
            self._json(422, {"error": str(exc)})
            return
        doc = self.session.page_document(page)
        self._json(200, {"report": report, "page": doc.to_dict()})

    def do_DELETE(self):
        m = re.match(r"^/api/differentials/(\d+)$", self.path)
        if not m:
            self._json(404, {"error": f"unknown endpoint {self.path}"})
            return
        try:
            self.session.rollback(int(m.group(1)))
        except KeyError:
            self._json(404, {"error": f"unknown assertion {m.group(1)}"})
            return
        doc = self.session.page_document(self.session.ledger.page)
        self._json(200, {"page": doc.to_dict()})


def make_server(session: LedgerSession, port: int, host: str = "127.0.0.1") -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"session": session})
    return ThreadingHTTPServer((host, port), handler)


def serve(session: LedgerSession, port: int, host: str = "127.0.0.1") -> None:
    httpd = make_server(session, port, host)
    print(f"serving chart API on http://{host}:{httpd.server_address[1]}", flush=True)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
