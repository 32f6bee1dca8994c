"""Virtual-dealer HTTP service over a loaded model bundle.

The bundle is loaded once and treated as immutable, so the threading server
can answer concurrent queries without locking. Errors are JSON objects of the
form {"error": {"code": ..., "message": ...}}.
"""

from __future__ import annotations

import json
import mimetypes
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .model_store import ModelBundle
from .query import answer_query, query_result_json

API_QUERY = "/api/v1/query"
API_MODEL = "/api/v1/model"
API_HEALTH = "/api/v1/health"


class CarspeakServer(ThreadingHTTPServer):
    daemon_threads = False  # graceful shutdown joins in-flight requests

    def __init__(self, address, bundle: ModelBundle, static_dir: Path | None = None):
        super().__init__(address, _Handler)
        self.bundle = bundle
        self.static_dir = static_dir.resolve() if static_dir else None


class _Handler(BaseHTTPRequestHandler):
    server: CarspeakServer
    protocol_version = "HTTP/1.1"

    def log_message(self, format: str, *args) -> None:
        pass  # request logging is noise for tests and CLI use

    def _send(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload: str) -> None:
        self._send(status, payload.encode("utf-8"), "application/json; charset=utf-8")

    def _send_error_obj(self, status: int, code: str, message: str) -> None:
        self._send_json(
            status, json.dumps({"error": {"code": code, "message": message}})
        )

    def do_GET(self) -> None:
        path = self.path.split("?", 1)[0]
        if path == API_HEALTH:
            self._send_json(200, json.dumps({"status": "ok"}))
        elif path == API_MODEL:
            bundle = self.server.bundle
            self._send_json(
                200,
                json.dumps(
                    {
                        "classifier": bundle.kind,
                        "n_classes": len(bundle.label_map),
                        "vocabulary_size": len(bundle.vocabulary),
                        "corpus_hash": bundle.metadata.get("corpus_hash", ""),
                    }
                ),
            )
        elif self.server.static_dir is not None:
            self._serve_static(path)
        else:
            self._send_error_obj(404, "not_found", f"no such path: {path}")

    def do_POST(self) -> None:
        path = self.path.split("?", 1)[0]
        if path != API_QUERY:
            self._send_error_obj(404, "not_found", f"no such path: {path}")
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
        except ValueError:
            length = 0
        raw = self.rfile.read(length) if length > 0 else b""
        if not raw:
            self._send_error_obj(400, "bad_request", "empty request body")
            return
        try:
            payload = json.loads(raw)
        except (json.JSONDecodeError, UnicodeDecodeError):
            self._send_error_obj(400, "bad_request", "body is not valid JSON")
            return
        if not isinstance(payload, dict) or not isinstance(payload.get("text"), str):
            self._send_error_obj(400, "bad_request", 'field "text" (string) is required')
            return
        top_n = payload.get("top_n", 5)
        if isinstance(top_n, bool) or not isinstance(top_n, int) or top_n < 1:
            self._send_error_obj(400, "bad_request", 'field "top_n" must be an integer >= 1')
            return
        bundle = self.server.bundle
        wanted = payload.get("classifier")
        if wanted is not None and wanted != bundle.kind:
            self._send_error_obj(
                400,
                "unknown_classifier",
                f"this model serves {bundle.kind!r}, not {wanted!r}",
            )
            return
        result = answer_query(bundle, payload["text"], top_n)
        self._send_json(200, query_result_json(result))

    def _serve_static(self, path: str) -> None:
        assert self.server.static_dir is not None
        relative = path.lstrip("/") or "index.html"
        target = (self.server.static_dir / relative).resolve()
        if not str(target).startswith(str(self.server.static_dir)) or not target.is_file():
            self._send_error_obj(404, "not_found", f"no such path: {path}")
            return
        content_type = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        self._send(200, target.read_bytes(), content_type)


def build_server(
    bundle: ModelBundle,
    port: int,
    host: str = "127.0.0.1",
    static_dir: Path | None = None,
) -> CarspeakServer:
    """Bind the service; port 0 picks a free port (see server.server_address)."""
    return CarspeakServer((host, port), bundle, static_dir)
