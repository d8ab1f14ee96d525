"""HTTP/JSON editing service over a directory of ``.cmx`` model files.

Models are stored on disk in the XML format only; JSON exists on the wire as
a field-for-field mirror of the element records. Saves use optimistic
versioning: a PUT must carry the current version, versions increase by one
per successful save, and the file is replaced atomically.
"""

from __future__ import annotations

import os
import tempfile
import threading
from pathlib import Path

from fastapi import Body, FastAPI, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import errors, xmlio
from .cli import compile_model
from .core import validate_model

MODEL_SUFFIX = ".cmx"
COMPILE_MEDIA_TYPES = {
    "uml": "text/plain",
    "sql": "text/plain",
    "svg": "image/svg+xml",
}


class ModelStore:
    """Versioned access to the ``.cmx`` files in one directory."""

    def __init__(self, directory: Path):
        self.directory = Path(directory)
        self._versions: dict[str, int] = {}
        self._lock = threading.Lock()

    def _path(self, name: str) -> Path:
        if not name or "/" in name or "\\" in name or name.startswith("."):
            raise errors.NotFound(f"invalid model name {name!r}")
        return self.directory / f"{name}{MODEL_SUFFIX}"

    def list_models(self) -> list[dict]:
        out = []
        for path in sorted(self.directory.glob(f"*{MODEL_SUFFIX}")):
            name = path.stem
            with self._lock:
                version = self._versions.setdefault(name, 1)
            out.append({"name": name, "version": version})
        return out

    def load(self, name: str) -> dict:
        path = self._path(name)
        if not path.is_file():
            raise errors.NotFound(f"no model named {name!r}")
        records = xmlio.parse_records(path.read_text(encoding="utf-8"))
        with self._lock:
            version = self._versions.setdefault(name, 1)
        return {
            "name": name,
            "version": version,
            "model": {"elements": [r.to_json() for r in records]},
        }

    def save(self, name: str, version: int, records) -> int:
        """Compare-and-swap save; returns the new version.

        Raises ``StaleVersion`` when ``version`` is not current. New models
        start at stored version 0, so a first save carries version 0.
        """
        path = self._path(name)
        text = xmlio.serialize_model(xmlio.records_to_model(records))
        with self._lock:
            current = self._versions.get(name, 1 if path.is_file() else 0)
            if version != current:
                raise StaleVersion(current)
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as handle:
                    handle.write(text)
                os.replace(tmp, path)
            except OSError:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise
            self._versions[name] = current + 1
            return current + 1


class StaleVersion(errors.ConceptForgeError):
    def __init__(self, current: int):
        super().__init__(f"stale version; current is {current}")
        self.current = current


def _records_from_body(body: dict):
    if not isinstance(body, dict) or not isinstance(body.get("model"), dict):
        raise errors.ParseError("body must carry a model object", 1, 1)
    elements = body["model"].get("elements")
    if not isinstance(elements, list):
        raise errors.ParseError("model.elements must be a list", 1, 1)
    return [xmlio.ElementRecord.from_json(e) for e in elements]


def create_app(directory: Path) -> FastAPI:
    store = ModelStore(directory)
    app = FastAPI(title="conceptforge service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store

    @app.get("/api/models")
    def list_models():
        return store.list_models()

    @app.get("/api/models/{name}")
    def get_model(name: str):
        try:
            return store.load(name)
        except (errors.NotFound, errors.ParseError, errors.UnknownElementType) as exc:
            return JSONResponse({"error": str(exc)}, status_code=404)

    @app.put("/api/models/{name}")
    def put_model(name: str, body: dict = Body(...)):
        version = body.get("version")
        if not isinstance(version, int):
            return JSONResponse({"error": "version must be an integer"},
                                status_code=400)
        try:
            records = _records_from_body(body)
            new_version = store.save(name, version, records)
        except StaleVersion as exc:
            return JSONResponse({"error": str(exc), "version": exc.current},
                                status_code=409)
        except (errors.ParseError, errors.UnknownElementType, errors.UnknownRole,
                errors.NotFound) as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        return {"version": new_version}

    def _model_for(name: str, body: dict | None):
        if body and body.get("model") is not None:
            return xmlio.records_to_model(_records_from_body(body))
        envelope = store.load(name)
        records = [xmlio.ElementRecord.from_json(e)
                   for e in envelope["model"]["elements"]]
        return xmlio.records_to_model(records)

    @app.post("/api/models/{name}/validate")
    def validate(name: str, body: dict | None = Body(default=None)):
        try:
            m = _model_for(name, body)
        except errors.NotFound as exc:
            return JSONResponse({"error": str(exc)}, status_code=404)
        except (errors.ParseError, errors.UnknownElementType,
                errors.UnknownRole) as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        return [
            {"code": d.code.value, "subject": d.subject, "message": d.message}
            for d in validate_model(m)
        ]

    @app.post("/api/models/{name}/compile")
    def compile_endpoint(name: str, target: str,
                         body: dict | None = Body(default=None)):
        if target not in COMPILE_MEDIA_TYPES:
            return JSONResponse({"error": f"unknown target {target!r}"},
                                status_code=400)
        try:
            m = _model_for(name, body)
        except errors.NotFound as exc:
            return JSONResponse({"error": str(exc)}, status_code=404)
        except (errors.ParseError, errors.UnknownElementType,
                errors.UnknownRole) as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        try:
            artifact = compile_model(m, target)
        except errors.InvalidModel as exc:
            return JSONResponse(
                {"diagnostics": [
                    {"code": d.code.value, "subject": d.subject,
                     "message": d.message}
                    for d in exc.diagnostics
                ]},
                status_code=422)
        except errors.MissingGeometry as exc:
            return JSONResponse({"error": str(exc)}, status_code=422)
        return Response(artifact, media_type=COMPILE_MEDIA_TYPES[target])

    return app
