"""Report files: a deterministic body plus a manifest of volatile run metadata."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path

from . import __version__


def canonical_json(obj) -> str:
    # repr-based float output is the shortest string that round-trips exactly
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_atomic(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def digest(data: bytes | None) -> str | None:
    return None if data is None else "sha256:" + hashlib.sha256(data).hexdigest()


def make_manifest(command: str, config: dict, input_bytes: bytes | None = None) -> dict:
    return {
        "command": command,
        "config": config,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "version": __version__,
        "input_digest": digest(input_bytes),
    }


def render_report(command: str, config: dict, body: dict, input_bytes: bytes | None = None) -> str:
    return canonical_json({"manifest": make_manifest(command, config, input_bytes), "body": body})


def body_digest(report_text: str) -> str:
    """Hash of the body alone, which excludes the timestamp."""
    body = json.loads(report_text)["body"]
    return hashlib.sha256(canonical_json(body).encode()).hexdigest()
