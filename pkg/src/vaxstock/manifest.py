"""Reproducibility envelope written alongside every machine output.

A manifest records the command and every resolved parameter; re-running
the command with those parameters reproduces the machine outputs byte for
byte.  The manifest itself carries the only timestamp in the system, so
the outputs it describes stay bitwise stable.
"""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import asdict, dataclass
from pathlib import Path

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class RunManifest:
    schema_version: int
    command: str
    parameters: dict
    artifact_version: str
    created: str


def build_manifest(command: str, parameters: dict, version: str) -> RunManifest:
    created = dt.datetime.now(dt.timezone.utc).isoformat(timespec="seconds")
    return RunManifest(SCHEMA_VERSION, command, dict(parameters), version, created)


def manifest_path_for(output_path) -> Path:
    output_path = Path(output_path)
    return output_path.with_name(output_path.stem + ".manifest.json")


def dump_json(payload, path) -> None:
    """Canonical JSON writer: sorted keys, two-space indent, trailing newline."""
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    Path(path).write_text(text, encoding="utf-8")


def write_manifest(manifest: RunManifest, output_path) -> Path:
    target = manifest_path_for(output_path)
    dump_json(asdict(manifest), target)
    return target
