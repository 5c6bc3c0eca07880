"""
Run manifests: what a command was asked to do and what it wrote
"""
import json
import logging
import os
import time
from pathlib import Path

from config.settings import TOOL_NAME, TOOL_VERSION
from core.errors import ConfigError
from core.utils import dumps_report

logger = logging.getLogger(__name__)

MANIFEST_NAME = 'manifest.json'


class OutputRecord:
    """One file written by a run"""
    def __init__(self, path, role):
        self.path = str(path)
        self.role = role
        self.bytes = Path(path).stat().st_size

    def to_dict(self):
        return {'path': self.path, 'role': self.role, 'bytes': self.bytes}

    @classmethod
    def from_dict(cls, data):
        record = cls.__new__(cls)
        record.path = data['path']
        record.role = data.get('role', 'output')
        record.bytes = int(data['bytes'])
        return record


class RunManifest:
    """Parameters, verdicts, timing and outputs of one subcommand run"""
    def __init__(self, subcommand, parameters):
        self.subcommand = subcommand
        self.parameters = dict(parameters)
        self.tool = TOOL_NAME
        self.version = TOOL_VERSION
        self.started = None
        self.finished = None
        self.verdicts = {}
        self.outputs = []

    def start(self):
        self.started = time.time()
        return self

    def stop(self):
        self.finished = time.time()

    @property
    def wall_clock(self):
        if self.started is None or self.finished is None:
            return 0.0
        return self.finished - self.started

    def add_output(self, path, role='output'):
        self.outputs.append(OutputRecord(path, role))
        return path

    def add_verdict(self, name, verdict):
        self.verdicts[name] = verdict

    def to_dict(self):
        return {
            'tool': self.tool,
            'version': self.version,
            'subcommand': self.subcommand,
            'parameters': self.parameters,
            'started': self.started,
            'finished': self.finished,
            'wall_clock': self.wall_clock,
            'verdicts': self.verdicts,
            'outputs': [o.to_dict() for o in self.outputs],
        }

    @classmethod
    def from_dict(cls, data):
        manifest = cls(data['subcommand'], data.get('parameters', {}))
        manifest.tool = data.get('tool', TOOL_NAME)
        manifest.version = data.get('version', TOOL_VERSION)
        manifest.started = data.get('started')
        manifest.finished = data.get('finished')
        manifest.verdicts = data.get('verdicts', {})
        manifest.outputs = [OutputRecord.from_dict(o) for o in data.get('outputs', [])]
        return manifest

    def save(self, directory, stem=None):
        """Write `<stem>.manifest.json` (or manifest.json) into directory"""
        name = f"{stem}.manifest.json" if stem else MANIFEST_NAME
        path = Path(directory) / name
        path.parent.mkdir(parents=True, exist_ok=True)
        # output paths are stored relative to the manifest directory
        for record in self.outputs:
            record.path = os.path.relpath(os.path.abspath(record.path), os.path.abspath(directory))
        with open(path, 'w', encoding='utf-8') as f:
            f.write(dumps_report(_plain(self.to_dict())))
        logger.info("manifest written to %s", path)
        return path


def _plain(value):
    """None is not a report value; drop it from manifests"""
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items() if v is not None}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def load_manifest(path):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return RunManifest.from_dict(json.load(f))
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise ConfigError(f"cannot read manifest {path}: {exc}") from exc


def verify_manifest(path):
    """List of problems: missing outputs or byte counts that no longer match"""
    manifest = load_manifest(path)
    problems = []
    base = Path(path).parent
    for record in manifest.outputs:
        target = base / record.path
        if not target.exists():
            problems.append(f"{record.path}: missing")
        elif target.stat().st_size != record.bytes:
            problems.append(f"{record.path}: {target.stat().st_size} bytes, manifest says {record.bytes}")
    return problems
