"""
Run Manifest

Records what a CLI run read, which configuration it used and what it wrote,
next to the run's outputs.
"""

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Dict, List, Optional

from src import config

logger = logging.getLogger(__name__)

MANIFEST_FILE = "manifest.json"


def sha256_file(path: str, chunk_size: int = 1 << 16) -> str:
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(chunk_size), b''):
            digest.update(chunk)
    return digest.hexdigest()


def timestamp(source_date_epoch: Optional[str] = None) -> str:
    """UTC ISO timestamp, pinned to SOURCE_DATE_EPOCH when it is set."""
    epoch = source_date_epoch if source_date_epoch is not None else config.SOURCE_DATE_EPOCH
    if epoch:
        moment = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    else:
        moment = datetime.now(tz=timezone.utc)
    return moment.strftime('%Y-%m-%dT%H:%M:%SZ')


@dataclass
class RunManifest:
    command: str
    config: Dict
    inputs: Dict[str, str] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    tool_version: str = field(default_factory=lambda: config.TOOL_VERSION)
    started_at: str = field(default_factory=timestamp)
    finished_at: Optional[str] = None

    def add_input(self, path: str):
        self.inputs[path] = sha256_file(path)

    def to_dict(self) -> Dict:
        return {
            'command': self.command,
            'config': self.config,
            'inputs': self.inputs,
            'outputs': sorted(self.outputs),
            'tool_version': self.tool_version,
            'started_at': self.started_at,
            'finished_at': self.finished_at,
        }

    def write(self, output_dir: str) -> str:
        """Stamp finished_at and write manifest.json into output_dir."""
        self.finished_at = timestamp()
        os.makedirs(output_dir, exist_ok=True)
        path = os.path.join(output_dir, MANIFEST_FILE)
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(json.dumps(self.to_dict(), indent=2, sort_keys=True))
            f.write('\n')
        logger.info(f"Manifest written to {path}")
        return path
