"""
Annotation Stream Writer

Writes frames to the JSON Lines annotation format read by stream_reader, with
compact separators so equal inputs give byte-identical files.
"""

import json
import logging
from pathlib import Path
from typing import Dict, Iterable, Optional

from .types import FrameAnnotations

logger = logging.getLogger(__name__)


def frame_to_record(frame: FrameAnnotations) -> Dict:
    """Convert a frame to its wire-format dict."""
    return {
        'frame': frame.frame,
        'customers': [
            {
                'id': c.tracking_id,
                'bbox': c.bbox.as_list(),
                'age': c.age_years,
                'gender': c.gender.value,
                'expression': c.expression,
            }
            for c in frame.customers
        ],
        'garments': [
            {'id': g.tracking_id, 'bbox': g.bbox.as_list(), 'color': g.color}
            for g in frame.garments
        ],
    }


def write_stream(frames: Iterable[FrameAnnotations], output_file: str,
                 header: Optional[Dict] = None) -> int:
    """
    Write frames as JSONL, optionally preceded by a {"header": {...}} line.

    Returns:
        Number of frames written
    """
    output_path = Path(output_file)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    written = 0
    with open(output_path, 'w', encoding='utf-8', newline='\n') as f:
        if header is not None:
            f.write(json.dumps({'header': header}, separators=(',', ':'), sort_keys=True) + '\n')
        for frame in frames:
            f.write(json.dumps(frame_to_record(frame), separators=(',', ':')) + '\n')
            written += 1

    logger.info(f"Written {written} frames to {output_file}")
    return written
