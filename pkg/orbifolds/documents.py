"""
Reading, schema-checking and writing the JSON documents the commands consume:
orbifold complexes, chart atlases and local systems.
"""

import hashlib
import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from jsonschema import Draft202012Validator

from .exceptions import DocumentFormatError

logger = logging.getLogger(__name__)

SCHEMA_DIR = Path(__file__).resolve().parent / 'schemas'

COMPLEX = 'orbifold-complex'
ATLAS = 'orbifold-atlas'
LOCAL_SYSTEM = 'local-system'

SCHEMA_FILES = {
    COMPLEX: 'complex.schema.json',
    ATLAS: 'atlas.schema.json',
    LOCAL_SYSTEM: 'local_system.schema.json',
}


@lru_cache(maxsize=None)
def load_schema(kind: str) -> Dict:
    if kind not in SCHEMA_FILES:
        raise DocumentFormatError(f'unknown document kind {kind!r}')
    with open(SCHEMA_DIR / SCHEMA_FILES[kind], 'r', encoding='utf-8') as f:
        return json.load(f)


def parse_document(text: str, source: str = '<document>') -> Dict:
    """Parse JSON text, reporting the line and column of syntax errors"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentFormatError(f'{source}:{e.lineno}:{e.colno}: {e.msg}', line=e.lineno, column=e.colno) from e
    if not isinstance(data, dict):
        raise DocumentFormatError(f'{source}: top level must be a JSON object', line=1, column=1)
    return data


def read_document(path) -> Tuple[Dict, bytes]:
    """The parsed document and its raw bytes (for digests)"""
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise DocumentFormatError(f'{path}: {e.strerror or e}') from e
    try:
        text = raw.decode('utf-8')
    except UnicodeDecodeError as e:
        raise DocumentFormatError(f'{path}: not UTF-8 at byte {e.start}') from e
    data = parse_document(text, source=str(path))
    logger.info(f'Read {path} ({len(raw)} bytes)')
    return data, raw


def detect_kind(data: Dict) -> str:
    kind = data.get('kind')
    if kind is not None:
        if kind not in SCHEMA_FILES:
            raise DocumentFormatError(f'unknown document kind {kind!r}', path='kind')
        return kind
    if 'charts' in data:
        return ATLAS
    if 'intersections' in data or 'topSimplices' in data:
        return COMPLEX
    if 'ring' in data or 'twists' in data:
        return LOCAL_SYSTEM
    raise DocumentFormatError('cannot tell what kind of document this is; add a "kind" field')


def schema_problems(kind: str, data: Dict) -> List[str]:
    validator = Draft202012Validator(load_schema(kind))
    errors = sorted(validator.iter_errors(data), key=lambda e: [str(p) for p in e.path])
    problems = []
    for e in errors:
        path = '.'.join(str(p) for p in e.path) or '(root)'
        problems.append(f'{path}: {e.message}')
    return problems


def validate_schema(data: Dict, kind: Optional[str] = None) -> str:
    """Check a parsed document against its schema; returns the kind"""
    kind = kind or detect_kind(data)
    problems = schema_problems(kind, data)
    if problems:
        first = problems[0].split(':', 1)[0]
        raise DocumentFormatError(f'{kind} document does not match its schema ({len(problems)} problems)',
                                  path=first, problems=problems)
    return kind


def load_document(path, kind: Optional[str] = None) -> Tuple[Dict, bytes, str]:
    data, raw = read_document(path)
    return data, raw, validate_schema(data, kind)


def canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(',', ':'), ensure_ascii=False)


def digest(*parts) -> str:
    """sha256 over raw bytes and canonical JSON of everything else"""
    h = hashlib.sha256()
    for part in parts:
        h.update(part if isinstance(part, bytes) else canonical_json(part).encode('utf-8'))
    return h.hexdigest()


def write_document(path, data: Dict):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, ensure_ascii=False)
        f.write('\n')
    logger.info(f'Wrote {path}')
