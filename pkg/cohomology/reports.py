"""
Run reports for the management commands.

The rendered text is a pure function of the inputs and flags: timings are
only printed when asked for, after a separator, and always live in a
separate field of the JSON copy.
"""

import json
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from algebra.invariants import ModuleInvariants
from algebra.rings import Ring

logger = logging.getLogger(__name__)


@dataclass
class RunReport:
    command: str
    input_digest: str
    flags: Dict[str, object] = field(default_factory=dict)
    per_degree: List[Tuple[int, str, Dict]] = field(default_factory=list)
    lines: List[str] = field(default_factory=list)
    validation: List[str] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    data: Dict[str, object] = field(default_factory=dict)

    def add_degrees(self, ring: Ring, invariants: Sequence[ModuleInvariants], symbol: str = 'H'):
        for k, module in enumerate(invariants):
            rendered = module.render(ring)
            self.per_degree.append((k, rendered, module.to_json()))
            self.lines.append(f'{symbol}^{k} = {rendered}')

    def header(self) -> List[str]:
        flags = ' '.join(f'{key}={self.flags[key]}' for key in sorted(self.flags))
        lines = [f'command: {self.command}', f'input: sha256:{self.input_digest}']
        if flags:
            lines.append(f'flags: {flags}')
        return lines

    def render(self, include_timings: bool = False) -> str:
        out = self.header() + self.lines
        if self.validation:
            out.append(f'validation: {len(self.validation)} problems')
            out.extend(f'  {line}' for line in self.validation)
        if include_timings and self.timings:
            out.append('--')
            out.extend(f'{phase}: {seconds:.3f}s' for phase, seconds in self.timings.items())
        return '\n'.join(out) + '\n'

    def to_json(self) -> Dict:
        return {
            'command': self.command,
            'inputDigest': self.input_digest,
            'flags': dict(sorted(self.flags.items())),
            'perDegree': [{'degree': k, 'module': rendered, 'invariants': invariants}
                          for k, rendered, invariants in self.per_degree],
            'lines': list(self.lines),
            'validation': list(self.validation),
            'data': self.data,
            'timings': self.timings,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + '\n'


class PhaseTimer:
    """Wall-clock seconds per named phase"""

    def __init__(self):
        self.timings: Dict[str, float] = {}

    @contextmanager
    def phase(self, name: str):
        started = time.perf_counter()
        try:
            yield
        finally:
            elapsed = time.perf_counter() - started
            self.timings[name] = self.timings.get(name, 0.0) + elapsed
            logger.debug(f'{name} took {elapsed:.3f}s')


def save_run(report: RunReport):
    """Store the report in the run ledger"""
    from .models import RunRecord

    record = RunRecord.objects.create(
        command=report.command,
        input_digest=report.input_digest,
        flags=dict(sorted(report.flags.items())),
        report=report.to_json(),
    )
    logger.info(f'Saved run {record.pk} for {report.command}')
    return record


def recent_runs(command: Optional[str] = None, limit: int = 20):
    from .models import RunRecord

    runs = RunRecord.objects.all()
    if command:
        runs = runs.filter(command=command)
    return list(runs[:limit])
