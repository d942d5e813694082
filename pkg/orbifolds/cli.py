"""
Shared plumbing for the management commands: reading documents, turning
library errors into CommandError exit statuses and printing reports.

Exit statuses: 0 success, 1 semantic failure, 2 parse or schema failure,
3 resource cap exceeded.
"""

import logging
from typing import Optional, Tuple

from django.conf import settings
from django.core.management.base import CommandError

from algebra.exceptions import AlgebraError
from cohomology.exceptions import CohomologyError, ResourceCapError

from .complex import OrbifoldComplex, load_complex
from .documents import COMPLEX, load_document
from .exceptions import DocumentFormatError, OrbifoldError

logger = logging.getLogger(__name__)

PARSE_FAILURE = 2
SEMANTIC_FAILURE = 1
RESOURCE_CAP = 3


def command_error(error: Exception, stdout=None) -> CommandError:
    """CommandError with the exit status for a library error; schema problems go to stdout first"""
    if isinstance(error, DocumentFormatError):
        if stdout is not None:
            for problem in error.problems:
                stdout.write(f'  {problem}')
        return CommandError(str(error), returncode=PARSE_FAILURE)
    if isinstance(error, ResourceCapError):
        return CommandError(str(error), returncode=RESOURCE_CAP)
    return CommandError(str(error), returncode=SEMANTIC_FAILURE)


HANDLED_ERRORS = (OrbifoldError, AlgebraError, CohomologyError)


def max_degree_option(options) -> int:
    value = options.get('max_degree')
    degree = settings.ORBIFOLD_MAX_DEGREE if value is None else value
    if degree < 0:
        raise CommandError(f'--max-degree must be nonnegative, got {degree}', returncode=SEMANTIC_FAILURE)
    return degree


def progress_option(options) -> bool:
    return bool(options.get('progress')) or settings.ORBIFOLD_PROGRESS


def read_complex(path, max_degree: Optional[int] = None) -> Tuple[OrbifoldComplex, dict, bytes]:
    """Load and check a complex document; mu completeness is checked up to max_degree"""
    data, raw, _ = load_document(path, COMPLEX)
    return load_complex(data, max_degree=max_degree), data, raw


def write_report(command, report, include_timings: bool = False):
    command.stdout.write(report.render(include_timings=include_timings), ending='')
