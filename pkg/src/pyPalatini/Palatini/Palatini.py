import enum
import logging
import math
import os


TOOLKIT_VERSION: str = '0.3.0'
"""The version string stamped into every report the toolkit emits.
"""


DEFAULT_PRIME: int = 1009
"""The default prime modulus used by instance generation when no field is named.
"""


MAX_PRIME: int = 2 ** 31
"""Exclusive upper bound for prime moduli. Residues below this bound keep every product of two residues inside a
signed 64-bit integer, which the numpy elimination kernels rely on.
"""


IRREDUCIBLE_SEARCH_TRIALS: int = 10_000
"""The number of seeded random monic candidates tried when searching for an irreducible modulus for an extension
field, before :class:`~pyPalatini.Palatini.PalatiniError.IrreducibleSearchExhausted` is raised.
"""


DEFAULT_SYZYGY_CAP_OFFSET: int = 3
"""The default syzygy degree cap for the tangent-space computation is ``m`` plus this offset.
"""


TANGENT_MEMORY_BUDGET_BYTES: int = 4 * 2 ** 30
"""Default ceiling on the estimated peak memory of the streaming tangent-space elimination.
"""


DEFAULT_PROBE_TRIALS: int = 200
"""Default number of sampled points used by the rank-stratum and smoothness probes of a genericity check.
"""


SAMPLING_LINE_BUDGET: int = 20
"""Random lines tried per requested point when sampling the pfaffian hypersurface.
"""


SLICE_RETRY_BUDGET: int = 8
"""Random linear slices tried by the slice-degree count before giving up on a degenerate slice.
"""


DEFAULT_CHECK_POINTS: int = 50
"""Default number of random evaluation points used to check the identity Pf(M)^2 = det(M).
"""


ZERO_POLY_DEGREE: float = -math.inf
"""The degree reported for the zero polynomial, univariate or multivariate.
"""


THREADS_ENV_VAR: str = 'PALATINI_THREADS'
"""Environment variable consulted for the worker-thread count when none is given explicitly.
"""


logger = logging.getLogger(__name__)


def thread_count(requested: int | None = None) -> int:
    """Resolve the number of worker threads to use for block generation.

    :param int|None requested: An explicit thread count; takes precedence over the environment.
    :return: The thread count, at least 1.
    :rtype: int
    """
    if requested is None:
        env = os.environ.get(THREADS_ENV_VAR, '1')
        try:
            requested = int(env)
        except ValueError:
            logger.warning('Ignoring %s=%r, which is not an integer; using 1 thread', THREADS_ENV_VAR, env)
            requested = 1
    if requested < 1:
        logger.warning('Thread count %d is not positive; using 1 thread', requested)
        requested = 1
    return requested


class FieldKind(enum.Enum):
    """Enumeration of the kinds of exact field the toolkit computes over.
    """
    PRIME = 'prime'
    EXTENSION = 'extension'
    RATIONAL = 'rational'


class EvidenceKind(enum.Enum):
    """Distinguishes a property that has been verified exactly from one that has only been probed by sampling.
    """
    VERIFIED = 'verified'
    PROBED = 'probed'


class StratumTarget(enum.Enum):
    """Which degeneracy stratum a rank probe samples: the strata of the map V -> Hom(U, V*) live in P(V), the
    strata of the pencil matrix live in P(U).
    """
    PHI = 'phi'
    PENCIL = 'pencil'


class TangentStatus(enum.Enum):
    """Outcome of comparing a computed tangent dimension with the closed-form expectation.
    """
    AGREE = 'agree'
    DISAGREE = 'disagree'
    NO_STABILIZATION = 'no_stabilization'
    NO_REFERENCE = 'no_reference'


class ExitCode(enum.IntEnum):
    """Process exit codes of the command-line surface.
    """
    OK = 0
    IDENTITY_FAILURE = 1
    USAGE = 2
    PROBE_ANOMALY = 3


class OutputFormat(enum.Enum):
    """Output format for tabular command output.
    """
    JSON = 'json'
    TSV = 'tsv'
