"""Exception hierarchy for data and contract failures.

Everything raised on bad *data* derives from :class:`CitescaleError`, so the
CLI can map any of them to exit code 1 while argparse keeps owning usage
errors (exit code 2).  Parameter misuse inside the library (fractions outside
(0, 1), too few curves, ...) raises plain :class:`ValueError`.
"""


class CitescaleError(Exception):
    """Base class for all data-level errors in this package."""


class CorpusFormatError(CitescaleError):
    """CSV structure is wrong: bad header, missing or extra columns."""


class CorpusValueError(CitescaleError):
    """A cell holds an unusable value (negative or non-integer citations...)."""


class DuplicateRecordError(CorpusValueError):
    """Strict-mode ingestion found a repeated (pub_id, category) row."""


class EmptyCorpusError(CitescaleError):
    """The corpus (or input file) contains no publication records."""


class EmptyGroupError(CitescaleError):
    """A statistic was requested on an empty citation vector."""


class DegenerateLikelihoodError(CitescaleError):
    """The power-transform likelihood has no interior information (all values
    equal, or fewer than three observations)."""


class UndefinedScalingError(CitescaleError):
    """A record was scaled against a factor set whose statistic is undefined."""


class GroupMismatchError(CitescaleError):
    """A record was scaled against factors fitted on a different group."""


class InsufficientSampleError(CitescaleError):
    """Too few usable values remain for the goodness-of-fit statistic."""


class ScenarioError(CitescaleError):
    """A synthetic-corpus scenario holds invalid family parameters."""
