"""Exception hierarchy shared by every tsmorph module.

Errors are deliberately fine-grained so that pipeline code can exclude a
failing series or morph step with an auditable reason instead of aborting
the whole run.
"""


class TsmorphError(Exception):
    """Base class for all tsmorph errors."""


# -- series-level -----------------------------------------------------------

class AllMissingError(TsmorphError):
    """Every slot of a series is missing; nothing to interpolate from."""


class HorizonTooLargeError(TsmorphError):
    """Requested forecast horizon does not leave a non-empty train part."""


class ConstantSeriesError(TsmorphError):
    """Operation undefined on a zero-variance series."""


class ConstantInputError(TsmorphError):
    """Correlation input has zero variance."""


class LengthMismatchError(TsmorphError):
    """Two sequences that must have equal length do not."""


class TooShortError(TsmorphError):
    """Series is shorter than the operation requires."""


class ConstantResidualsError(TsmorphError):
    """Local-forecast residuals have zero variance."""


# -- morph ------------------------------------------------------------------

class AlphaOutOfRangeError(TsmorphError):
    """Morph coefficient outside [0, 1]."""


class InvalidCountError(TsmorphError):
    """Step count too small for the requested operation."""


# -- forecasting ------------------------------------------------------------

class TrainTooShortError(TsmorphError):
    """Training series too short for the forecaster or the error scaling."""


class SingularFitError(TsmorphError):
    """Least-squares system for the autoregressive fit is rank deficient."""


class ZeroDenominatorError(TsmorphError):
    """In-sample seasonal-naive MAE of the train part is zero."""


class ProcessFailureError(TsmorphError):
    """External forecaster process could not run or exited nonzero."""


class ProtocolError(TsmorphError):
    """External forecaster produced output violating the line protocol."""


class ExternalTimeoutError(TsmorphError):
    """External forecaster exceeded its time budget."""


# -- analysis ---------------------------------------------------------------

class EmptyCorpusError(TsmorphError):
    """Corpus contains no series."""


class AllSeriesFailedError(TsmorphError):
    """No corpus series survived evaluation."""


class CorpusTooSmallError(TsmorphError):
    """Ranking too short to pick the requested sources plus a target."""


class MixedLengthsError(TsmorphError):
    """Corpus series destined for morphing differ in length."""


class NotEnoughFeaturesError(TsmorphError):
    """Report has fewer ranked features than requested."""


# -- ingestion / report I/O -------------------------------------------------

class ParseError(TsmorphError):
    """Malformed corpus file; message carries file, line, and column."""


class DuplicateIdError(TsmorphError):
    """Two series share one identifier."""


class EmptyFileError(TsmorphError):
    """Corpus file holds no data rows."""


class FeatureNotInReportError(TsmorphError):
    """Plot requested for a feature the report does not contain."""


class MalformedReportError(TsmorphError):
    """Report JSON does not match the tsmorph-report/1 schema."""
