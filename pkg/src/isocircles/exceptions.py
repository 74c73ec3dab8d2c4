"""
Errors raised by isocircles.

Every error carries a ``tag`` of the form ``<module>/<name>``. Tags are
part of the command line contract: a report with ``status: error``
names the tag of the error that stopped the command, and tags only
change together with :data:`ERROR_TAG_VERSION`.
"""

#: Bumped whenever an existing tag is renamed or removed.
ERROR_TAG_VERSION = 1


class IsoCirclesError(Exception):
    """
    Base class for all domain errors.

    Args:
        message (unicode): Human readable description
        **details: JSON serializable context copied into reports
    """
    tag = 'isocircles/error'

    def __init__(self, message, **details):
        super(IsoCirclesError, self).__init__(message)
        self.details = details

    def to_dict(self):
        """
        Returns:
            dict: ``tag``, ``version``, ``message`` and any details
        """
        d = {
            'tag': self.tag,
            'version': ERROR_TAG_VERSION,
            'message': str(self),
        }
        if self.details:
            d['details'] = self.details
        return d


class LogFormatError(IsoCirclesError):
    """
    Raised when a log message can not be formatted with its keyword
    arguments. Raised when logging, not when the record is handled.
    """
    tag = 'logger/format'

    def __init__(self, message, original):
        super(LogFormatError, self).__init__(message)
        self.original = original


class SchemaError(IsoCirclesError):
    """
    Input document does not match the JSON schemas of :mod:`isocircles.codec`.
    """
    tag = 'codec/schema'

    def __init__(self, message, original=None, **details):
        super(SchemaError, self).__init__(message, **details)
        self.original = original


class DegenerateInputError(IsoCirclesError):
    tag = 'isocircles/degenerate-input'


class BidegreeError(IsoCirclesError):
    """Polynomial exceeds a bidegree bound."""
    tag = 'polyring/bidegree'


class DivisibilityError(IsoCirclesError):
    """Exact division left a nonzero remainder."""
    tag = 'polyring/divisibility'


class PoleError(IsoCirclesError):
    """
    A rational map was evaluated where its denominator vanishes.

    Args:
        message (unicode): Description
        location: Parameter values at the pole
    """
    tag = 'isocircles/pole'

    def __init__(self, message, location=None):
        super(PoleError, self).__init__(
            message, location=[str(x) for x in location] if location is not None else None)
        self.location = location


class ProjectionCenterError(IsoCirclesError):
    """Point lies on the line ``l`` through the projection center."""
    tag = 'projgeom/line-l'


class CylinderIdentityError(IsoCirclesError):
    tag = 'surface/cylinder-identity'


class HypothesisViolatedError(IsoCirclesError):
    """Input does not satisfy the hypothesis of a decomposition."""
    tag = 'surface/hypothesis-violated'


class InconsistencyError(IsoCirclesError):
    tag = 'surface/internal-inconsistency'


class NotParabolicFamilyError(IsoCirclesError):
    tag = 'surface/not-parabolic-family'


class SamplingError(IsoCirclesError):
    tag = 'surface/sampling'


class DualConicError(IsoCirclesError):
    tag = 'topview/dual-conic'


class TopViewDegenerateError(IsoCirclesError):
    tag = 'topview/degenerate'


class NoEnvelopeError(IsoCirclesError):
    """
    A circle family has no envelope.

    Args:
        message (unicode): Description
        reason (unicode): ``pencil``
    """
    tag = 'topview/no-envelope'

    def __init__(self, message, reason='pencil'):
        super(NoEnvelopeError, self).__init__(message, reason=reason)
        self.reason = reason


class SelfTestFailure(IsoCirclesError):
    tag = 'selftest/property-failed'
