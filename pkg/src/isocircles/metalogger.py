"""
Run metadata and diagnostics collection.

A command run carries a small read-only :class:`RunMeta` (command, mode,
tolerance, seed). :class:`MetaAwareLogger` stamps it on every record it
emits and :class:`DiagnosticCollector` gathers DIAGNOSTIC records into
the ``diagnostics`` list of a report.
"""
import json
import logging
from copy import deepcopy

from six import python_2_unicode_compatible
from six.moves.collections_abc import Mapping

from .logger import GeometryLogger
from .scalars import format_complex


class MetaAwareLogger(GeometryLogger):
    """
    :class:`~isocircles.logger.GeometryLogger` that also attaches run
    metadata to each record as ``meta``.

    Args:
        getter (callable): Returns the current :class:`RunMeta`
    """
    def __init__(self, getter):
        super(MetaAwareLogger, self).__init__()
        self._meta_getter = getter

    def _get_extra(self, message, kwargs):
        extra = super(MetaAwareLogger, self)._get_extra(message, kwargs)
        extra['meta'] = self._meta_getter()
        return extra


def dumps(payload):
    """
    Serialize ``payload`` the way reports and metadata are written:
    sorted keys, fixed separators, no ASCII escaping.
    """
    return json.dumps(payload, sort_keys=True, separators=(u', ', u':'), ensure_ascii=False)


@python_2_unicode_compatible
class RunMeta(Mapping):
    """
    Read only metadata of a command run. Values must be JSON
    serializable; empty values are left out of the serialized form.

        >>> RunMeta(command='envelope', seed=7, svg=None)
        <RunMeta {"command":"envelope", "seed":7}>
    """
    def __init__(self, **kwargs):
        self._data = kwargs
        self._json = dumps({k: v for k, v in self._data.items() if v not in (None, '')})

    def __str__(self):
        return self._json

    def __bytes__(self):
        return self._json.encode('utf8')

    def __repr__(self):
        return u'<%s %s>' % (self.__class__.__name__, self._json)

    def __getitem__(self, key):
        return self._data[key]

    def __len__(self):
        return len(self._data)

    def __iter__(self):
        return iter(self._data)

    def to_dict(self):
        return deepcopy({k: v for k, v in self._data.items() if v not in (None, '')})


class RunMetaManager(object):
    """
    Holds the metadata of one run. Not meant to be shared between runs.

        >>> meta = RunMetaManager()
        >>> meta.set_meta(command='lift', mode='exact')
        <RunMeta {"command":"lift", "mode":"exact"}>
        >>> meta.set_meta(seed=1)
        <RunMeta {"command":"lift", "mode":"exact", "seed":1}>
    """
    def __init__(self, meta=None):
        self._meta = meta

    def set_meta(self, **kwargs):
        """
        Merge ``kwargs`` into the current metadata.

        Returns:
            RunMeta: The new metadata
        """
        if self._meta:
            d = dict(self._meta)
            d.update(kwargs)
            kwargs = d
        self._meta = RunMeta(**kwargs)
        return self._meta

    def get_meta(self):
        return self._meta


def _jsonable(value):
    if isinstance(value, (bool, int, float)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, str):
        return value
    try:
        return format_complex(value)
    except (TypeError, ValueError):
        return str(value)


class DiagnosticCollector(logging.Handler):
    """
    Handler that keeps DIAGNOSTIC records as report entries
    ``{"code", "message", "module", ...data}``.

    Use as a context manager around a computation::

        with DiagnosticCollector() as diagnostics:
            ...
        report['diagnostics'] = diagnostics.entries
    """
    def __init__(self, logger_name='isocircles'):
        super(DiagnosticCollector, self).__init__(level=GeometryLogger.DIAGNOSTIC.level)
        self.entries = []
        self._logger = logging.getLogger(logger_name)
        self._previous_level = None

    def emit(self, record):
        if record.levelno != GeometryLogger.DIAGNOSTIC.level:
            return
        entry = {k: _jsonable(v) for k, v in getattr(record, 'data', {}).items()}
        entry['code'] = getattr(record, 'code', 'unspecified')
        entry['message'] = record.getMessage()
        entry['module'] = record.name
        self.entries.append(entry)

    def __enter__(self):
        self._previous_level = self._logger.level
        if not self._logger.isEnabledFor(GeometryLogger.DIAGNOSTIC.level):
            self._logger.setLevel(GeometryLogger.DIAGNOSTIC.level)
        self._logger.addHandler(self)
        return self

    def __exit__(self, *exc):
        self._logger.removeHandler(self)
        self._logger.setLevel(self._previous_level)
        return False
