"""
Context aware logging.

Modules of this package log through the shared :data:`log` instance.
The logger looks up the module it is called from and hands the record
to ``logging.getLogger(<that module>)``, so configuring the
``isocircles`` logger configures the whole package::

    >>> log = GeometryLogger()
    >>> log.warning('Dropped {count} zero terms', count=3).data
    {'count': 3}

Keyword arguments are substituted into the message with
:meth:`str.format` and kept on the record as ``data``. Diagnostics that
end up in command reports are logged at :attr:`GeometryLogger.DIAGNOSTIC`
with a ``code`` keyword.
"""
import logging
import sys
from collections import namedtuple

from six import text_type
from six import with_metaclass

from .exceptions import LogFormatError


class LogLevel(object):
    """
    A logging level.

    Args:
        level (int): Numeric level
        name (unicode): Level name shown in records
        traceback (bool): Attach the current exception when logging
    """
    def __init__(self, level, name, traceback=False):
        self.level = level
        self.name = name
        self.traceback = traceback

    def __repr__(self):
        return '<LogLevel %s (%s)>' % (self.name, self.level)

    def __int__(self):
        return self.level

    def __str__(self):
        return self.name


def log_method_factory(name, level, traceback=False):
    """
    Create a logger method that logs at ``level``.

    Args:
        name (str): Method name
        level (LogLevel): Level to log at
        traceback (bool): Default ``exc_info`` to the current exception
    """
    level = int(level)
    if traceback:
        def log_method(self, msg, **kwargs):
            kwargs.setdefault('exc_info', 1)
            return self._log(level, msg, kwargs)
    else:
        def log_method(self, msg, **kwargs):
            return self._log(level, msg, kwargs)

    log_method.__name__ = name
    return log_method


class LoggerMetaClass(type):
    """
    Collects :class:`LogLevel` attributes, including inherited ones, into
    ``_log_levels``.
    """
    def __new__(mcs, name, bases, attrs):
        levels = {}
        for base in bases:
            levels.update(getattr(base, '_log_levels', None) or {})

        for val in attrs.values():
            if isinstance(val, LogLevel):
                levels[val.level] = val

        attrs['_log_levels'] = levels
        return super(LoggerMetaClass, mcs).__new__(mcs, name, bases, attrs)


class AwareLogger(with_metaclass(LoggerMetaClass)):
    """
    Drop-in for :class:`logging.Logger` that resolves the logger name
    from the calling module. One instance can be shared by every module.
    """
    CRITICAL = LogLevel(logging.CRITICAL, 'CRITICAL')
    ERROR = LogLevel(logging.ERROR, 'ERROR')
    WARNING = LogLevel(logging.WARNING, 'WARNING')
    INFO = LogLevel(logging.INFO, 'INFO')
    DEBUG = LogLevel(logging.DEBUG, 'DEBUG')

    critical = log_method_factory('critical', CRITICAL)
    error = log_method_factory('error', ERROR)
    #: ERROR with the current traceback attached.
    exception = log_method_factory('exception', ERROR, traceback=True)
    warning = log_method_factory('warning', WARNING)
    warn = warning
    info = log_method_factory('info', INFO)
    debug = log_method_factory('debug', DEBUG)

    def log(self, level, msg, **kwargs):
        """
        Log ``msg`` at ``level``.

        Args:
            level (int): Logging level
            msg (unicode): Message, formatted with ``kwargs``
            **kwargs: Substitution values, kept as record ``data``.
                ``exc_info`` is passed through to the record.

        Returns:
            logging.LogRecord: The handled record, or ``None`` when the
            level is disabled
        """
        return self._log(level, msg, kwargs)

    def get_level_name(self, level):
        return text_type(self._log_levels.get(level, u'Level %s' % level))

    def isEnabledFor(self, level):
        """
        Whether the caller's module logger is enabled for ``level``.
        """
        return logging.getLogger(_get_caller(depth=2).module).isEnabledFor(level)

    def _log(self, level, message, kwargs):
        caller = _get_caller()
        logger = logging.getLogger(caller.module)
        if not logger.isEnabledFor(level):
            return None

        exc_info = _exc_info(kwargs.pop('exc_info', 0))
        text = self._format_message(message, kwargs)
        record = logger.makeRecord(
            logger.name, level, caller.filename, caller.line, text, None, exc_info,
            func=caller.function, extra=self._get_extra(text, kwargs))
        record.levelname = self.get_level_name(level)
        logger.handle(record)
        return record

    def _get_extra(self, message, kwargs):
        data = {k: v for k, v in kwargs.items() if v not in (None, '')}
        return {'data': data} if data else {}

    def _format_message(self, message, kwargs):
        if not kwargs:
            return message
        try:
            return message.format(**kwargs)
        except Exception as e:
            raise LogFormatError(
                u'Can not format log message {!r} with {}: {}: {}'.format(
                    message, sorted(kwargs), e.__class__.__name__, e),
                original=e)


class GeometryLogger(AwareLogger):
    """
    Package logger. Adds the DIAGNOSTIC level for conditions that do not
    stop a computation but belong in its report: poles skipped while
    sampling, ill-conditioned eigenvalue gaps, degenerate tuples and
    floating point fallbacks.

    A diagnostic takes a ``code`` keyword naming the condition; the code
    is also copied to ``record.code``.
    """
    DIAGNOSTIC = LogLevel(25, 'DIAGNOSTIC')
    diagnostic = log_method_factory('diagnostic', DIAGNOSTIC)

    def _get_extra(self, message, kwargs):
        extra = super(GeometryLogger, self)._get_extra(message, kwargs)
        if 'code' in kwargs:
            extra['code'] = kwargs['code']
        return extra


Caller = namedtuple('Caller', ['module', 'filename', 'line', 'function'])


def _exc_info(value):
    """
    ``exc_info`` as given to a logging method: a truthy non tuple means the
    exception being handled, if any.
    """
    if not value:
        return None
    if not isinstance(value, tuple):
        value = sys.exc_info()
    return None if value == (None, None, None) else value


def _get_caller(depth=3):
    """
    :class:`Caller` of the frame ``depth`` levels above this function.

    The default matches a call through a logging method and
    :meth:`AwareLogger._log`.
    """
    frame = sys._getframe(depth)
    try:
        return Caller(frame.f_globals.get('__name__'), frame.f_code.co_filename,
                      frame.f_lineno, frame.f_code.co_name)
    finally:
        del frame


#: Shared package logger
log = GeometryLogger()
