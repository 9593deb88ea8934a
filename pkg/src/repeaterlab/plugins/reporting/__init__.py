import json
import sys
import traceback
from ...plugin_interface import PluginInterface


class StreamReporter(PluginInterface):
    def __init__(self, stream=None):
        self.stream = sys.stderr if stream is None else stream

    def _print(self, string, end='\n'):
        print(string, end=end, file=self.stream, flush=True)

    def __eq__(self, other):
        return type(self) == type(other) and self.stream == other.stream


class ExitCodeReporter(object):
    VALIDATION = 2
    NUMERICAL = 3
    UNEXPECTED = 1

    def initialise(self, args, env):
        return True

    def __init__(self):
        self.exit_code = 0

    def get_exit_code(self):
        return self.exit_code

    def validation_failed(self, job, exception):
        self.exit_code = self.VALIDATION

    def numerical_failure(self, job, exception):
        self.exit_code = self.NUMERICAL

    def unexpected_error(self, exception):
        self.exit_code = self.UNEXPECTED

    def __eq__(self, other):
        return type(self) == type(other)


class ErrorReporter(StreamReporter):
    """Writes every failure to the stream as a one-line JSON document."""
    @classmethod
    def locate(cls):
        from .cli import VerboseReporter, UnColouriser
        return (VerboseReporter, UnColouriser)

    def initialise(self, args, env):
        self.show_traceback = getattr(args, 'verbosity', 'normal') == 'verbose'
        return True

    def validation_failed(self, job, exception):
        self._print(error_document(exception))

    def numerical_failure(self, job, exception):
        self._print(error_document(exception))

    def unexpected_error(self, exception):
        self._print(error_document(exception))
        if self.show_traceback:
            for line in format_exception(exception):
                self._print(line)


def error_document(exception):
    details = exception.details() if hasattr(exception, 'details') else {}
    doc = {"error": type(exception).__name__, "message": str(exception), "details": details}
    return json.dumps(doc, sort_keys=True, default=str)


def format_exception(exception):
    ret = traceback.format_exception(type(exception), exception, exception.__traceback__)
    return ''.join(ret).strip().split('\n')
