import json
import math
import sys
from ... import errors
from ... import tools
from .csv import CsvReporter


class JsonReporter(object):
    """
    Writes the job's summary document to the --summary file. Without
    --summary it goes to stdout, unless stdout already carries CSV rows.
    """
    @classmethod
    def locate(cls):
        return (CsvReporter, None)

    def __init__(self, stream=None):
        self.stream = sys.stdout if stream is None else stream
        self.summary = None
        self.failed = False
        self.csv_reporter = None

    def setup_parser(self, parser):
        parser.add_argument('--summary',
                            action='store',
                            dest='summary_path',
                            default=None,
                            metavar='PATH',
                            help="Write the JSON summary to this file.")

    def initialise(self, args, env):
        self.path = args.summary_path
        return True

    def request_plugins(self):
        returned_plugins = yield [CsvReporter]
        self.csv_reporter = returned_plugins.get(CsvReporter)

    def summary_ready(self, job, summary):
        self.summary = summary

    def validation_failed(self, job, exception):
        self.failed = True

    def numerical_failure(self, job, exception):
        self.failed = True

    def unexpected_error(self, exception):
        self.failed = True

    def job_ended(self, job):
        if self.failed or self.summary is None:
            return
        text = dump(self.summary)
        if self.path is not None:
            with tools.atomic_write(self.path) as f:
                f.write(text)
        elif self.csv_reporter is None or not self.csv_reporter.writes_to_stdout():
            self.stream.write(text)
            self.stream.flush()

    def __eq__(self, other):
        return type(self) == type(other)


class ParamsWriter(object):
    """Writes the resolved protocol parameters of a successful job to --emit-params."""
    def setup_parser(self, parser):
        parser.add_argument('--emit-params',
                            action='store',
                            dest='emit_params',
                            default=None,
                            metavar='PATH',
                            help="Write the resolved protocol parameters to this JSON file.")

    def initialise(self, args, env):
        self.path = args.emit_params
        self.failed = False
        return self.path is not None

    def validation_failed(self, job, exception):
        self.failed = True

    def numerical_failure(self, job, exception):
        self.failed = True

    def unexpected_error(self, exception):
        self.failed = True

    def job_ended(self, job):
        if self.failed or job is None or job.protocol_spec is None:
            return
        text = dump(job.protocol_spec.to_json())
        with tools.atomic_write(self.path) as f:
            f.write(text)

    def __eq__(self, other):
        return type(self) == type(other)


def dump(document):
    try:
        return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + '\n'
    except ValueError:
        raise errors.NonFiniteValue('summary', find_non_finite(document))


def find_non_finite(document):
    if isinstance(document, float) and not math.isfinite(document):
        return document
    values = document.values() if isinstance(document, dict) else document if isinstance(document, list) else ()
    for value in values:
        found = find_non_finite(value)
        if found is not None:
            return found
    return None
