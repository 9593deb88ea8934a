import csv
import io
import sys
from ... import tools


class CsvReporter(object):
    """
    Collects the rows a job produces and writes them as CSV once the job
    has ended cleanly: to the --output file, or to stdout.
    """
    @classmethod
    def locate(cls):
        from .summary import JsonReporter
        return (None, JsonReporter)

    def __init__(self, stream=None):
        self.stream = sys.stdout if stream is None else stream
        self.columns = None
        self.rows = None
        self.failed = False

    def setup_parser(self, parser):
        parser.add_argument('-o', '--output',
                            action='store',
                            dest='output',
                            default=None,
                            metavar='PATH',
                            help="Write the result rows to this CSV file instead of stdout.")

    def initialise(self, args, env):
        self.path = args.output
        return True

    def rows_ready(self, job, columns, rows):
        self.columns = list(columns)
        self.rows = list(rows)

    def validation_failed(self, job, exception):
        self.failed = True

    def numerical_failure(self, job, exception):
        self.failed = True

    def unexpected_error(self, exception):
        self.failed = True

    def job_ended(self, job):
        if self.failed or self.columns is None:
            return
        text = render(self.columns, self.rows)
        if self.path is None:
            self.stream.write(text)
            self.stream.flush()
        else:
            with tools.atomic_write(self.path) as f:
                f.write(text)

    def writes_to_stdout(self):
        return self.path is None and self.columns is not None

    def __eq__(self, other):
        return type(self) == type(other)


def render(columns, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(columns)
    for row in rows:
        writer.writerow([tools.format_number(row.get(column), column) for column in columns])
    return buffer.getvalue()
