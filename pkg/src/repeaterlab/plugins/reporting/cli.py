import argparse
import datetime
from . import StreamReporter, ErrorReporter


class DotsReporter(StreamReporter):
    @classmethod
    def locate(cls):
        return (Colouriser, VerboseReporter)

    def initialise(self, args, env):
        self.dots_on_line = False
        return args.verbosity == 'normal'

    def point_computed(self, job, index, total):
        self._print('.', end='')
        self.dots_on_line = True

    def warning_issued(self, job, message):
        self.end_line()
        self._print('WARNING: ' + message)

    def job_ended(self, job):
        self.end_line()

    def end_line(self):
        if self.dots_on_line:
            self._print('')
            self.dots_on_line = False


class VerboseReporter(StreamReporter):
    def setup_parser(self, parser):
        group = parser.add_mutually_exclusive_group(required=False)
        group.add_argument('-v', '--verbose',
                           action='store_const',
                           dest='verbosity',
                           const='verbose',
                           default='normal',
                           help="Enable verbose progress reporting.")
        group.add_argument('-q', '--quiet',
                           action='store_const',
                           dest='verbosity',
                           const='quiet',
                           default='normal',
                           help="Disable progress reporting and warnings.")

    def initialise(self, args, env):
        return args.verbosity == 'verbose'

    def job_started(self, job):
        if job is not None:
            self._print('Running ' + job.name)

    def point_computed(self, job, index, total):
        self._print('  point {} of {}'.format(index + 1, total))

    def rows_ready(self, job, columns, rows):
        self._print('  {} rows of {}'.format(len(rows), ', '.join(columns)))

    def warning_issued(self, job, message):
        self._print('WARNING: ' + message)

    def job_ended(self, job):
        if job is not None:
            self._print('Finished ' + job.name)


class TimedReporter(StreamReporter):
    @classmethod
    def locate(cls):
        return (VerboseReporter, ErrorReporter)

    def initialise(self, args, env):
        self.start_time = datetime.datetime.now()
        return args.verbosity == 'verbose'

    def job_started(self, job):
        self.start_time = datetime.datetime.now()

    def job_ended(self, job):
        self.end_time = datetime.datetime.now()
        self.print_time()

    def print_time(self):
        total_secs = (self.end_time - self.start_time).total_seconds()
        rounded = round(total_secs, 1)
        self._print("({} seconds)".format(rounded))


class Colouriser(StreamReporter):
    @classmethod
    def locate(cls):
        return (None, DotsReporter)

    def setup_parser(self, parser):
        add_colour_argument(parser)

    def initialise(self, args, env):
        return colour_wanted(self.stream, args)

    def warning_issued(self, job, message):
        self.stream.write(colorama.Fore.YELLOW)  # noqa

    def validation_failed(self, job, exception):
        self.stream.write(colorama.Fore.RED)  # noqa

    def numerical_failure(self, job, exception):
        self.stream.write(colorama.Fore.RED)  # noqa

    def unexpected_error(self, exception):
        self.stream.write(colorama.Fore.RED)  # noqa


class UnColouriser(StreamReporter):
    @classmethod
    def locate(cls):
        return (ErrorReporter, None)

    def setup_parser(self, parser):
        add_colour_argument(parser)

    def initialise(self, args, env):
        return colour_wanted(self.stream, args)

    def warning_issued(self, job, message):
        self.stream.write(colorama.Fore.RESET)  # noqa

    def validation_failed(self, job, exception):
        self.stream.write(colorama.Fore.RESET)  # noqa

    def numerical_failure(self, job, exception):
        self.stream.write(colorama.Fore.RESET)  # noqa

    def unexpected_error(self, exception):
        self.stream.write(colorama.Fore.RESET)  # noqa


def add_colour_argument(parser):
    try:
        parser.add_argument('--no-colour',
                            action='store_false',
                            dest='colour',
                            default=True,
                            help='Disable coloured output.')
    except argparse.ArgumentError:
        # just means the other one already did it
        pass


def colour_wanted(stream, args):
    if not stream.isatty():
        return False
    if args.colour:
        global colorama
        try:
            import colorama  # noqa
        except ImportError:
            return False
        return True
    return False
