def builtin_plugins():
    """
    The plugin classes RepeaterLab ships with, in the order they are
    registered under the `repeaterlab.plugins` entry point group.
    """
    from .commands import AnalyzeCommand, SweepCommand, SimulateCommand, CompareCommand
    from .threads import ThreadLimiter
    from .reporting import ExitCodeReporter, ErrorReporter
    from .reporting.cli import DotsReporter, VerboseReporter, TimedReporter, Colouriser, UnColouriser
    from .reporting.csv import CsvReporter
    from .reporting.summary import JsonReporter, ParamsWriter
    return [
        AnalyzeCommand, SweepCommand, SimulateCommand, CompareCommand,
        ThreadLimiter,
        CsvReporter, JsonReporter, ParamsWriter,
        Colouriser, DotsReporter, VerboseReporter, TimedReporter, ErrorReporter, UnColouriser,
        ExitCodeReporter,
    ]
