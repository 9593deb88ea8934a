import argparse
from io import StringIO


class ExceptionThrowingArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise Exception(message)


class TtyStringIO(StringIO):
    def isatty(self):
        return True


class FakeJob(object):
    name = 'fake'

    def __init__(self, protocol_spec=None):
        self.threads = 1
        self.protocol_spec = protocol_spec


def parse(plugins, argv):
    parser = ExceptionThrowingArgumentParser()
    for plugin in plugins:
        if hasattr(plugin, 'setup_parser'):
            plugin.setup_parser(parser)
    return parser.parse_args(argv)


def initialise(plugin, argv=(), environ=None):
    args = parse([plugin], list(argv))
    return plugin.initialise(args, {} if environ is None else environ)
