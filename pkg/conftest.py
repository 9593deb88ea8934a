"""
Collection bridge so pytest can run the Contexts-style suite under test/.

The tests follow the Contexts conventions (``*_tests.py`` files, ``When...``
classes, ``establish``/``because``/``it_should``/``cleanup`` methods). pytest
does not collect those on its own, so each Contexts class becomes one pytest
item, and the class runs through Contexts' own ``core.TestClass`` machinery.
Every failure or error it reports is raised back to pytest.
"""
import inspect
import os

import pytest
from contexts import core
from contexts.plugin_interface import CONTEXT, NO_EXAMPLE
from contexts.plugins.identification import NameBasedIdentifier
from contexts.plugins.identification.decorators import DecoratorBasedIdentifier


TEST_ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'test')


def _identifiers():
    return [DecoratorBasedIdentifier(), NameBasedIdentifier()]


def pytest_collect_file(file_path, parent):
    path = str(file_path)
    if not path.startswith(TEST_ROOT + os.sep) or not path.endswith('.py'):
        return None
    if NameBasedIdentifier().identify_file(path) is None:
        return None
    return ContextsModule.from_parent(parent, path=file_path)


class ContextsModule(pytest.Module):
    def collect(self):
        module = self.obj
        composite = core.PluginComposite(_identifiers())
        for name, cls in inspect.getmembers(module, inspect.isclass):
            if composite.identify_class(cls) is CONTEXT:
                yield ContextsClassItem.from_parent(self, name=name, context_class=cls)


class _Recorder(object):
    def __init__(self):
        self.problems = []
        self.example = NO_EXAMPLE

    def context_started(self, cls, example):
        self.example = example

    def assertion_failed(self, func, exception):
        self.problems.append(('FAIL', func.__name__, self.example, exception))

    def assertion_errored(self, func, exception):
        self.problems.append(('ERROR', func.__name__, self.example, exception))

    def context_errored(self, cls, example, exception):
        self.problems.append(('ERROR', cls.__name__, example, exception))

    def test_class_errored(self, cls, exception):
        self.problems.append(('ERROR', cls.__name__, NO_EXAMPLE, exception))

    def unexpected_error(self, exception):
        self.problems.append(('ERROR', 'unexpected', NO_EXAMPLE, exception))


class ContextsFailure(Exception):
    pass


class ContextsClassItem(pytest.Item):
    def __init__(self, *, context_class, **kwargs):
        super().__init__(**kwargs)
        self.cls = context_class

    def runtest(self):
        recorder = _Recorder()
        composite = core.PluginComposite(_identifiers() + [recorder])
        test_class = core.TestClass(self.cls, composite)
        with test_class.exception_handler.run_test_run(None):
            test_class.run()
        if recorder.problems:
            raise ContextsFailure(recorder.problems)

    def repr_failure(self, excinfo):
        if not isinstance(excinfo.value, ContextsFailure):
            return super().repr_failure(excinfo)
        import traceback
        lines = []
        for kind, name, example, exception in excinfo.value.args[0]:
            where = name if example is NO_EXAMPLE else '{} -> {!r}'.format(name, example)
            lines.append('{}: {}'.format(kind, where))
            lines.extend(traceback.format_exception(type(exception), exception, exception.__traceback__))
        return '\n'.join(lines)

    def reportinfo(self):
        return self.path, None, self.name
