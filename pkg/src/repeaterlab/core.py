from contextlib import contextmanager
from . import errors
from .plugin_interface import PluginInterface


class JobRun(object):
    def __init__(self, job, plugin_composite):
        self.job = job
        self.plugin_composite = plugin_composite
        self.exception_handler = ExceptionHandler(self.plugin_composite)

    def run(self):
        with self.exception_handler.run_job(self.job):
            self.plugin_composite.job_started(self.job)
            if self.job is None:
                raise errors.SpecError("No command was given")
            self.job.run(self.plugin_composite)


class ExceptionHandler(object):
    def __init__(self, plugin_composite):
        self.plugin_composite = plugin_composite

    @contextmanager
    def run_job(self, job):
        with self.routing_errors(job):
            yield
        with self.routing_errors(job):
            self.plugin_composite.job_ended(job)

    @contextmanager
    def routing_errors(self, job):
        try:
            yield
        except errors.ValidationError as e:
            self.plugin_composite.validation_failed(job, e)
        except errors.NumericalError as e:
            self.plugin_composite.numerical_failure(job, e)
        except Exception as e:
            self.plugin_composite.unexpected_error(e)


class PluginComposite(object):
    def __init__(self, plugins):
        self.plugins = plugins

    def __getattr__(self, name):
        if name not in PluginInterface.__dict__:  # not expecting this to happen
            raise AttributeError('The method {} is not part of the plugin interface'.format(name))

        def plugin_method(*args, **kwargs):
            for plugin in self.plugins:
                reply = getattr(plugin, name, lambda *_: None)(*args, **kwargs)
                if reply is not None:
                    return reply
        return plugin_method
