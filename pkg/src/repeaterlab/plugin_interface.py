class PluginInterface(object):
    """
    Defines the interface for plugins.

    You do not need to inherit from this class in your own plugins.
    Just create a new class and implement `initialise` (and one or more other hooks).
    """
    @classmethod
    def locate(cls):
        """
        Called before the plugin is instantiated, to determine where it should
        appear in the list of plugins.
        The ordering of this list matters. If a plugin returns a (non-``None``) value
        from a given method, plugins later in the list will not get called.

        Plugins may return a 2-tuple of ``(left, right)``.
        Here, ``left`` is a plugin class which this plugin wishes to *follow*,
        and ``right`` is a class the plugin wishes to *precede*.
        Either or both of the values may be `None`.
        Returning ``None`` from this method is equivalent to returning ``(None, None)``.
        """
    def setup_parser(self, parser):
        """
        Called before command-line arguments are parsed.

        :param parser: An :class:`argparse.ArgumentParser` whose options are shared
            by every subcommand. Plugins add the options they need to configure themselves.
        """
    def setup_commands(self, subparsers, parents):
        """
        Called before command-line arguments are parsed, after ``setup_parser``.

        Command plugins register their subcommand here.

        :param subparsers: The object returned by
            :meth:`ArgumentParser.add_subparsers <argparse.ArgumentParser.add_subparsers>`.
        :param parents: A list of parsers to pass as ``parents=`` so the subcommand
            accepts the shared options.
        """
    def initialise(self, args, environ):
        """
        Called after command-line arguments are parsed.

        :param args: The parsed :class:`argparse.Namespace`; ``args.command`` names the subcommand.
        :param environ: The value of :data:`os.environ`.

        :return: A boolean. Returning ``True`` will cause the plugin to be added to the list of plugins
            for this run. Returning ``False`` will prevent this.
        """
    def request_plugins(self):
        """
        Called after all plugins have been initialised.

        This must be a generator method. Yield an iterable of other plugin classes,
        and you will be sent a dictionary mapping those classes to the active instances
        of those plugins. Requested plugins that do not have an active instance will not be
        present in the dict.
        """

    def get_job(self):
        """
        Called to find out what to run.

        :return: A job object with a ``name`` attribute and a ``run(plugin_composite)`` method,
            or ``None`` to leave the decision to a later plugin.
        """

    def job_started(self, job):
        """Called before the job runs. Raising a RepeaterLabError here fails the job."""
    def point_computed(self, job, index, total):
        """
        Called as each unit of work (a sweep point, a simulated chunk) finishes,
        in order.
        """
    def rows_ready(self, job, columns, rows):
        """
        Called when the job has produced tabular output.

        :param columns: A list of column names.
        :param rows: A list of dicts keyed by column name.
        """
    def summary_ready(self, job, summary):
        """
        Called when the job has produced a summary document.

        :param summary: A JSON-serialisable dict.
        """
    def warning_issued(self, job, message):
        """Called when a job meets a condition that deserves a notice but is not a failure."""
    def job_ended(self, job):
        """
        Called after the job, whether or not it succeeded.
        Output files are written from here and only here.
        """

    def validation_failed(self, job, exception):
        """
        Called when the job's input is invalid.

        :param exception: The :class:`~repeaterlab.errors.ValidationError` that was raised.
        """
    def numerical_failure(self, job, exception):
        """
        Called when a computation cannot produce a trustworthy answer.

        :param exception: The :class:`~repeaterlab.errors.NumericalError` that was raised.
        """
    def unexpected_error(self, exception):
        """
        Called when any other exception escapes a job.

        :param exception: The exception instance.
        """

    def get_exit_code(self):
        """
        Called at the end of the run.

        :return: The desired exit code for the process.
        """
