from .. import tools


class ThreadLimiter(object):
    """Owns --threads and REPEATERLAB_THREADS, and hands the cap to each job."""
    def setup_parser(self, parser):
        parser.add_argument('--threads',
                            action='store',
                            type=int,
                            default=None,
                            help="Worker threads for sweeps and simulations. "
                                 "(Default: ${} or 1)".format(tools.THREADS_VARIABLE))

    def initialise(self, args, environ):
        self.override = args.threads
        self.environ = environ
        return True

    def job_started(self, job):
        if job is not None:
            job.threads = tools.thread_cap(self.override, self.environ)

    def __eq__(self, other):
        return type(self) == type(other)
