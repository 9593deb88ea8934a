import sys
from . import core
from .plugin_discovery import load_plugins


__all__ = ['run', 'main', 'run_with_plugins']


def main(argv=None):
    """
    Call repeaterlab.run() with the specified arguments and exit with its code:
    0 on success, 2 on a validation error, 3 on a numerical failure
    and 1 on anything unexpected.
    """
    exit_code = run(argv)
    sys.exit(exit_code)


def run(argv=None):
    """
    Run the subcommand named in argv (default: sys.argv[1:]).

    Returns: exit code as an integer.
    """
    plugin_list = load_plugins(argv)
    return run_with_plugins(plugin_list)


def run_with_plugins(plugin_list):
    """
    Run one job with the supplied list of plugin instances.
    The command plugins are expected to supply the job.

    Parameters:
        plugin_list: a list of plugin instances (objects which implement some subset of PluginInterface)
    Returns: exit code as an integer.
    """
    composite = core.PluginComposite(plugin_list)

    job = composite.get_job()

    job_run = core.JobRun(job, composite)
    job_run.run()

    return composite.get_exit_code()
