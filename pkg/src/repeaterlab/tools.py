import math
import os
import tempfile
import time as time_module
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from . import errors


THREADS_VARIABLE = 'REPEATERLAB_THREADS'


def timed(func, *args, **kwargs):
    """
    Call the supplied function with the supplied arguments,
    and return its result together with the execution time.

    Arguments:
        func: the function to run.
        *args: positional arguments to pass into the function.
        **kwargs: keyword arguments to pass into the function.
    Returns:
        A 2-tuple of (return value, wall time in seconds as a float).
    """
    start_time = time_module.perf_counter()
    result = func(*args, **kwargs)
    end_time = time_module.perf_counter()
    return result, end_time - start_time


def thread_cap(override=None, environ=None):
    """
    Work out how many worker threads a job may use.

    An explicit override (from the command line) wins over the
    REPEATERLAB_THREADS environment variable; the default is 1.
    """
    if override is not None:
        return positive_int('threads', override)
    environ = os.environ if environ is None else environ
    raw = environ.get(THREADS_VARIABLE)
    if raw is None or raw.strip() == '':
        return 1
    return positive_int(THREADS_VARIABLE, raw)


def positive_int(name, value):
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise errors.ArgumentOutOfRange(name, value, "positive integers")
    if number < 1 or (isinstance(value, float) and value != number):
        raise errors.ArgumentOutOfRange(name, value, "positive integers")
    return number


def parallel_map(func, items, threads=1, on_result=None):
    """
    Map func over items, in order, using up to `threads` worker threads.
    Results always come back in the order of `items`; `on_result(index, result)`
    is called from the calling thread as each one becomes available.
    """
    items = list(items)
    results = []
    if threads <= 1 or len(items) <= 1:
        outcomes = map(func, items)
        return _collect(outcomes, results, on_result)
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as executor:
        return _collect(executor.map(func, items), results, on_result)


def _collect(outcomes, results, on_result):
    for index, result in enumerate(outcomes):
        results.append(result)
        if on_result is not None:
            on_result(index, result)
    return results


def format_number(value, column='value'):
    """
    Render a number for CSV output: None as an empty cell, integers
    verbatim, floats with 17 significant digits. Non-finite floats are
    refused.
    """
    if value is None:
        return ''
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    value = float(value)
    if not math.isfinite(value):
        raise errors.NonFiniteValue(column, value)
    return format(value, '.17g')


@contextmanager
def atomic_write(path, mode='w'):
    """
    Open a temporary file next to `path` and move it into place only
    if the block completes without raising.
    """
    folder = os.path.dirname(os.path.abspath(path))
    fd, temp_path = tempfile.mkstemp(dir=folder, prefix='.' + os.path.basename(path) + '.', suffix='.tmp')
    try:
        with os.fdopen(fd, mode, newline='' if 'b' not in mode else None) as f:
            yield f
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise
