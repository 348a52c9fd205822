import logging
import sys

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_configured = False


def get_logger(name=None):
    r"""
    Return a logger below the ``clfbench`` namespace.

    The first call installs one stderr handler on the package logger, so
    standard output stays free for results.
    """
    global _configured
    root = logging.getLogger('clfbench')
    if not _configured:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root.addHandler(handler)
        root.setLevel(logging.WARNING)
        root.propagate = False
        _configured = True
    if name is None or name == 'clfbench':
        return root
    if name.startswith('clfbench.'):
        return logging.getLogger(name)
    return logging.getLogger('clfbench.' + name)


def set_verbosity(verbose):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    get_logger().setLevel(level)


def print_stats(name, stats):
    get_logger('report').info(
        f"{name:<14s} Average: {stats.mean:6.2f}, Deviation: {stats.deviation:5.2f}, "
        f"Best: {stats.best:6.2f}, Worst: {stats.worst:6.2f}")


def print_sweep(report):
    get_logger('report').info(
        f"{report.label:<24s} <S>: {report.mean_S:6.2f}, dS: {report.std_S:5.2f}, max S: {report.max_S:6.2f}")


def print_search(report):
    if report.improvement is None:
        get_logger('report').info(f"{report.classifier:<14s} p-value: {report.p_value:6.2f}, no improving trial")
        return
    imp = report.improvement
    get_logger('report').info(
        f"{report.classifier:<14s} p-value: {report.p_value:6.2f}, Mean: {imp.mean:5.2f}, "
        f"Deviation: {imp.deviation:5.2f}, Maximum: {imp.maximum:6.2f}")
