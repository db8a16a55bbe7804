# rankforge/utils.py

import logging
import time

from rich.console import Console
from rich.logging import RichHandler

from rankforge import config

# stdout is reserved for reports
console = Console(stderr=True)

_LOGGING_READY = False


def get_logger(name: str) -> logging.Logger:
    """
    Returns a logger under the "rankforge" hierarchy. The first call installs
    a RichHandler on the package root logger, writing to stderr.
    """
    global _LOGGING_READY
    if not _LOGGING_READY:
        root = logging.getLogger("rankforge")
        handler = RichHandler(console=console, show_path=False, rich_tracebacks=False)
        handler.setFormatter(logging.Formatter("%(message)s"))
        root.addHandler(handler)
        root.setLevel(config.LOG_LEVEL.upper())
        root.propagate = False
        _LOGGING_READY = True
    if not name.startswith("rankforge"):
        name = f"rankforge.{name}"
    return logging.getLogger(name)


def set_verbosity(verbose: int) -> None:
    """0 keeps config.LOG_LEVEL, 1 → INFO, 2+ → DEBUG."""
    get_logger("rankforge")
    if verbose >= 2:
        logging.getLogger("rankforge").setLevel(logging.DEBUG)
    elif verbose == 1:
        logging.getLogger("rankforge").setLevel(logging.INFO)


def print_progress(index=0, size=1, start_time=None, extra_info=None, indent_level=0, indent_unit="  ", worker_id=None):
    """
    Progress line on stderr: percent done, seconds per item and
    elapsed+remaining=total. Callers running workers hold their own lock.

    Args:
        index: current 0-based position.
        size: total number of items.
        start_time: time.time() at the start of the loop.
        extra_info: extra strings appended to the line.
        worker_id: optional worker label, printed as W<id>.
    """
    if start_time is None:
        start_time = time.time()
    if extra_info is None:
        extra_info = []

    try:
        completed = index + 1
        remaining = size - completed
        pct = completed / size

        elapsed = time.time() - start_time
        avg = elapsed / completed
        remain = remaining * avg
        total = elapsed + remain

        def fmt(seconds):
            h, r = divmod(int(seconds), 3600)
            m, s = divmod(r, 60)
            return f"{h}h{m:02}m{s:02}s"

        worker_str = f"W{worker_id} " if worker_id else ""
        progress = (
            f"{pct:.2%} ({worker_str}{completed}/{size}), {avg:.4f}s/item, "
            f"{fmt(elapsed)}+{fmt(remain)}={fmt(total)}"
        )
        indent = indent_unit * (indent_level + 1)
        extra = " ".join(map(str, extra_info))
        console.print(f"{indent}{progress} {extra}", markup=False, highlight=False)
    except Exception as e:
        console.print(f"progress display failed: {e}", markup=False)
