"""
Logging setup through rich
"""
import logging
from typing import Optional, Union

from rich.console import Console
from rich.logging import RichHandler

_configured = False


def setup_logging(level: Union[int, str, None] = None, console: Optional[Console] = None) -> None:
    """
    Route the ``src`` logger hierarchy to a RichHandler.

    Args:
        level: Level name or number (defaults to the configured settings level)
        console: Console to write to (stderr console when omitted)
    """
    global _configured
    if level is None:
        from src.utils.settings import get_settings
        level = get_settings().log_level

    root = logging.getLogger("src")
    root.setLevel(level)
    if _configured:
        return

    handler = RichHandler(
        console=console or Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
    )
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    root.addHandler(handler)
    root.propagate = False
    _configured = True
