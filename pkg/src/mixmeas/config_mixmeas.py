import copy
import logging

from .constants import LOG_COLORS, LOG_FILE_FORMAT, LOG_FORMAT, LOG_RESET


class ColorFormatter(logging.Formatter):
    """Formatter that colors the level name with the codes of ``LOG_COLORS``.

    The record is copied before coloring, so other handlers attached to the
    same logger (the plain log file) keep the bare level name.
    """

    def format(self, record):
        color = LOG_COLORS.get(record.levelname)
        if color is None:
            return super().format(record)
        colored = copy.copy(record)
        colored.levelname = f"{color}{record.levelname}{LOG_RESET}"
        return super().format(colored)


def configure_logging(level=logging.INFO, log_file=None):
    """Install a colored console handler and, optionally, a plain file handler.

    The CLI calls this once before loading the configuration. Calling it again
    replaces the handlers of the previous call.

    Args:
        level (int, optional): Threshold such as ``logging.INFO`` or ``logging.DEBUG``.
        log_file (str or Path, optional): File that receives the same records with
            timestamps and without color codes.
    """
    console = logging.StreamHandler()
    console.setFormatter(ColorFormatter(LOG_FORMAT))
    handlers = [console]

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(LOG_FILE_FORMAT))
        handlers.append(file_handler)

    logging.basicConfig(level=level, handlers=handlers, force=True)
