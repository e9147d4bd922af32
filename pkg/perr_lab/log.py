"""
Logging setup shared by the library, the command line and worker processes.

Worker processes do not inherit handler levels, therefore ``set_log_level`` is
also used as the process pool initializer.
"""
import logging
import sys

PACKAGE_LOGGER = "perr_lab"

formatter = logging.Formatter("%(asctime)s %(levelname)s %(name)s %(message)s")
stream_handler = logging.StreamHandler(sys.stdout)
stream_handler.setFormatter(formatter)
stream_handler.setLevel(logging.WARNING)
logging.getLogger(PACKAGE_LOGGER).addHandler(stream_handler)


def set_log_level(loglevel):
    """Set level of the package logger and its stream handler."""
    stream_handler.setLevel(loglevel)
    logging.getLogger(PACKAGE_LOGGER).setLevel(loglevel)


def setup_logfile(logfile):
    """Write debug output of the whole package into logfile."""
    file_handler = logging.FileHandler(logfile)
    file_handler.setFormatter(formatter)
    package_logger = logging.getLogger(PACKAGE_LOGGER)
    package_logger.addHandler(file_handler)
    package_logger.setLevel(logging.DEBUG)
    return file_handler
