import logging
import os

import fsspec
from fsspec.core import split_protocol

logger = logging.getLogger(__name__)


def fs_from_path(path, **kwargs):
    """Guess fsspec FileSystem from path and initialize using the desired options."""
    protocol, _ = split_protocol(str(path))
    return fsspec.filesystem(protocol or "file", **kwargs)


def path_is_remote(path):
    """
    Determine whether file path is remote or local.

    Parameters
    ----------
    path : path to location

    Returns
    -------
    is_remote : bool
    """
    protocol, _ = split_protocol(str(path))
    return protocol not in (None, "file")


def path_exists(path, fs=None, **kwargs):
    """
    Check if file exists either remote or local.

    Parameters
    ----------
    path : path to file

    Returns
    -------
    exists : bool
    """
    fs = fs or fs_from_path(path, **kwargs)
    fs.invalidate_cache(path=path)
    return fs.exists(path)


def makedirs(path, fs=None):
    """Silently create all subdirectories of path if path is local."""
    path = str(path)
    # object stores have no directories
    if not path or path_is_remote(path):
        return
    fs = fs or fs_from_path(path)
    fs.makedirs(path, exist_ok=True)


def parent_dir(path):
    return os.path.dirname(str(path).rstrip("/"))
