"""Symplectic isotopies of the flat torus: flows, Hofer-like lengths, regularization and flux."""

import json as _json

from ._core import *  # noqa: F401,F403
from ._core import __version__, run as _run


def run(command, config=None):
    """Run an experiment (same names as the CLI subcommands) and return the report as a dict."""
    text = "" if config is None else _json.dumps(config)
    return _json.loads(_run(command, text))
