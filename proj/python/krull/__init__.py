"""Exact Krull dimensions of rings built from fields, polynomial rings,
quotients, localizations and tensor products."""

import json
from importlib import resources

from ._krull import UsageError, canonical, schema_version
from ._krull import run as _run

__all__ = ["UsageError", "canonical", "run", "dim", "schema", "schema_version"]


def run(*args):
    """Run a command given as CLI arguments; returns (exit_code, report)."""
    code, text = _run([str(a) for a in args])
    return code, json.loads(text)


def dim(expression, *options):
    """The `dimension` object of a `dim` report; raises UsageError on failure."""
    code, report = run("dim", *options, expression)
    if code != 0:
        raise UsageError(report["error"]["message"])
    return report["result"]["dimension"]


def schema():
    """The published report schema."""
    return json.loads(resources.files(__package__).joinpath("report.schema.json").read_text())
