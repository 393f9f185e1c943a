"""Exact verification tools for Lie-group matrix multiplication constructions."""

import json as _json

from ._liemm import (  # noqa: F401
    NoBound,
    __version__,
    max_dim,
    omega_bound,
    partitions_of,
    run_cli,
    subcommands,
    sum_dim_squares,
    weyl_dim,
)


def report(*args):
    """Run a subcommand and return (exit_code, parsed JSON report)."""
    code, out, err = run_cli([*args, "--format", "json"])
    if code == 3:
        raise ValueError(err.strip())
    return code, _json.loads(out)
