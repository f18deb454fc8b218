"""Reading matrices from disk for the command-line front end."""

from __future__ import annotations

import numpy as np


def read_matrix(path):
    """Load a dense nonnegative matrix from a CSV or Matrix Market file.

    The format is sniffed from the leading bytes: a ``%%MatrixMarket``
    banner goes through :func:`scipy.io.mmread` (sparse results are
    densified), anything else is parsed as comma-separated values.  A
    single-row CSV comes back with shape (1, n).
    """
    with open(path, "rb") as fh:
        head = fh.read(64)
    if head.lstrip().startswith(b"%%MatrixMarket"):
        from scipy.io import mmread

        M = mmread(path)
        if hasattr(M, "toarray"):
            M = M.toarray()
        M = np.asarray(M, dtype=float)
    else:
        M = np.atleast_2d(np.loadtxt(path, delimiter=",", dtype=float))
    if M.ndim != 2 or M.size == 0:
        raise ValueError("%s does not contain a two-dimensional matrix" % path)
    if not np.all(np.isfinite(M)):
        raise ValueError("%s contains non-finite entries" % path)
    if np.any(M < 0):
        raise ValueError("%s contains negative entries; inputs must be nonnegative" % path)
    return M
