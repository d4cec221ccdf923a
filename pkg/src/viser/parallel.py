"""Worker-count policy shared by the per-state stage loops.

``VISER_THREADS`` caps parallelism: unset or 0 means automatic (currently
serial, which is fastest for the LP sizes handled here), 1 forces serial,
and k > 1 requests a pool of k threads.
"""

from __future__ import annotations

import os


def worker_count() -> int:
    raw = os.environ.get("VISER_THREADS", "0")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"VISER_THREADS must be an integer, got {raw!r}")
    if value < 0:
        raise ValueError("VISER_THREADS must be >= 0")
    if value == 0:
        return 1
    return value
