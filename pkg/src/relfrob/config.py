"""Runtime configuration (work bounds, thread counts, cache location)."""

import os
from pathlib import Path

DEFAULT_WORK_BOUND = 10**9
# literal tuple enumeration of the stabilizer form is run only below this size
DEFAULT_TUPLE_BOUND = 10**7


def work_bound(override=None) -> int:
    if override is not None:
        return int(override)
    return int(os.environ.get("RELFROB_WORK_BOUND", DEFAULT_WORK_BOUND))


def cache_dir(override=None) -> Path:
    if override is not None:
        return Path(override)
    env = os.environ.get("RELFROB_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or Path.home() / ".cache"
    return Path(base) / "relfrob"
