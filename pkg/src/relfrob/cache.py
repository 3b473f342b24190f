"""On-disk cache of character tables keyed by a hash of the multiplication table."""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

from . import config
from .chartable import CharacterTable
from .errors import InternalInconsistency
from .groups import FiniteGroup
from .serialize import cyclotomic_from_json, cyclotomic_to_json

log = logging.getLogger(__name__)

CACHE_FORMAT = "relfrob-chartable"
CACHE_VERSION = 1


class TableCache:
    def __init__(self, directory=None):
        self.directory = config.cache_dir(directory)

    def path_for(self, G: FiniteGroup) -> Path:
        return self.directory / f"{G.content_hash}.json"

    def load(self, G: FiniteGroup) -> CharacterTable | None:
        path = self.path_for(G)
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if (data.get("format") != CACHE_FORMAT or data.get("version") != CACHE_VERSION
                or data.get("hash") != G.content_hash):
            return None
        if list(data.get("class_reps", [])) != list(G.conjugacy.reps):
            return None
        try:
            values = [[cyclotomic_from_json(v) for v in row] for row in data["values"]]
            return CharacterTable(G, values, check=True)
        except (KeyError, ValueError, TypeError, InternalInconsistency):
            log.warning("ignoring corrupt cache entry %s", path)
            return None

    def store(self, table: CharacterTable) -> None:
        G = table.group
        data = {
            "format": CACHE_FORMAT,
            "version": CACHE_VERSION,
            "hash": G.content_hash,
            "order": G.order,
            "class_reps": list(G.conjugacy.reps),
            "values": [[cyclotomic_to_json(v) for v in row] for row in table.values],
        }
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(data, fh, sort_keys=True)
            os.replace(tmp, self.path_for(G))
        except OSError as exc:
            log.warning("could not write character-table cache: %s", exc)
