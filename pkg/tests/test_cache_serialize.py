import json
from fractions import Fraction

import pytest

from relfrob.battery import builtin_group
from relfrob.cache import TableCache
from relfrob.chartable import CharacterTable, _dixon_schneider
from relfrob.numerics import Cyclotomic, LaurentPoly
from relfrob.serialize import cyclotomic_from_json, cyclotomic_to_json, dumps, to_jsonable


@pytest.mark.parametrize("name", ["A4", "Q8", "GL2(F3)"])
def test_cache_roundtrip(tmp_path, name):
    G, _ = builtin_group(name)
    fresh = CharacterTable(G, _dixon_schneider(G))
    cache = TableCache(tmp_path)
    assert cache.load(G) is None
    cache.store(fresh)
    loaded = cache.load(G)
    assert loaded is not None and loaded.values == fresh.values


def test_cache_rejects_other_versions_and_corruption(tmp_path):
    G, _ = builtin_group("S3")
    cache = TableCache(tmp_path)
    cache.store(CharacterTable(G, _dixon_schneider(G)))
    path = cache.path_for(G)
    data = json.loads(path.read_text())
    path.write_text(json.dumps({**data, "version": 99}))
    assert cache.load(G) is None
    bad = [row[:] for row in data["values"]]
    bad[1][1] = cyclotomic_to_json(Cyclotomic.rational(7))
    path.write_text(json.dumps({**data, "values": bad}))
    assert cache.load(G) is None
    path.write_text("{not json")
    assert cache.load(G) is None


def test_env_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("RELFROB_CACHE_DIR", str(tmp_path / "envdir"))
    assert TableCache().directory == tmp_path / "envdir"


def test_serialisation_is_exact():
    z = Cyclotomic.zeta(3) * Fraction(2, 7) + 1
    assert cyclotomic_from_json(cyclotomic_to_json(z)) == z
    assert to_jsonable(Fraction(-3, 4)) == "-3/4"
    assert to_jsonable(Fraction(5)) == "5/1"
    p = to_jsonable(LaurentPoly({-1: 1, 2: Fraction(1, 2)}))
    assert p["terms"] == [[2, "1/2"], [-1, "1/1"]] or p["terms"] == [[-1, "1/1"], [2, "1/2"]]
    assert dumps({"b": 1, "a": [Fraction(1, 3)]}) == '{\n  "a": [\n    "1/3"\n  ],\n  "b": 1\n}\n'
