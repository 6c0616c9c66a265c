import json
import os

import pytest

from utils.cache import CacheStore
from utils.constants import ErrorCode
from utils.errors import VerificationError
from vertex.fock import FockSpace
from vertex.integral import cached_closure, form_from_payload, form_payload, integral_closure
from vertex.lattice import resolve_lattice
from utils.config import Config


@pytest.fixture
def store(cache_dir):
    return CacheStore(cache_dir)


@pytest.fixture(scope="module")
def small_space():
    return FockSpace(resolve_lattice("A1", Config.LATTICE_DIR), sector_window=1, weight_bound=2)


class TestCacheStore:
    def test_cold_then_warm(self, store):
        calls = []

        def compute():
            calls.append(1)
            return {"basis": [[1, 0], [0, 2]]}

        first = store.get_or_compute("piece", {"w": 1}, compute)
        second = store.get_or_compute("piece", {"w": 1}, compute)
        assert first == second
        assert len(calls) == 1

    def test_checksum_mismatch(self, store, cache_dir):
        key = store.key_for("piece", {"w": 2})
        store.store(key, {"basis": [[1]]})
        path = os.path.join(cache_dir, f"{key}.json")
        with open(path) as f:
            blob = json.load(f)
        blob["payload"]["basis"] = [[2]]
        with open(path, "w") as f:
            json.dump(blob, f)
        with pytest.raises(VerificationError) as err:
            store.load(key)
        assert err.value.code is ErrorCode.CACHE_CORRUPT
        assert store.get_or_compute("piece", {"w": 2}, lambda: {"basis": [[1]]}) == {"basis": [[1]]}

    def test_disabled(self):
        store = CacheStore(None)
        assert store.get_or_compute("piece", {}, lambda: 7) == 7
        assert store.load("anything") is None


class TestClosureCache:
    def test_payload_restores_form(self, small_space):
        form = integral_closure(small_space)
        assert form_from_payload(small_space, json.loads(json.dumps(form_payload(form)))) == form

    def test_roundtrip_through_store(self, small_space, store, cache_dir):
        cold = cached_closure(small_space, cache=store)
        assert len(os.listdir(cache_dir)) == 1
        warm = cached_closure(small_space, cache=store)
        assert warm == cold
        assert form_payload(warm) == form_payload(cold)
