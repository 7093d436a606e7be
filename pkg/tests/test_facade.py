import random

import pytest

from ocf.facade import ConsistencyError, Mode, OcfFilter
from ocf.params import FilterParams, InvalidParams
from ocf.policy import GROW, SHRINK, ResizeDirective


def new_filter(mode="pre", capacity=1024, seed=0, **kw):
    return OcfFilter(mode, FilterParams(capacity=capacity, **kw), seed=seed)


def random_keys(count, seed=0):
    rng = random.Random(seed)
    return [rng.randbytes(12) for _ in range(count)]


class TestConstruction:
    def test_empty_filter(self):
        f = new_filter(capacity=1024)
        assert f.occupancy == 0.0
        assert f.capacity == 1024
        assert f.stats().inserts == 0
        assert f.stats().resizes_up == 0

    def test_capacity_rounds_internally_only(self):
        f = new_filter(capacity=1000)
        assert f.capacity == 1000
        assert f.table.num_buckets == 1024

    def test_invalid_thresholds_rejected(self):
        with pytest.raises(InvalidParams):
            OcfFilter("pre", FilterParams(capacity=64, o_min=0.95))

    def test_mode_fixed_at_construction(self):
        assert new_filter("pre").mode is Mode.PRE
        assert new_filter("eof").mode is Mode.EOF
        assert new_filter("eof").alpha == 0.5
        assert new_filter("pre").alpha is None


class TestInsertContains:
    def test_single_insert(self):
        # o_min=0 keeps the near-empty filter from shrinking underneath
        # the assertion
        f = new_filter(capacity=1024, o_min=0.0)
        assert f.insert(b"x")
        assert f.contains(b"x")
        assert f.occupancy == 1 / (1024 * 4)

    def test_duplicate_insert(self):
        f = new_filter()
        assert f.insert(b"x")
        assert not f.insert(b"x")
        assert f.table.item_count == 1
        assert f.stats().inserts == 1

    def test_absent_key_on_empty_filter(self):
        assert not new_filter().contains(b"nope")

    def test_every_stored_key_visible(self):
        f = new_filter(capacity=256, seed=1)
        keys = random_keys(3000, seed=2)
        for k in keys:
            f.insert(k)
        assert all(f.contains(k) for k in keys)

    def test_false_positive_rate_at_half_load(self):
        f = new_filter(capacity=1024, seed=3, o_min=0.0)
        for k in random_keys(2048, seed=4):
            f.insert(k)
        rng = random.Random(5)
        probes = 100_000
        hits = sum(f.contains(b"p" + rng.randbytes(12)) for _ in range(probes))
        # collision bound 2b/2^f scaled by the 0.5 slot load
        expected = probes * (2 * 4 / 2 ** 8) * 0.5
        assert expected / 2 <= hits <= expected * 2


class TestDelete:
    def test_unverified_delete_rejected(self):
        f = new_filter(capacity=64, seed=6)
        keys = random_keys(100, seed=7)
        for k in keys:
            f.insert(k)
        assert not f.delete(b"never-inserted")
        assert all(f.contains(k) for k in keys)

    def test_singleton_delete(self):
        f = new_filter()
        f.insert(b"x")
        assert f.delete(b"x")
        assert not f.contains(b"x")

    def test_consistency_alarm_on_table_divergence(self):
        f = new_filter()
        f.insert(b"x")
        f.table.remove(b"x")  # simulate corruption behind the facade's back
        with pytest.raises(ConsistencyError):
            f.delete(b"x")


class TestResize:
    def test_grow_preserves_membership(self):
        f = new_filter(capacity=1024, seed=8)
        keys = random_keys(3000, seed=9)
        for k in keys:
            f.insert(k)
        report = f.resize(ResizeDirective(GROW, 2 * f.capacity))
        assert report.reinserted == 3000
        assert all(f.contains(k) for k in keys)

    def test_same_rounded_size_skips_rebuild(self):
        f = new_filter(capacity=1000)
        report = f.resize(ResizeDirective(GROW, 1024))
        assert f.capacity == 1024
        assert report.reinserted == 0

    def test_mass_delete_shrinks_to_safe_occupancy(self):
        f = new_filter(capacity=64, seed=10)
        keys = random_keys(4000, seed=11)
        for k in keys:
            f.insert(k)
        for k in keys[:3900]:
            f.delete(k)
        assert f.stats().resizes_down > 0
        assert f.occupancy <= 0.5
        assert all(f.contains(k) for k in keys[3900:])


class TestPolicyCoupling:
    def test_pre_capacity_trace_matches_replay(self):
        # replay the same insert stream against a standalone transcription
        # of the static-threshold rules
        f = new_filter("pre", capacity=64, seed=12)
        capacity = 64
        items = 0
        for k in random_keys(2000, seed=13):
            f.insert(k)
            items += 1
            occ = items / (capacity * 4)
            if occ > 0.9:
                capacity *= 2
            elif occ < 0.2 and capacity > 16:
                shed = capacity - capacity // 10
                if max(shed, 16, -(-items // 2)) < capacity:
                    capacity = max(shed, 16, -(-items // 2))
            assert f.capacity == capacity

    def test_eof_mode_grows_without_failures(self):
        f = new_filter("eof", capacity=64, seed=14)
        keys = random_keys(20_000, seed=15)
        for k in keys:
            assert f.insert(k)
        assert f.stats().resizes_up > 0
        assert all(f.contains(k) for k in keys)

    def test_burst_tolerance(self):
        # 100x the initial capacity in keys, zero insert failures
        f = new_filter("pre", capacity=16, seed=16)
        for k in random_keys(16 * 100, seed=17):
            assert f.insert(k)


class TestCoherenceAndDeterminism:
    def test_store_table_counts_agree(self):
        f = new_filter("eof", capacity=64, seed=18)
        rng = random.Random(19)
        live = []
        for _ in range(5000):
            if live and rng.random() < 0.3:
                f.delete(live.pop(rng.randrange(len(live))))
            else:
                k = rng.randbytes(12)
                if f.insert(k):
                    live.append(k)
            assert len(f.store) == f.table.item_count

    def test_fixed_seed_reproduces_stats(self):
        def run():
            f = new_filter("eof", capacity=64, seed=20)
            trace = []
            for k in random_keys(3000, seed=21):
                f.insert(k)
                trace.append(f.stats())
            return trace

        assert run() == run()
