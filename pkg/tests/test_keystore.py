import random

from hypothesis import given, settings, strategies as st

from ocf.keystore import KeyStore


def test_add_and_contains():
    store = KeyStore()
    assert b"a" not in store
    assert store.add(b"a")
    assert b"a" in store
    assert len(store) == 1


def test_double_add_rejected():
    store = KeyStore()
    assert store.add(b"a")
    assert not store.add(b"a")
    assert len(store) == 1


def test_remove_absent():
    store = KeyStore()
    assert not store.remove(b"a")
    assert len(store) == 0


def test_add_remove_roundtrip():
    store = KeyStore()
    store.add(b"a")
    assert store.remove(b"a")
    assert len(store) == 0
    assert b"a" not in store


def test_iterate_empty():
    assert list(KeyStore()) == []


def test_iterate_singleton():
    store = KeyStore()
    store.add(b"only")
    assert list(store) == [b"only"]


def test_bulk_against_sorted_list_oracle():
    rng = random.Random(21)
    keys = {rng.randbytes(10) for _ in range(10_000)}
    store = KeyStore()
    for k in keys:
        store.add(k)
    assert len(store) == len(keys)
    assert sorted(store) == sorted(keys)
    for _ in range(10_000):
        probe = rng.randbytes(10)
        assert (probe in store) == (probe in keys)


@settings(max_examples=200, deadline=None)
@given(ops=st.lists(st.tuples(st.sampled_from(["add", "remove"]),
                              st.binary(min_size=1, max_size=4)),
                    max_size=200))
def test_model_based_against_reference_set(ops):
    store = KeyStore()
    model: set[bytes] = set()
    for op, key in ops:
        if op == "add":
            assert store.add(key) == (key not in model)
            model.add(key)
        else:
            assert store.remove(key) == (key in model)
            model.discard(key)
        assert len(store) == len(model)
    assert set(store) == model
    for key in store:
        assert key in store
