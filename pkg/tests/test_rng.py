import numpy as np
import pytest
from hypothesis import given, strategies as st

from specent.rng import generator, indexed_uniforms, seed_sequence, stream_key


def test_generator_deterministic():
    a = generator(42).random(8)
    b = generator(42).random(8)
    assert np.array_equal(a, b)


def test_spawn_keys_give_distinct_streams():
    a = generator(42, 0).random(8)
    b = generator(42, 1).random(8)
    assert not np.array_equal(a, b)


def test_stream_key_is_pure():
    assert stream_key(7) == stream_key(7)
    assert stream_key(7) != stream_key(8)
    assert stream_key(7, 1) != stream_key(7, 2)
    assert 0 <= stream_key(7) < 1 << 128


def full_stream(key, n):
    bitgen = np.random.Philox(key=key)
    return np.random.Generator(bitgen).random(n)


@pytest.mark.parametrize("start,count", [(0, 16), (1, 5), (2, 9), (3, 4), (4, 8), (7, 3), (1021, 40)])
def test_indexed_uniforms_match_stream_positions(start, count):
    # Positioned draws must be bitwise equal to the same positions of one
    # continuous stream, whatever the offset within a Philox block.
    key = stream_key(123456789)
    whole = full_stream(key, start + count)
    part = indexed_uniforms(key, start, count)
    assert np.array_equal(part, whole[start:])


@given(start=st.integers(min_value=0, max_value=5000), count=st.integers(min_value=1, max_value=64))
def test_indexed_uniforms_alignment_property(start, count):
    key = stream_key(77, 3)
    whole = full_stream(key, start + count)
    assert np.array_equal(indexed_uniforms(key, start, count), whole[start:])


def test_indexed_uniforms_disjoint_windows_compose():
    key = stream_key(5)
    joined = np.concatenate([indexed_uniforms(key, 0, 10), indexed_uniforms(key, 10, 10)])
    assert np.array_equal(joined, full_stream(key, 20))


def test_seed_sequence_spawn_key_round_trip():
    ss = seed_sequence(9, 4)
    assert ss.entropy == 9
    assert tuple(ss.spawn_key) == (4,)
