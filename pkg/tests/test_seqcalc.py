from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endbundles.errors import NotPeriodic, NotTrivial
from endbundles.seqcalc import (HALF_HALF_DUAL, PERIODIC_DUAL, CoinvClass, EPSeq,
                                Functional, brute_force_is_trivial, cesaro,
                                cesaro_partial, certificate_trivial, coinv_class,
                                coinv_equal, delta, eval_seq, iota_rep, is_trivial,
                                pair, parse_seq, shift)

from helpers import random_ep, unrolled

ints = st.integers(-3, 3)
cycles = st.lists(ints, min_size=1, max_size=4).map(tuple)
seqs = st.builds(EPSeq, cycles, st.lists(ints, max_size=4).map(tuple),
                 st.integers(-5, 5), cycles)


def tail_mean_oracle(seq, side, n=600):
    """Average over a long stretch far out in one tail."""
    lo = seq.end + 10 if side > 0 else seq.core_offset - 10 - n
    # n is a multiple of every cycle length up to 4 times 5 times 3
    return Fraction(sum(seq.window(lo, lo + n)), n)


@pytest.mark.parametrize("seq,i,expected", [
    (EPSeq.delta(0), -5, 0),
    (EPSeq.delta(0), 0, 1),
    (EPSeq((0,), (), 0, (1, 0, 0)), 7, 0),
    (EPSeq((0,), (), 0, (1, 0, 0)), 6, 1),
])
def test_eval_examples(seq, i, expected):
    assert eval_seq(seq, i) == expected


@given(seqs)
def test_eval_matches_unrolling(seq):
    assert seq.window(-30, 30) == unrolled(seq, -30, 30)


@given(seqs)
def test_canonical_is_idempotent_and_observational(seq):
    c = seq.canonical
    assert c.canonical == c
    assert c.window(-40, 40) == seq.window(-40, 40)
    assert c == seq and hash(c) == hash(seq)


@given(seqs, seqs)
def test_equality_is_observational(a, b):
    same = a.window(-60, 60) == b.window(-60, 60)
    assert (a == b) == same


def test_shift_examples():
    assert shift(EPSeq.delta(0)) == EPSeq.delta(-1)
    assert shift(EPSeq.constant(1)) == EPSeq.constant(1)


@given(seqs, st.integers(-7, 7))
def test_shift_pointwise_and_class(seq, k):
    s = shift(seq, k)
    assert all(s(i) == seq(i + k) for i in range(-20, 20))
    assert coinv_class(s) == coinv_class(seq)


@pytest.mark.parametrize("m", [-3, 0, 4])
def test_delta_of_step_is_point_mass(m):
    assert delta(EPSeq.step(m)) == EPSeq.delta(m)


def test_delta_examples():
    assert delta(EPSeq.constant(5)).is_zero()
    d = delta(EPSeq.periodic((1, 0)))
    assert d == EPSeq.periodic((1, -1))


@given(seqs)
def test_delta_pointwise_and_trivial(seq):
    d = delta(seq)
    assert all(d(i) == seq(i) - seq(i + 1) for i in range(-20, 20))
    assert coinv_class(d).is_zero() and is_trivial(d)


@pytest.mark.parametrize("seq,cls", [
    (EPSeq.delta(5), (0, 0)),
    (EPSeq.periodic((1, 0, 0)), (Fraction(1, 3), Fraction(1, 3))),
    (EPSeq.half_half(), (1, -1)),
])
def test_class_examples(seq, cls):
    assert coinv_class(seq) == CoinvClass(*cls)


@given(seqs)
def test_class_matches_long_averages(seq):
    cls = coinv_class(seq)
    assert cls.mu_minus == tail_mean_oracle(seq, -1)
    assert cls.mu_plus == tail_mean_oracle(seq, +1)


@given(seqs, seqs)
def test_class_is_additive(a, b):
    assert coinv_class(a + b) == coinv_class(a) + coinv_class(b)
    assert coinv_class(a - b) == coinv_class(a) - coinv_class(b)


def test_triviality_examples():
    assert is_trivial(EPSeq.periodic((-1, 1)))
    assert not is_trivial(EPSeq.half_half())
    a = EPSeq((1, 2), (0,), -1, (2,))
    assert coinv_equal(a, a + EPSeq.delta(3))


@pytest.mark.parametrize("m", [-2, 0, 4])
def test_certificate_of_point_mass_is_step(m):
    assert certificate_trivial(EPSeq.delta(m)) == EPSeq.step(m)


def test_certificate_of_alternating():
    w = certificate_trivial(EPSeq.periodic((-1, 1)))
    assert w == EPSeq.periodic((0, 1))  # (..., 1, 0, 1, 0, ...)
    assert certificate_trivial(EPSeq.constant(0)) == EPSeq.constant(0)


def test_certificate_rejects_nontrivial():
    with pytest.raises(NotTrivial):
        certificate_trivial(EPSeq.half_half())


@settings(max_examples=200)
@given(seqs)
def test_certificate_witnesses_every_trivial_sequence(seq):
    a = seq if is_trivial(seq) else delta(seq)
    b = certificate_trivial(a)
    W = 10 * a.period
    assert all(b(i) - b(i + 1) == a(i) for i in range(-3 * W, 3 * W + 1))
    assert all(isinstance(v, int) for v in b.left + b.core + b.right)


@pytest.mark.parametrize("seq,expected", [
    (EPSeq.delta(0), True),
    (EPSeq.half_half(), False),
    (EPSeq.periodic((1, -1)), True),
])
def test_brute_force_examples(seq, expected):
    assert brute_force_is_trivial(seq, 12, 20) is expected


def test_brute_force_agrees_on_random_sample():
    rng = np.random.default_rng(3)
    for _ in range(3000):
        s = random_ep(rng, max_core=2, offset_range=0)
        assert brute_force_is_trivial(s, 12, 40) == is_trivial(s), s


@pytest.mark.parametrize("q,pattern", [
    (Fraction(1, 3), (1, 0, 0)),
    (Fraction(2), (2,)),
    (Fraction(2, 3), (1, 1, 0)),
    (Fraction(-1, 3), (0, 0, -1)),
])
def test_iota_rep(q, pattern):
    rep = iota_rep(q)
    assert rep == EPSeq.periodic(pattern)
    assert coinv_class(rep) == CoinvClass(q, q)


@given(st.fractions(min_value=-5, max_value=5, max_denominator=12), st.integers(-4, 4))
def test_iota_rep_class(q, anchor):
    assert coinv_class(iota_rep(q, anchor)) == CoinvClass(q, q)


def test_pair_examples():
    assert pair(PERIODIC_DUAL, CoinvClass(Fraction(1, 3), Fraction(1, 3))) == Fraction(1, 3)
    assert pair(HALF_HALF_DUAL, CoinvClass(1, -1)) == 1
    assert pair(Functional(Fraction(7, 5), -3), CoinvClass(0, 0)) == 0


fracs = st.fractions(min_value=-4, max_value=4, max_denominator=9)


@given(fracs, fracs, fracs, fracs, fracs, fracs)
def test_pair_bilinear(a, b, c, d, e, f):
    x, y = CoinvClass(a, b), CoinvClass(c, d)
    g, h = Functional(e, f), Functional(b, c)
    assert pair(g, x + y) == pair(g, x) + pair(g, y)
    assert pair(g + h, x) == pair(g, x) + pair(h, x)


def test_cesaro():
    assert cesaro(EPSeq.periodic((1, 0, 0))) == Fraction(1, 3)
    assert cesaro(EPSeq.constant(4)) == 4
    with pytest.raises(NotPeriodic):
        cesaro(EPSeq.half_half())


@given(st.lists(ints, min_size=1, max_size=5), st.integers(-5, 5))
def test_cesaro_is_limit_of_partial_averages(pattern, anchor):
    seq = EPSeq.periodic(tuple(pattern), anchor)
    n = 500
    assert abs(cesaro_partial(seq, n) - cesaro(seq)) <= Fraction(2 * max(map(abs, pattern)) * len(pattern), 2 * n + 1)
    assert coinv_class(seq) == CoinvClass(cesaro(seq), cesaro(seq))


@pytest.mark.parametrize("text,expected", [
    ("const:3", EPSeq.constant(3)),
    ("delta:2", EPSeq.delta(2)),
    ("step:-1", EPSeq.step(-1)),
    ("halfhalf", EPSeq.half_half()),
    ("alt", EPSeq.periodic((1, -1))),
    ("iota:1/3", EPSeq.periodic((1, 0, 0))),
    ('{"left":[1],"core":[5],"core_offset":2,"right":[0,1]}', EPSeq((1,), (5,), 2, (0, 1))),
])
def test_parse_seq(text, expected):
    assert parse_seq(text) == expected


@given(seqs)
def test_json_round_trip(seq):
    assert EPSeq.from_json(seq.to_json()) == seq
    assert Functional.parse("1/2,-1/2") == HALF_HALF_DUAL
