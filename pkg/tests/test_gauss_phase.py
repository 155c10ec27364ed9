import cmath
import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from talbot_gauss import DomainError
from talbot_gauss.gauss_phase import (
    ExactPhase,
    chu_sequence,
    dft,
    gauss_sum_direct,
    idft,
    is_chu_equivalent,
    periodic_autocorrelation,
    sequence_from_json,
    sequence_to_csv,
    sequence_to_json,
    spectral_weights,
    talbot_phases,
    xi0,
    xi0_bruteforce,
)
from talbot_gauss.numtheory import gcd
from talbot_gauss.talbot_s import TalbotOrder, compute_s


def cis(theta):
    return cmath.exp(1j * theta)


def orders(q_max, sigmas=(1, -1)):
    for q in range(1, q_max + 1):
        for p in range(1, 2 * q + 1):
            if gcd(p, q) == 1:
                for sigma in sigmas:
                    yield TalbotOrder(p, q, sigma)


# --- ExactPhase ---------------------------------------------------------------

def test_exact_phase_canonical():
    assert ExactPhase(3, 6) == ExactPhase(1, 2)
    assert ExactPhase(-1, 4) == ExactPhase(7, 4)
    assert ExactPhase(5, 2) == ExactPhase(1, 2)
    assert ExactPhase(0, 5) == ExactPhase(0, 1)


@given(st.integers(-1000, 1000), st.integers(1, 200))
def test_exact_phase_two_pi_identity(num, den):
    ph = ExactPhase(num, den)
    assert ExactPhase(num + 2 * den, den) == ph
    assert 0 <= ph.num < 2 * ph.den
    assert abs(ph.to_complex() - cis(math.pi * num / den)) < 1e-12


def test_exact_phase_arithmetic():
    a, b = ExactPhase(1, 4), ExactPhase(3, 2)
    assert a + b == ExactPhase(7, 4)
    assert a - b == ExactPhase(-5, 4)
    assert -a == ExactPhase(7, 4)
    assert 3 * a == ExactPhase(3, 4)


def test_exact_phase_bad_den():
    with pytest.raises(DomainError):
        ExactPhase(1, 0)


# --- xi0 ----------------------------------------------------------------------

@pytest.mark.parametrize(
    "p,q,expected",
    [(1, 1, ExactPhase(0)), (4, 1, ExactPhase(0)), (1, 2, ExactPhase(-1, 4)), (1, 3, ExactPhase(1, 2))],
)
def test_xi0_examples(p, q, expected):
    order = TalbotOrder(p, q)
    assert xi0(order) == expected
    assert xi0(order, "p") == expected


@pytest.mark.parametrize(
    "s,q,expected",
    [(1, 1, 1), (1, 2, cis(-math.pi / 4)), (4, 3, 1j)],
)
def test_xi0_bruteforce_examples(s, q, expected):
    assert abs(xi0_bruteforce(s, q) - expected) < 1e-12


def test_xi0_bruteforce_oracle_values():
    # (1 + e^{-j pi/2}) / sqrt 2 and (1 + 2 e^{j 2 pi/3}) / sqrt 3 written out
    assert abs((1 + cis(-math.pi / 2)) / math.sqrt(2) - cis(-math.pi / 4)) < 1e-15
    assert abs((1 + 2 * cis(2 * math.pi / 3)) / math.sqrt(3) - 1j) < 1e-15


def test_xi0_forms_agree_with_bruteforce():
    for order in orders(64, sigmas=(1,)):
        s = compute_s(order).s
        a, b = xi0(order, "s"), xi0(order, "p")
        assert a == b
        assert abs(a.to_complex() - xi0_bruteforce(s, order.q)) < 1e-12
        assert (8 * a.fraction).denominator == 1


def test_xi0_bad_form():
    with pytest.raises(ValueError):
        xi0(TalbotOrder(1, 2), "r")


# --- talbot_phases / spectral_weights -----------------------------------------

def test_talbot_phases_examples():
    x = talbot_phases(TalbotOrder(1, 2))
    np.testing.assert_allclose(np.asarray(x), [cis(-math.pi / 4), cis(math.pi / 4)], atol=1e-15)
    assert list(np.asarray(talbot_phases(TalbotOrder(1, 1)))) == [1]
    x = talbot_phases(TalbotOrder(1, 3))
    w = cis(4 * math.pi / 3)
    np.testing.assert_allclose(np.asarray(x), [1j, 1j * w, 1j * w], atol=1e-15)


def test_gauss_sum_direct_examples():
    assert abs(gauss_sum_direct(TalbotOrder(1, 1), 0) - 1) < 1e-15
    assert abs(gauss_sum_direct(TalbotOrder(1, 2), 0) - cis(-math.pi / 4)) < 1e-12
    assert abs(gauss_sum_direct(TalbotOrder(1, 3), 1) - 1j * cis(4 * math.pi / 3)) < 1e-12


def test_spectral_weights_examples():
    X = spectral_weights(TalbotOrder(1, 2))
    np.testing.assert_allclose(np.asarray(X), math.sqrt(2) * np.array([1, -1j]), atol=1e-15)
    assert X.gain == math.sqrt(2)
    assert list(np.asarray(spectral_weights(TalbotOrder(1, 1)))) == [1]
    X = spectral_weights(TalbotOrder(1, 3))
    w = cis(-4 * math.pi / 3)
    np.testing.assert_allclose(np.asarray(X), math.sqrt(3) * np.array([1, w, w]), atol=1e-14)


def test_dft_pair_and_direct_sums():
    for order in orders(64):
        x = talbot_phases(order)
        X = spectral_weights(order)
        assert np.max(np.abs(dft(x) - np.asarray(X))) < 1e-10
        direct = np.array([gauss_sum_direct(order, n) for n in range(order.q)])
        assert np.max(np.abs(np.asarray(x) - direct)) < 1e-10


def test_conjugation_exact():
    for order in orders(40, sigmas=(1,)):
        plus = talbot_phases(order)
        minus = talbot_phases(order.conjugate())
        assert minus.exact == tuple(-ph for ph in plus.exact)
        assert np.array_equal(np.asarray(minus), np.asarray(plus).conj())
        assert plus.conj().exact == minus.exact


def test_symmetry_and_periodicity_exact():
    for order in orders(40):
        x = talbot_phases(order)
        q = order.q
        for n in range(-q, 2 * q):
            assert x.phase(n) == x.phase(n + q) == x.phase(-n) == x.phase(q - n)
        assert x[q + 1] == x[1]


def test_unit_magnitude():
    for order in orders(30):
        assert np.max(np.abs(np.abs(talbot_phases(order).values) - 1)) < 1e-12


# --- DFT ----------------------------------------------------------------------

def test_dft_examples():
    assert list(dft([1])) == [1]
    np.testing.assert_allclose(dft(np.ones(7)), [7, 0, 0, 0, 0, 0, 0], atol=1e-12)
    np.testing.assert_allclose(idft([5, 0, 0, 0, 0]), np.ones(5), atol=1e-12)


def test_dft_matches_numpy_fft():
    rng = np.random.default_rng(0)
    for q in (1, 2, 3, 8, 17, 64):
        x = rng.normal(size=q) + 1j * rng.normal(size=q)
        np.testing.assert_allclose(dft(x), np.fft.fft(x), atol=1e-10)


def test_idft_inverts_dft():
    rng = np.random.default_rng(1)
    x = np.exp(2j * np.pi * rng.random(16))
    assert np.max(np.abs(idft(dft(x)) - x)) < 1e-12


def test_idft_of_spectral_weights():
    order = TalbotOrder(1, 3)
    assert np.max(np.abs(idft(spectral_weights(order)) - np.asarray(talbot_phases(order)))) < 1e-12


def test_dft_empty():
    with pytest.raises(DomainError):
        dft([])
    with pytest.raises(DomainError):
        idft([])


# --- autocorrelation / flat spectrum -------------------------------------------

def test_autocorrelation_examples():
    rng = np.random.default_rng(2)
    x = np.exp(2j * np.pi * rng.random(9))
    assert abs(periodic_autocorrelation(x)[0] - 9) < 1e-12
    R = periodic_autocorrelation(talbot_phases(TalbotOrder(1, 3)))
    np.testing.assert_allclose(R, [3, 0, 0], atol=1e-12)
    R = periodic_autocorrelation(talbot_phases(TalbotOrder(3, 8)))
    np.testing.assert_allclose(R, [8] + [0] * 7, atol=1e-12)


def test_autocorrelation_matches_definition():
    rng = np.random.default_rng(3)
    x = rng.normal(size=6) + 1j * rng.normal(size=6)
    R = periodic_autocorrelation(x)
    for n in range(6):
        assert abs(R[n] - sum(x[k].conjugate() * x[(k + n) % 6] for k in range(6))) < 1e-12


def test_perfect_autocorrelation_both_sequences():
    for order in orders(64):
        q = order.q
        delta = np.zeros(q)
        delta[0] = q
        x = np.asarray(talbot_phases(order))
        X = np.asarray(spectral_weights(order)) / math.sqrt(q)
        assert np.max(np.abs(periodic_autocorrelation(x) - delta)) < 1e-10
        assert np.max(np.abs(periodic_autocorrelation(X) - delta)) < 1e-10
        assert np.max(np.abs(np.abs(dft(x)) - math.sqrt(q))) < 1e-10


# --- Chu ----------------------------------------------------------------------

def test_chu_examples():
    np.testing.assert_allclose(chu_sequence(1, 2), [1, 1j], atol=1e-15)
    np.testing.assert_allclose(chu_sequence(1, 3), [1, cis(2 * math.pi / 3), 1], atol=1e-15)
    with pytest.raises(DomainError):
        chu_sequence(2, 4)


@pytest.mark.parametrize("M", [1, 2, 5, 8, 13, 16])
def test_chu_perfect_autocorrelation(M):
    for N in range(1, 2 * M + 1):
        if gcd(N, M) == 1:
            for sign in (1, -1):
                R = periodic_autocorrelation(chu_sequence(N, M, sign))
                expected = np.zeros(M)
                expected[0] = M
                assert np.max(np.abs(R - expected)) < 1e-10


def test_is_chu_equivalent_examples():
    assert is_chu_equivalent(talbot_phases(TalbotOrder(1, 4)))
    assert is_chu_equivalent(talbot_phases(TalbotOrder(2, 3)))
    assert not is_chu_equivalent([1, 1, 1])
    rng = np.random.default_rng(4)
    assert not is_chu_equivalent(np.exp(2j * np.pi * rng.random(8)))


def test_odd_q_shift_gives_chu_form():
    # index shift k -> k + (q+1)/2 maps x_k onto exp(j pi N k(k+1)/q) times a constant
    for q in range(3, 31, 2):
        for p in range(1, q):
            if gcd(p, q) != 1:
                continue
            order = TalbotOrder(p, q)
            s = compute_s(order).s
            x = np.asarray(talbot_phases(order))
            shifted = np.roll(x, -(q + 1) // 2)
            chu = chu_sequence(s, q)
            ratio = shifted / chu
            assert np.max(np.abs(ratio - ratio[0])) < 1e-10


def test_both_families_chu_equivalent():
    for order in orders(32, sigmas=(1, -1)):
        if order.p > order.q and order.q > 1:
            continue
        assert is_chu_equivalent(talbot_phases(order))
        assert is_chu_equivalent(spectral_weights(order))


# --- serialization ------------------------------------------------------------

def test_sequence_json_round_trip():
    x = talbot_phases(TalbotOrder(3, 8, -1))
    doc = json.loads(sequence_to_json(x))
    assert (doc["p"], doc["q"], doc["sigma"], doc["s"]) == (3, 8, -1, 11)
    assert len(doc["phases"]) == len(doc["complex"]) == 8
    back = sequence_from_json(sequence_to_json(x))
    assert back.exact == x.exact
    assert np.array_equal(np.asarray(back), np.asarray(x))


def test_sequence_json_xi0():
    doc = json.loads(sequence_to_json(talbot_phases(TalbotOrder(1, 2))))
    assert doc["xi0"] == {"num": 7, "den": 4}
    assert doc["phases"][0] == doc["xi0"]


def test_sequence_csv():
    lines = sequence_to_csv(talbot_phases(TalbotOrder(1, 3))).splitlines()
    assert lines[0] == "n,num,den,re,im"
    assert lines[1].startswith("0,1,2,")
    assert len(lines) == 4
