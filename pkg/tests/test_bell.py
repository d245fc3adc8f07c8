"""Bell operator construction, coefficient tables, and classical/quantum bounds."""
from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from ghzcert.bell import (MABK, SVETLICHNY, BellProtocol, build_mabk,
                          build_operator, build_svetlichny, coefficient_table,
                          evaluate, local_bound, observable, quantum_bound)
from oracles import (kron_chain, pauli_coefficient, pauli_string,
                     reference_svetlichny_3, reference_svetlichny_4)

SQ2 = math.sqrt(2.0)


def random_angles(rng: np.random.Generator, n: int, hi: float = math.pi / 2):
    return tuple(rng.uniform(0.0, hi, size=n))


def spectral_norm(m: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvalsh(m))))


def reference_mabk_3(angles) -> np.ndarray:
    c = [math.cos(a) for a in angles]
    s = [math.sin(a) for a in angles]
    total = np.zeros((8, 8), dtype=complex)
    for ys in itertools.product((0, 1), repeat=3):
        sign = (-1.0, 1.0, 1.0, -1.0)[sum(ys)]
        weight = 1.0
        for j, y in enumerate(ys):
            weight *= s[j] if y else c[j]
        label = "".join("Y" if y else "X" for y in ys)
        total += 2.0 * sign * weight * pauli_string(label)
    return total


def test_observable_examples():
    assert np.allclose(observable(0, 0.0), pauli_string("X"), atol=1e-15)
    assert np.allclose(observable(1, math.pi / 2), -pauli_string("Y"), atol=1e-12)
    assert np.allclose(observable(0, math.pi / 4),
                       (pauli_string("X") + pauli_string("Y")) / SQ2, atol=1e-15)


def test_observable_structure():
    rng = np.random.default_rng(21)
    for _ in range(50):
        r = int(rng.integers(2))
        alpha = rng.uniform(0.0, math.pi / 2)
        a = observable(r, alpha)
        assert np.allclose(a, a.conj().T, atol=1e-15)
        assert np.allclose(a @ a, np.eye(2), atol=1e-14)
        assert a[0, 0] == 0 and a[1, 1] == 0
        assert abs(a[0, 1] - np.exp(-1j * (-1) ** r * alpha)) <= 1e-14


def test_observable_rejects_bad_inputs():
    with pytest.raises(ValueError):
        observable(0, -0.1)
    with pytest.raises(ValueError):
        observable(0, math.pi / 2 + 0.1)
    with pytest.raises(ValueError):
        observable(2, 0.3)


def test_coefficient_table_small_cases():
    rows = coefficient_table(2)
    assert [(row.bits, row.nu) for row in rows] == [("0", 1), ("1", -1)]
    rows = coefficient_table(3)
    assert [row.mu for row in rows] == [1, 2, 3, 4]
    assert [row.bits for row in rows] == ["00", "01", "10", "11"]
    assert [row.nu for row in rows] == [1, -1, -1, -1]


def test_coefficient_table_structure():
    for n in (2, 3, 4, 5):
        rows = coefficient_table(n)
        assert len(rows) == 2 ** (n - 1)
        assert rows[0].bits == "0" * (n - 1) and rows[0].nu == 1
        for row in rows:
            m = row.bits.count("1")
            assert row.nu == (-1) ** (m * (m + 1) // 2)
    assert coefficient_table(4)[7].bits == "111"
    assert coefficient_table(4)[7].nu == 1


def test_protocol_catalog_bounds():
    expected = {
        (SVETLICHNY, 3): (4.0, 4 * SQ2),
        (SVETLICHNY, 4): (8.0, 8 * SQ2),
        (SVETLICHNY, 5): (16.0, 16 * SQ2),
        (MABK, 3): (2.0, 4.0),
        (MABK, 4): (2 * SQ2, 8.0),
        (MABK, 5): (4.0, 16.0),
    }
    for (family, n), (beta_l, beta_q) in expected.items():
        protocol = BellProtocol(family, n)
        assert abs(protocol.beta_L - beta_l) <= 1e-12
        assert abs(protocol.beta_Q - beta_q) <= 1e-12
        assert protocol.beta_Q > protocol.beta_L


def test_protocol_rejects_bad_inputs():
    with pytest.raises(ValueError):
        BellProtocol("chsh", 3)
    with pytest.raises(ValueError):
        BellProtocol(SVETLICHNY, 2)


def test_build_svetlichny_matches_reference_expansion():
    rng = np.random.default_rng(22)
    for _ in range(5):
        angles3 = random_angles(rng, 3)
        assert np.max(np.abs(build_svetlichny(3, angles3)
                             - reference_svetlichny_3(*angles3))) <= 1e-10
        angles4 = random_angles(rng, 4)
        assert np.max(np.abs(build_svetlichny(4, angles4)
                             - reference_svetlichny_4(list(angles4)))) <= 1e-10


def test_build_mabk_matches_reference_expansion():
    rng = np.random.default_rng(23)
    for _ in range(5):
        angles = random_angles(rng, 3)
        assert np.max(np.abs(build_mabk(3, angles)
                             - reference_mabk_3(angles))) <= 1e-10


def test_svetlichny_known_coefficients():
    quarter = (math.pi / 4,) * 3
    w = build_svetlichny(3, quarter)
    assert abs(pauli_coefficient(w, "XYY") - SQ2) <= 1e-12
    assert spectral_norm(w) <= 4 * SQ2 + 1e-12
    assert abs(spectral_norm(w) - 4 * SQ2) <= 1e-10
    w0 = build_svetlichny(3, (0.0,) * 3)
    assert np.max(np.abs(w0 + 4 * pauli_string("XXX"))) <= 1e-12
    w0 = build_svetlichny(4, (0.0,) * 4)
    assert abs(pauli_coefficient(w0, "XXXX") + 4.0) <= 1e-12
    assert np.max(np.abs(w0 + 4 * pauli_string("XXXX"))) <= 1e-12


def test_mabk_known_values():
    w0 = build_mabk(3, (0.0,) * 3)
    assert np.max(np.abs(w0 + 2 * pauli_string("XXX"))) <= 1e-12
    assert abs(spectral_norm(build_mabk(3, (math.pi / 4,) * 3)) - 4) <= 1e-10
    assert abs(spectral_norm(build_mabk(5, (math.pi / 4,) * 5)) - 16) <= 1e-10


def test_four_party_svetlichny_is_scaled_mabk():
    rng = np.random.default_rng(24)
    for _ in range(5):
        angles = random_angles(rng, 4)
        assert np.max(np.abs(build_svetlichny(4, angles)
                             - SQ2 * build_mabk(4, angles))) <= 1e-10


def test_build_operator_dispatch():
    angles = (0.3, 0.5, 0.7)
    assert np.array_equal(build_operator(BellProtocol(SVETLICHNY, 3), angles),
                          build_svetlichny(3, angles))
    assert np.array_equal(build_operator(BellProtocol(MABK, 3), angles),
                          build_mabk(3, angles))


def test_builders_reject_bad_inputs():
    with pytest.raises(ValueError):
        build_svetlichny(2, (0.1, 0.2))
    with pytest.raises(ValueError):
        build_mabk(3, (0.1, 0.2))
    with pytest.raises(ValueError):
        build_svetlichny(3, (0.1, 0.2, 2.0))


def test_operators_antidiagonal_hermitian_persymmetric():
    rng = np.random.default_rng(25)
    for family in (SVETLICHNY, MABK):
        for n in (3, 4, 5):
            w = build_operator(BellProtocol(family, n), random_angles(rng, n))
            dim = 2 ** n
            mask = np.ones((dim, dim), dtype=bool)
            mask[np.arange(dim), dim - 1 - np.arange(dim)] = False
            assert np.max(np.abs(w[mask])) <= 1e-12
            assert np.max(np.abs(w - w.conj().T)) <= 1e-12
            assert np.max(np.abs(w - w[::-1, ::-1].T)) <= 1e-12


def test_norm_capped_on_coarse_grid():
    points = np.linspace(0.0, math.pi / 2, 5)
    for family in (SVETLICHNY, MABK):
        for n in (3, 4):
            protocol = BellProtocol(family, n)
            dim = 2 ** n
            idx = np.arange(dim)
            for angles in itertools.product(points, repeat=n):
                w = build_operator(protocol, angles)
                norm = float(np.max(np.abs(w[idx, dim - 1 - idx])))
                assert norm <= protocol.beta_Q + 1e-8


def test_norm_via_antidiagonal_entries():
    rng = np.random.default_rng(26)
    for family in (SVETLICHNY, MABK):
        protocol = BellProtocol(family, 4)
        for _ in range(10):
            w = build_operator(protocol, random_angles(rng, 4))
            idx = np.arange(16)
            assert abs(spectral_norm(w) - np.max(np.abs(w[idx, 15 - idx]))) <= 1e-10


def test_norm_reflection_symmetry_even_parties():
    rng = np.random.default_rng(27)
    for family in (SVETLICHNY, MABK):
        protocol = BellProtocol(family, 4)
        for _ in range(50):
            angles = np.array(random_angles(rng, 4))
            direct = spectral_norm(build_operator(protocol, tuple(angles)))
            mirror = spectral_norm(
                build_operator(protocol, tuple(math.pi / 2 - angles)))
            assert abs(direct - mirror) <= 1e-9


def enumerate_local_max(n: int, coefficient) -> float:
    best = -math.inf
    values = []
    for outcomes in itertools.product((-1, 1), repeat=2 * n):
        value = 0.0
        for x in itertools.product((0, 1), repeat=n):
            product = 1
            for j, bit in enumerate(x):
                product *= outcomes[2 * j + bit]
            value += coefficient(sum(x)) * product
        values.append(value)
        best = max(best, value)
    assert abs(best + min(values)) <= 1e-12
    return best


def test_local_bound_enumeration_values():
    expected = {
        (SVETLICHNY, 3): 4.0,
        (SVETLICHNY, 4): 4.0,
        (SVETLICHNY, 5): 8.0,
        (MABK, 3): 2.0,
        (MABK, 4): 2 * SQ2,
        (MABK, 5): 4.0,
    }
    for (family, n), value in expected.items():
        assert abs(local_bound(BellProtocol(family, n)) - value) <= 1e-9


def test_local_bound_independent_enumeration_three_parties():
    sv = enumerate_local_max(3, lambda w: (-1.0) ** (w * (w + 1) // 2))
    assert abs(local_bound(BellProtocol(SVETLICHNY, 3)) - sv) <= 1e-12
    mabk = enumerate_local_max(3, lambda w: (1.0, 0.0, -1.0, 0.0)[w % 4])
    assert abs(local_bound(BellProtocol(MABK, 3)) - mabk) <= 1e-12


def test_quantum_bound_matches_catalog():
    for family in (SVETLICHNY, MABK):
        for n in (3, 4, 5):
            protocol = BellProtocol(family, n)
            assert abs(quantum_bound(protocol) - protocol.beta_Q) <= 1e-8


def top_eigen_projector(m: np.ndarray) -> np.ndarray:
    _, vectors = np.linalg.eigh(m)
    v = vectors[:, -1]
    return np.outer(v, v.conj())


def test_evaluate_examples():
    quarter3 = (math.pi / 4,) * 3
    rho = top_eigen_projector(build_svetlichny(3, quarter3))
    protocol = BellProtocol(SVETLICHNY, 3)
    assert abs(evaluate(protocol, rho, quarter3) - 4 * SQ2) <= 1e-9
    assert abs(evaluate(protocol, np.eye(8) / 8, (0.2, 0.9, 0.4))) <= 1e-12
    quarter4 = (math.pi / 4,) * 4
    rho4 = top_eigen_projector(build_mabk(4, quarter4))
    mixed = 0.5 * rho4 + 0.5 * np.eye(16) / 16
    assert abs(evaluate(BellProtocol(MABK, 4), mixed, quarter4) - 4.0) <= 1e-9


def test_evaluate_rejects_invalid_states():
    protocol = BellProtocol(SVETLICHNY, 3)
    angles = (0.1, 0.2, 0.3)
    with pytest.raises(ValueError):
        evaluate(protocol, np.eye(8) / 4, angles)
    bad = np.diag([1.5, -0.5, 0, 0, 0, 0, 0, 0]).astype(complex)
    with pytest.raises(ValueError):
        evaluate(protocol, bad, angles)
    skew = np.eye(8, dtype=complex) / 8
    skew[0, 1] = 0.3
    with pytest.raises(ValueError):
        evaluate(protocol, skew, angles)
