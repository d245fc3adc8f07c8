"""GHZ target states and the angle-dependent dephasing extraction channel.

Two independent routes produce the ideal target state:

* ``explicit_ghz_state`` sums a hard-coded Pauli expansion (available for the
  three- and four-party Svetlichny scenarios).
* ``spectral_ghz_state`` reads the maximal eigenvector off the built Bell
  operator at the optimal angles, using the fact that an antidiagonal
  operator has eigenvectors supported on index pairs (b, b~).

``ghz_state`` runs both routes where both exist and insists they agree.

The extraction channel applies, at each site, the Kraus pair built from the
attenuation parameter g(alpha) = (1 + sqrt(2))(sin(alpha) + cos(alpha) - 1),
flipping the dephasing axis from X to Y at alpha = pi/4.  The channel is
unital, self-adjoint, trace preserving, and maps persymmetric matrices to
persymmetric matrices.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .bell import (SVETLICHNY, BellProtocol, antidiagonal_profile,
                   build_operator)
from .linalg import is_persymmetric, kron_all, pauli

_ANGLE_SLACK = 1e-12
_DEGENERACY_GAP = 1e-6
_ROUTE_AGREEMENT = 1e-12
_MAX_PARTIES = 6
SQRT2 = math.sqrt(2.0)

# Pauli expansions of the target states, as (coefficient, labels) pairs.
_EXPLICIT_TABLES = {
    (SVETLICHNY, 3): [(1 / 8, t) for t in ("III", "ZZI", "IZZ", "ZIZ")]
    + [(-1 / 8, "XXX")]
    + [(1 / 8, t) for t in ("XYY", "YXY", "YYX")],
    (SVETLICHNY, 4): [(1 / 16, t) for t in ("IIII", "ZZII", "ZIZI", "ZIIZ",
                                            "IZZI", "IZIZ", "IIZZ", "ZZZZ")]
    + [({0: -1, 1: 1, 2: 1, 3: -1, 4: -1}[w] / (16 * SQRT2),
        "".join("Y" if (bits >> (3 - j)) & 1 else "X" for j in range(4)))
       for bits in range(16)
       for w in [bin(bits).count("1")]],
}


@dataclass(frozen=True)
class IdealState:
    """A target state together with its Bell-value-to-norm ratio eta."""

    protocol: BellProtocol
    rho: np.ndarray
    eta: float


def g_param(alpha: float) -> float:
    """Attenuation parameter g(alpha), clamped into [0, 1]."""
    if not (-_ANGLE_SLACK <= alpha <= math.pi / 2 + _ANGLE_SLACK):
        raise ValueError(f"angle {alpha} outside [0, pi/2]")
    value = (1 + SQRT2) * (math.sin(alpha) + math.cos(alpha) - 1.0)
    return min(max(value, 0.0), 1.0)


def kraus_pair(alpha: float) -> Tuple[np.ndarray, np.ndarray]:
    """Single-site Kraus pair (K0, K1) of the dephasing channel at alpha."""
    g = g_param(alpha)
    k0 = math.sqrt((1.0 + g) / 2.0) * pauli("I")
    gamma = pauli("X") if alpha <= math.pi / 4 + _ANGLE_SLACK else pauli("Y")
    k1 = math.sqrt(max((1.0 - g) / 2.0, 0.0)) * gamma
    return k0, k1


@dataclass(frozen=True)
class DephasingChannel:
    """Product dephasing channel with one angle per site."""

    angles: Tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.angles:
            raise ValueError("channel needs at least one site")
        for alpha in self.angles:
            if not (-_ANGLE_SLACK <= alpha <= math.pi / 2 + _ANGLE_SLACK):
                raise ValueError(f"angle {alpha} outside [0, pi/2]")
        object.__setattr__(self, "angles", tuple(float(a) for a in self.angles))

    @property
    def n(self) -> int:
        return len(self.angles)

    def kraus_pairs(self) -> List[Tuple[np.ndarray, np.ndarray]]:
        return [kraus_pair(a) for a in self.angles]


def apply_channel(mat: np.ndarray, channel: DephasingChannel) -> np.ndarray:
    """Apply the product channel to any matrix of matching dimension."""
    mat = np.asarray(mat, dtype=complex)
    dim = 2 ** channel.n
    if mat.shape != (dim, dim):
        raise ValueError(f"expected a {dim} x {dim} matrix, got {mat.shape}")
    pairs = channel.kraus_pairs()
    out = np.zeros_like(mat)
    for bits in itertools.product((0, 1), repeat=channel.n):
        k = kron_all([pairs[j][b] for j, b in enumerate(bits)])
        out += k @ mat @ k.conj().T
    return out


def persymmetry_preserved(rho: np.ndarray, channel: DephasingChannel,
                          tol: float = 1e-10) -> bool:
    """Check that both the input and its channel image are persymmetric."""
    return (is_persymmetric(rho, tol=tol)
            and is_persymmetric(apply_channel(rho, channel), tol=tol))


def explicit_ghz_state(protocol: BellProtocol) -> IdealState:
    """Target state from its hard-coded Pauli expansion."""
    key = (protocol.family, protocol.n)
    if key not in _EXPLICIT_TABLES:
        raise ValueError(f"no explicit expansion for {protocol.family} n={protocol.n}")
    dim = protocol.dim
    rho = np.zeros((dim, dim), dtype=complex)
    for coefficient, labels in _EXPLICIT_TABLES[key]:
        rho += coefficient * kron_all([pauli(c) for c in labels])
    return IdealState(protocol=protocol, rho=rho, eta=_eta(protocol, rho))


def spectral_ghz_state(protocol: BellProtocol) -> IdealState:
    """Target state from the corner-pair eigenstructure of the operator.

    At the optimal angles the built operator is antidiagonal, so each
    eigenvector lives on one index pair (b, 2^n - 1 - b).  The maximal pair
    must be unique; a near-degenerate second pair raises ArithmeticError.
    """
    if protocol.n > _MAX_PARTIES:
        raise ValueError(f"spectral construction supports n <= {_MAX_PARTIES}")
    dim = protocol.dim
    quarter = (math.pi / 4,) * protocol.n
    w = build_operator(protocol, quarter)
    corners = np.array([w[b, dim - 1 - b] for b in range(dim // 2)])
    magnitudes = np.abs(corners)
    order = np.argsort(magnitudes)
    b_star = int(order[-1])
    if dim // 2 > 1 and magnitudes[order[-1]] - magnitudes[order[-2]] <= _DEGENERACY_GAP:
        raise ArithmeticError("maximal antidiagonal pair is degenerate")
    corner = corners[b_star]
    phase = np.conj(corner) / abs(corner)
    v = np.zeros(dim, dtype=complex)
    v[b_star] = 1.0 / SQRT2
    v[dim - 1 - b_star] = phase / SQRT2
    rho = np.outer(v, v.conj())
    return IdealState(protocol=protocol, rho=rho, eta=_eta(protocol, rho))


def ghz_state(protocol: BellProtocol) -> IdealState:
    """Target state; cross-validates both routes where both are available."""
    key = (protocol.family, protocol.n)
    if key in _EXPLICIT_TABLES:
        explicit = explicit_ghz_state(protocol)
        spectral = spectral_ghz_state(protocol)
        if np.max(np.abs(explicit.rho - spectral.rho)) > _ROUTE_AGREEMENT:
            raise ArithmeticError("explicit and spectral target states disagree")
        return explicit
    return spectral_ghz_state(protocol)


def _eta(protocol: BellProtocol, rho: np.ndarray) -> float:
    """Ratio of the state's Bell value to the operator norm at pi/4."""
    quarter = (math.pi / 4,) * protocol.n
    w = build_operator(protocol, quarter)
    norm = float(np.max(np.abs(antidiagonal_profile(protocol, quarter))))
    return float(np.trace(rho @ w).real) / norm
