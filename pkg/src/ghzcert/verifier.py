"""Certificate verification: operator assembly, block reduction, grid scans.

The fidelity certificate asserts that the operator

    T(angles) = Lambda(rho_GHZ) - s W(angles) - mu I

is positive semidefinite for every angle tuple in the scan domain, where
Lambda is the dephasing extraction channel, W the Bell operator, and (s, mu)
the catalog constants of the scenario.  Because W is antidiagonal and the
channel output is diagonal plus antidiagonal, T splits into 2^(n-1) two-by-two
blocks over index pairs (b, 2^n - 1 - b).  The scan therefore only needs the
closed-form lower eigenvalue of each block, which this module evaluates on
product grids with local refinement around the minimizer.

Independent routes cross-check the reduction:

* ``block_decompose`` conjugates the assembled matrix by an explicit pairing
  permutation and fails loudly if any off-block weight remains.
* ``sv3_block_functions`` / ``sv4_block_functions`` are hand-expanded scalar
  formulas for the block entries of the three- and four-party Svetlichny
  certificates, with ``sv4_determinant`` and ``projector_lambda`` covering
  the determinant and parity-sector routes.
* ``closed_form_crosscheck`` samples random angle tuples and confirms all of
  the above against the matrix route.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .bell import (MABK, SVETLICHNY, BellProtocol, build_operator,
                   corner_coefficient, ghz_phase, pair_signs)
from .linalg import outer_all
from .root2 import Root2
from .states import DephasingChannel, apply_channel, g_param, ghz_state

PSD_TOLERANCE = 1e-8
_BLOCK_RESIDUE_TOL = 1e-12
_ANGLE_SLACK = 1e-12
SQRT2 = math.sqrt(2.0)


class StructureViolation(Exception):
    """Raised when a matrix lacks the diagonal-plus-antidiagonal structure."""


@dataclass(frozen=True)
class CertificateConstants:
    """Slope s, offset mu, and threshold beta_T of one certificate."""

    protocol: BellProtocol
    s: float
    mu: float
    beta_T: float
    s_exact: Optional[Root2] = None
    mu_exact: Optional[Root2] = None
    beta_T_exact: Optional[Root2] = None


@dataclass(frozen=True)
class GridSpec:
    """Product grid description for the certificate scan."""

    points_per_axis: int
    domain: Tuple[float, float] = (0.0, math.pi / 4)
    refinement_depth: int = 6

    def __post_init__(self) -> None:
        if self.points_per_axis < 2:
            raise ValueError("grid needs at least 2 points per axis")
        lo, hi = self.domain
        if not (-_ANGLE_SLACK <= lo < hi <= math.pi / 2 + _ANGLE_SLACK):
            raise ValueError(f"invalid scan domain {self.domain}")
        if self.refinement_depth < 0:
            raise ValueError("refinement depth must be nonnegative")


@dataclass(frozen=True)
class CertificationReport:
    """Outcome of one grid scan."""

    constants: CertificateConstants
    grid_points_per_axis: int
    min_eigenvalue: float
    argmin_angles: Tuple[float, ...]
    refined: bool
    passed: bool


_CATALOG: Dict[Tuple[str, int], Tuple[Root2, Root2, Root2]] = {
    (SVETLICHNY, 3): (Root2(Fraction(3, 16), Fraction(3, 16)),
                      Root2(Fraction(-1, 2), Fraction(-3, 4)),
                      Root2(Fraction(8, 3), Fraction(4, 3))),
    (SVETLICHNY, 4): (Root2(Fraction(1, 16), Fraction(1, 16)),
                      Root2(0, Fraction(-1, 2)), Root2(8)),
    (SVETLICHNY, 5): (Root2(Fraction(1, 32), Fraction(1, 32)),
                      Root2(0, Fraction(-1, 2)), Root2(16)),
    (MABK, 3): (Root2(Fraction(1, 4), Fraction(1, 8)),
                Root2(0, Fraction(-1, 2)), Root2(0, 2)),
    (MABK, 4): (Root2(Fraction(1, 8), Fraction(1, 16)),
                Root2(0, Fraction(-1, 2)), Root2(0, 4)),
    (MABK, 5): (Root2(Fraction(1, 16), Fraction(1, 32)),
                Root2(0, Fraction(-1, 2)), Root2(0, 8)),
}


def catalog_constants(protocol: BellProtocol) -> CertificateConstants:
    """Certificate constants for the supported scenarios, exact and float."""
    key = (protocol.family, protocol.n)
    if key not in _CATALOG:
        raise ValueError(f"no catalog constants for {protocol.family} n={protocol.n}")
    s, mu, beta_t = _CATALOG[key]
    return CertificateConstants(protocol=protocol, s=float(s), mu=float(mu),
                                beta_T=float(beta_t), s_exact=s, mu_exact=mu,
                                beta_T_exact=beta_t)


_STATE_CACHE: Dict[Tuple[str, int], np.ndarray] = {}


def _target_state(protocol: BellProtocol) -> np.ndarray:
    key = (protocol.family, protocol.n)
    if key not in _STATE_CACHE:
        _STATE_CACHE[key] = ghz_state(protocol).rho
    return _STATE_CACHE[key]


def build_T(protocol: BellProtocol, angles: Sequence[float], s: float,
            mu: float) -> np.ndarray:
    """Assemble the certificate matrix Lambda(rho) - s W - mu I."""
    rho = _target_state(protocol)
    channel = DephasingChannel(tuple(angles))
    if channel.n != protocol.n:
        raise ValueError(f"expected {protocol.n} angles, got {channel.n}")
    w = build_operator(protocol, angles)
    return apply_channel(rho, channel) - s * w - mu * np.eye(protocol.dim)


def block_unitary(n: int) -> np.ndarray:
    """Permutation matrix pairing each index b with its complement.

    Column k holds a single 1 at row 2k for k < 2^(n-1) and at row
    2(2^n - 1 - k) + 1 otherwise, so conjugation by this matrix brings a
    diagonal-plus-antidiagonal matrix into 2 x 2 block-diagonal form.
    """
    if n < 1:
        raise ValueError("need at least one party")
    dim = 2 ** n
    u = np.zeros((dim, dim))
    for k in range(dim):
        row = 2 * k if k < dim // 2 else 2 * (dim - 1 - k) + 1
        u[row, k] = 1.0
    return u


def block_decompose(t: np.ndarray, n: int,
                    residue_tol: float = _BLOCK_RESIDUE_TOL) -> List[np.ndarray]:
    """Split a diagonal-plus-antidiagonal matrix into its 2 x 2 blocks.

    Block i couples indices (i, 2^n - 1 - i).  Raises StructureViolation if
    the conjugated matrix carries weight outside the blocks.
    """
    t = np.asarray(t, dtype=complex)
    dim = 2 ** n
    if t.shape != (dim, dim):
        raise ValueError(f"expected a {dim} x {dim} matrix, got {t.shape}")
    u = block_unitary(n)
    t2 = u @ t @ u.conj().T
    blocks = []
    residue = t2.copy()
    for i in range(dim // 2):
        blocks.append(t2[2 * i:2 * i + 2, 2 * i:2 * i + 2].copy())
        residue[2 * i:2 * i + 2, 2 * i:2 * i + 2] = 0.0
    worst = float(np.max(np.abs(residue)))
    if worst > residue_tol:
        raise StructureViolation(
            f"off-block weight {worst} exceeds tolerance {residue_tol}")
    return blocks


def _g_of(axis: np.ndarray) -> np.ndarray:
    return np.clip((1 + SQRT2) * (np.sin(axis) + np.cos(axis) - 1.0), 0.0, 1.0)


def _min_block_over_axes(protocol: BellProtocol, s: float, mu: float,
                         axes: Sequence[np.ndarray]):
    """Minimum block lower-eigenvalue over a product grid of angles.

    Evaluates, for every antidiagonal pair b and every grid point, the
    closed-form lower eigenvalue (D - mu) - |K_c - s W_c| of the 2 x 2 block,
    where D and K_c are the diagonal and corner entries of the channel output
    and W_c the corner entry of the Bell operator.
    """
    n = protocol.n
    zc = corner_coefficient(protocol)
    psi = ghz_phase(protocol)
    cs = [np.cos(a) for a in axes]
    sn = [np.sin(a) for a in axes]
    gs = [_g_of(a) for a in axes]
    dx = [np.where(a <= math.pi / 4 + _ANGLE_SLACK, 1.0, g)
          for a, g in zip(axes, gs)]
    dy = [np.where(a <= math.pi / 4 + _ANGLE_SLACK, g, 1.0)
          for a, g in zip(axes, gs)]
    scale = 1.0 / 2 ** (n + 1)
    best = math.inf
    best_point: Tuple[float, ...] = ()
    best_pair = 0
    for b in range(2 ** (n - 1)):
        sig = pair_signs(n, b)
        diag = scale * (outer_all([1.0 + sig[j] * gs[j] for j in range(n)])
                        + outer_all([1.0 - sig[j] * gs[j] for j in range(n)]))
        kc = scale * (np.conj(psi) * outer_all([dx[j] + sig[j] * dy[j]
                                                for j in range(n)])
                      + psi * outer_all([dx[j] - sig[j] * dy[j]
                                         for j in range(n)]))
        wc = (zc * outer_all([cs[j] - sig[j] * sn[j] for j in range(n)])
              + np.conj(zc) * outer_all([cs[j] + sig[j] * sn[j]
                                         for j in range(n)]))
        low = (diag - mu) - np.abs(kc - s * wc)
        flat = int(np.argmin(low))
        value = float(low.flat[flat])
        if value < best:
            best = value
            idx = np.unravel_index(flat, low.shape)
            best_point = tuple(float(axes[j][idx[j]]) for j in range(n))
            best_pair = b
    return best, best_point, best_pair


def min_eig_over_grid(protocol: BellProtocol, constants: CertificateConstants,
                      grid: GridSpec,
                      psd_tol: float = PSD_TOLERANCE) -> CertificationReport:
    """Scan the certificate over a product grid and report the minimum.

    When the grid minimum sits near zero the scan refines locally around the
    minimizer, shrinking a 5-point stencil for ``refinement_depth`` rounds,
    so the reported value reflects the continuum minimum rather than grid
    placement.
    """
    lo, hi = grid.domain
    n = protocol.n
    axis = np.linspace(lo, hi, grid.points_per_axis)
    best, point, _ = _min_block_over_axes(protocol, constants.s, constants.mu,
                                          [axis] * n)
    refined = False
    if abs(best) <= 10 * psd_tol and grid.refinement_depth > 0:
        refined = True
        h = (hi - lo) / (grid.points_per_axis - 1)
        p = np.array(point)
        for _ in range(grid.refinement_depth):
            sub = [np.clip(np.linspace(p[j] - h, p[j] + h, 5), lo, hi)
                   for j in range(n)]
            value, sub_point, _ = _min_block_over_axes(
                protocol, constants.s, constants.mu, sub)
            if value < best:
                best, point = value, sub_point
                p = np.array(sub_point)
            h /= 2.0
    return CertificationReport(constants=constants,
                               grid_points_per_axis=grid.points_per_axis,
                               min_eigenvalue=best,
                               argmin_angles=tuple(point),
                               refined=refined,
                               passed=bool(best >= -psd_tol))


def _check_closed_form_domain(angles: Sequence[float]) -> None:
    for alpha in angles:
        if not (-_ANGLE_SLACK <= alpha <= math.pi / 4 + _ANGLE_SLACK):
            raise ValueError(f"angle {alpha} outside [0, pi/4]")


def sv3_block_functions(angles: Sequence[float], s: float) -> List[float]:
    """Hand-expanded block entries of the three-party Svetlichny certificate.

    Returns [f1, ..., f8]; block i over pair (i, 7 - i) has diagonal f_{2i+1}
    and corner f_{2i+2} (1-based), valid on [0, pi/4]^3 with mu tied to s by
    the kernel condition mu = 1 - 4 sqrt(2) s.
    """
    if len(angles) != 3:
        raise ValueError(f"expected 3 angles, got {len(angles)}")
    _check_closed_form_domain(angles)
    a1, a2, a3 = angles
    g1, g2, g3 = (g_param(a) for a in (a1, a2, a3))
    cos, sin = math.cos, math.sin
    f1 = (-7 + g2 * g3 + g1 * (g2 + g3)) / 8 + 4 * SQRT2 * s
    f2 = (-1 - g2 * g3 - g1 * (g2 + g3)) / 8 \
        + 4 * s * cos(a1 - a2) * cos(a3) + 4 * s * sin(a1 + a2) * sin(a3)
    f3 = (-7 + g1 * g2 - (g1 + g2) * g3) / 8 + 4 * SQRT2 * s
    f4 = (-1 - g1 * g2 + (g1 + g2) * g3) / 8 \
        + 4 * s * cos(a1 - a2) * cos(a3) - 4 * s * sin(a1 + a2) * sin(a3)
    f5 = (-7 - g2 * g3 + g1 * (-g2 + g3)) / 8 + 4 * SQRT2 * s
    f6 = (-1 + g1 * (g2 - g3) + g2 * g3) / 8 \
        + 4 * s * cos(a1 + a2) * cos(a3) + 4 * s * sin(a1 - a2) * sin(a3)
    f7 = (-7 + g2 * g3 - g1 * (g2 + g3)) / 8 + 4 * SQRT2 * s
    f8 = (-1 - g2 * g3 + g1 * (g2 + g3)) / 8 \
        + 4 * s * cos(a1 + a2) * cos(a3) - 4 * s * sin(a1 - a2) * sin(a3)
    return [float(f1), float(f2), float(f3), float(f4),
            float(f5), float(f6), float(f7), float(f8)]


def sv4_block_functions(angles: Sequence[float],
                        s: float) -> Tuple[float, complex]:
    """Diagonal f1 and corner f2 of the four-party outer certificate block.

    Valid on [0, pi/4]^4 with mu = 1 - 8 sqrt(2) s; the corner entry f2 is
    the (lower-left) block entry T[15, 0].
    """
    if len(angles) != 4:
        raise ValueError(f"expected 4 angles, got {len(angles)}")
    _check_closed_form_domain(angles)
    a0, a1, a2, a3 = angles
    g0, g1, g2, g3 = (g_param(a) for a in angles)
    ge = (g0 * g1 + g0 * g2 + g1 * g2 + g0 * g3 + g1 * g3 + g2 * g3
          + g0 * g1 * g2 * g3)
    go = (g0 + g1 + g2 + g3
          + g0 * g1 * g2 + g0 * g1 * g3 + g0 * g2 * g3 + g1 * g2 * g3)
    t1 = (math.cos(a0 - a3) * math.cos(a1 - a2)
          + math.sin(a1 + a2) * math.sin(a0 + a3))
    t2 = (-math.cos(a0 - a3) * math.sin(a1 + a2)
          - math.cos(a1 - a2) * math.sin(a0 + a3))
    f1 = (-15 + ge) / 16 + 8 * SQRT2 * s
    f2 = (-(1 + ge) / (16 * SQRT2) + 4 * t1 * s
          + 1j * (go / (16 * SQRT2) + 4 * t2 * s))
    return float(f1), complex(f2)


def sv4_determinant(angles: Sequence[float], s: float) -> float:
    """Determinant of the four-party outer block, expanded directly in s.

    Independent of ``sv4_block_functions``: the quadratic-in-s expansion is
    written out term by term rather than formed as f1^2 - |f2|^2.
    """
    if len(angles) != 4:
        raise ValueError(f"expected 4 angles, got {len(angles)}")
    _check_closed_form_domain(angles)
    a0, a1, a2, a3 = angles
    g0, g1, g2, g3 = (g_param(a) for a in angles)
    ge = (g0 * g1 + g0 * g2 + g1 * g2 + g0 * g3 + g1 * g3 + g2 * g3
          + g0 * g1 * g2 * g3)
    go = (g0 + g1 + g2 + g3
          + g0 * g1 * g2 + g0 * g1 * g3 + g0 * g2 * g3 + g1 * g2 * g3)
    t1 = (math.cos(a0 - a3) * math.cos(a1 - a2)
          + math.sin(a1 + a2) * math.sin(a0 + a3))
    t2 = (-math.cos(a0 - a3) * math.sin(a1 + a2)
          - math.cos(a1 - a2) * math.sin(a0 + a3))
    return ((128 - 16 * (t1 ** 2 + t2 ** 2)) * s ** 2
            + (-15 * SQRT2 + ge * SQRT2 + (1 + ge) / (2 * SQRT2) * t1
               - go / (2 * SQRT2) * t2) * s
            + ((ge + go) * (ge - go) / 2 - 31 * ge + 449 / 2) / 256)


def parity_projector(x1: int, x2: int) -> np.ndarray:
    """Rank-2 projector onto the three-qubit parity sector (x1, x2)."""
    if x1 not in (0, 1) or x2 not in (0, 1):
        raise ValueError("parity labels must be 0 or 1")
    iii = np.eye(8, dtype=complex)
    z = np.array([1.0, -1.0])
    zzi = np.diag(outer_all([z, z, np.ones(2)]).ravel()).astype(complex)
    ziz = np.diag(outer_all([z, np.ones(2), z]).ravel()).astype(complex)
    izz = np.diag(outer_all([np.ones(2), z, z]).ravel()).astype(complex)
    return (iii + (-1) ** x1 * zzi + (-1) ** x2 * ziz
            + (-1) ** (x1 + x2) * izz) / 4


def projector_lambda(angles: Sequence[float], s: float, x1: int,
                     x2: int) -> float:
    """Closed-form pair invariant of the projected certificate matrix.

    For M the certificate matrix compressed to the parity sector (x1, x2),
    returns (Tr M)^2 - Tr(M^2), which is twice the product of the two
    nonzero eigenvalues of M and hence nonnegative wherever the certificate
    holds.  Valid on [0, pi/4]^3 with mu = 1 - 4 sqrt(2) s.
    """
    if len(angles) != 3:
        raise ValueError(f"expected 3 angles, got {len(angles)}")
    if x1 not in (0, 1) or x2 not in (0, 1):
        raise ValueError("parity labels must be 0 or 1")
    _check_closed_form_domain(angles)
    a1, a2, a3 = angles
    mu = 1 - 4 * SQRT2 * s
    g1, g2, g3 = (g_param(a) for a in angles)
    c1, c2, c3 = (math.cos(a) for a in angles)
    s1, s2, s3 = (math.sin(a) for a in angles)
    t1 = -1 / 8 + 4 * s * c1 * c2 * c3
    t2 = g2 * g3 / 8 - 4 * s * c1 * s2 * s3
    t3 = g1 * g3 / 8 - 4 * s * s1 * c2 * s3
    t4 = g1 * g2 / 8 - 4 * s * s1 * s2 * c3
    q = 1 / 8 - mu
    lam = (2 * q ** 2 - 2 * (t1 ** 2 + t2 ** 2 + t3 ** 2 + t4 ** 2)
           + (g1 ** 2 * g2 ** 2 + g2 ** 2 * g3 ** 2 + g3 ** 2 * g1 ** 2) / 32
           + (-1) ** x1 * ((q + g3 ** 2 / 8) * g1 * g2 / 2
                           - 4 * (t2 * t3 - t1 * t4))
           + (-1) ** x2 * ((q + g2 ** 2 / 8) * g1 * g3 / 2
                           - 4 * (t2 * t4 - t1 * t3))
           + (-1) ** (x1 + x2) * ((q + g1 ** 2 / 8) * g2 * g3 / 2
                                  - 4 * (t3 * t4 - t1 * t2)))
    return float(lam)


def closed_form_crosscheck(protocol: BellProtocol, samples: int = 200,
                           seed: int = 0) -> dict:
    """Compare every closed form against the matrix route on random angles.

    Draws ``samples`` angle tuples from [0, pi/4]^n and checks the
    hand-expanded block entries (plus, for n = 4, the determinant expansion
    and the Sylvester positivity test, and for n = 3 the parity-sector
    invariant) against the assembled certificate matrix.  Only the three- and
    four-party Svetlichny scenarios have closed forms.
    """
    if protocol.family != SVETLICHNY or protocol.n not in (3, 4):
        raise ValueError("closed forms exist only for svetlichny n in {3, 4}")
    constants = catalog_constants(protocol)
    rng = np.random.default_rng(seed)
    failures: List[str] = []
    if protocol.n == 3:
        checks = ["block_entries", "parity_sector_invariant"]
    else:
        checks = ["block_entries", "determinant_expansion", "sylvester_test"]
    for index in range(samples):
        angles = tuple(rng.uniform(0.0, math.pi / 4, size=protocol.n))
        t = build_T(protocol, angles, constants.s, constants.mu)
        blocks = block_decompose(t, protocol.n)
        if protocol.n == 3:
            f = sv3_block_functions(angles, constants.s)
            for i, block in enumerate(blocks):
                if (abs(block[0, 0].real - f[2 * i]) > 1e-10
                        or abs(block[0, 1] - f[2 * i + 1]) > 1e-10):
                    failures.append(f"sample {index}: block {i} mismatch")
            for x1 in (0, 1):
                for x2 in (0, 1):
                    p = parity_projector(x1, x2)
                    m = p @ t @ p
                    direct = np.trace(m).real ** 2 - np.trace(m @ m).real
                    got = projector_lambda(angles, constants.s, x1, x2)
                    if abs(got - direct) > 1e-10:
                        failures.append(
                            f"sample {index}: sector ({x1},{x2}) mismatch")
        else:
            f1, f2 = sv4_block_functions(angles, constants.s)
            block = blocks[0]
            if (abs(block[0, 0].real - f1) > 1e-10
                    or abs(block[1, 0] - f2) > 1e-10):
                failures.append(f"sample {index}: outer block mismatch")
            deter = sv4_determinant(angles, constants.s)
            if abs(deter - (f1 ** 2 - abs(f2) ** 2)) > 1e-9:
                failures.append(f"sample {index}: determinant mismatch")
            sylvester_pd = f1 > 1e-9 and deter > 1e-9
            lower = f1 - abs(f2)
            if sylvester_pd and lower < -1e-9:
                failures.append(f"sample {index}: sylvester false positive")
            if lower > 1e-9 and (f1 < -1e-9 or deter < -1e-9):
                failures.append(f"sample {index}: sylvester false negative")
    return {
        "family": protocol.family,
        "n": protocol.n,
        "samples": samples,
        "checks": checks,
        "failures": failures,
        "passed": not failures,
    }
