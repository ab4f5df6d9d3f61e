"""Entanglement measures: concurrence, X-state closed forms, tangles.

All measures are clipped to [0, 1] after a -1e-9 tolerance window to absorb
eigenvalue noise from partial traces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .maps import partial_trace, pure_state_density

_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SYSY = np.kron(_SY, _SY).real
_SY4 = np.kron(_SYSY, _SYSY)

CLIP_TOL = 1e-9

BELL_LABELS = ("phi+", "phi-", "psi+", "psi-")


def _clip_unit(x: float, tol: float = CLIP_TOL) -> float:
    if x < -tol or x > 1.0 + tol:
        raise ValueError(f"measure value {x} outside [0, 1] beyond tolerance")
    return float(min(max(x, 0.0), 1.0))


def bell_state(label: str) -> np.ndarray:
    """Bell vector; phi+- = (|00> +- |11>)/sqrt2, psi+- = (|01> +- |10>)/sqrt2."""
    s = 1.0 / np.sqrt(2.0)
    table = {
        "phi+": [s, 0, 0, s],
        "phi-": [s, 0, 0, -s],
        "psi+": [0, s, s, 0],
        "psi-": [0, s, -s, 0],
    }
    if label not in table:
        raise ValueError(f"unknown Bell label {label!r}, expected one of {BELL_LABELS}")
    return np.array(table[label], dtype=complex)


def werner_state(p: float, bell: str = "psi+") -> np.ndarray:
    """p-weighted mixture of a Bell projector with the maximally mixed state."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Werner weight must be in [0, 1], got {p}")
    psi = bell_state(bell)
    return p * np.outer(psi, psi.conj()) + (1.0 - p) * np.eye(4) / 4.0


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    The lambda_i are the decreasing square-rooted eigenvalues of
    rho (sy x sy) rho* (sy x sy); they are evaluated here as the singular
    values of the symmetric overlap matrix of the subnormalized eigenvectors
    of rho, which is exact on rank-deficient states where the direct
    eigenvalue route loses half the working precision to the square root.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"concurrence needs a 4x4 state, got {rho.shape}")
    w, v = np.linalg.eigh(rho)
    keep = w > max(w.max(), 0.0) * 1e-14
    x = v[:, keep] * np.sqrt(w[keep])
    lam = np.linalg.svd(x.T @ _SYSY @ x, compute_uv=False)
    return _clip_unit(max(0.0, lam[0] - lam[1:].sum()))


@dataclass(frozen=True)
class XState:
    """Two-qubit state with support on the diagonal and anti-diagonal only."""

    p00: float
    p11: float
    p22: float
    p33: float
    rho03: complex = 0.0
    rho12: complex = 0.0

    def __post_init__(self):
        pops = (self.p00, self.p11, self.p22, self.p33)
        if any(p < -1e-12 for p in pops):
            raise ValueError(f"negative population in {pops}")
        if abs(sum(pops) - 1.0) > 1e-10:
            raise ValueError(f"populations sum to {sum(pops)}, expected 1")
        if abs(self.rho03) ** 2 > self.p00 * self.p33 + 1e-12:
            raise ValueError("|rho03|^2 exceeds p00*p33 (not positive semidefinite)")
        if abs(self.rho12) ** 2 > self.p11 * self.p22 + 1e-12:
            raise ValueError("|rho12|^2 exceeds p11*p22 (not positive semidefinite)")

    def to_density_matrix(self) -> np.ndarray:
        rho = np.diag(np.array([self.p00, self.p11, self.p22, self.p33], dtype=complex))
        rho[0, 3] = self.rho03
        rho[3, 0] = np.conj(self.rho03)
        rho[1, 2] = self.rho12
        rho[2, 1] = np.conj(self.rho12)
        return rho

    @classmethod
    def from_density_matrix(cls, rho: np.ndarray, atol: float = 1e-10) -> "XState":
        rho = np.asarray(rho, dtype=complex)
        mask = np.ones((4, 4), dtype=bool)
        mask[np.arange(4), np.arange(4)] = False
        mask[0, 3] = mask[3, 0] = mask[1, 2] = mask[2, 1] = False
        if np.abs(rho[mask]).max() > atol:
            raise ValueError("density matrix is not of X form")
        return cls(
            rho[0, 0].real, rho[1, 1].real, rho[2, 2].real, rho[3, 3].real,
            complex(rho[0, 3]), complex(rho[1, 2]),
        )

    @classmethod
    def werner(cls, p: float, bell: str = "psi+") -> "XState":
        return cls.from_density_matrix(werner_state(p, bell))

    def concurrence(self) -> float:
        """Closed-form Wootters concurrence of an X state."""
        c1 = abs(self.rho12) - np.sqrt(max(self.p00 * self.p33, 0.0))
        c2 = abs(self.rho03) - np.sqrt(max(self.p11 * self.p22, 0.0))
        return _clip_unit(2.0 * max(0.0, c1, c2))


def transferred_concurrence(x: XState, f: complex):
    """Concurrence after sending the second qubit through one network map.

    Returns (C, C1, C2): the anti-parallel (C1) and parallel (C2) branches and
    C = 2*max(0, C1, C2), for an X-state input and transition amplitude f.
    """
    af = abs(complex(f))
    if af > 1.0 + 1e-10:
        raise ValueError(f"amplitude modulus {af} exceeds 1")
    af = min(af, 1.0)
    rem = 1.0 - af**2
    c1 = af * (abs(x.rho12) - np.sqrt(x.p33 * (x.p00 + x.p11 * rem)))
    c2 = af * (abs(x.rho03) - np.sqrt(x.p11 * (x.p22 + x.p33 * rem)))
    return _clip_unit(2.0 * max(0.0, c1, c2)), float(c1), float(c2)


def dual_rail_concurrence(x: XState, f: complex):
    """Concurrence after sending both qubits through identical network maps.

    Returns (C, C1, C2) for an X-state carried by two equal-amplitude rails.
    """
    af = abs(complex(f))
    if af > 1.0 + 1e-10:
        raise ValueError(f"amplitude modulus {af} exceeds 1")
    af = min(af, 1.0)
    a2 = af**2
    rem = 1.0 - a2
    c1 = a2 * (abs(x.rho12) - np.sqrt(x.p33 * (x.p00 + rem * (x.p11 + x.p22 + rem * x.p33))))
    c2 = a2 * (abs(x.rho03) - np.sqrt((x.p11 + rem * x.p33) * (x.p22 + rem * x.p33)))
    return _clip_unit(2.0 * max(0.0, c1, c2)), float(c1), float(c2)


def _as_state_vector(psi, n_qubits: int) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size != 2**n_qubits:
        raise ValueError(f"expected a {n_qubits}-qubit vector, got length {psi.size}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state vector norm is {norm}, expected 1")
    return psi


def four_tangle(psi) -> float:
    """|<psi| sy x sy x sy x sy |psi*>|^2 for a four-qubit pure state."""
    psi = _as_state_vector(psi, 4)
    val = psi.conj() @ _SY4 @ psi.conj()
    return _clip_unit(abs(val) ** 2)


def three_tangle_pure(psi) -> float:
    """Residual tangle C^2_{A(BC)} - C^2_{AB} - C^2_{AC} of a 3-qubit pure state.

    Evaluated through the degree-4 polynomial invariant (Cayley
    hyperdeterminant), which is algebraically identical to the concurrence
    expression but avoids the sqrt-of-eigenvalue noise floor near zero.
    """
    psi = _as_state_vector(psi, 3)
    a = psi.reshape(2, 2, 2)
    d1 = (
        a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2
        + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
        + a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2
        + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
    )
    d2 = (
        a[0, 0, 0] * a[1, 1, 1] * a[0, 1, 1] * a[1, 0, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 1, 0] * a[0, 0, 1]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 0] * a[0, 0, 1]
        + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1]
    )
    d3 = (
        a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1]
        + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0]
    )
    return _clip_unit(4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3))


def three_tangle_from_concurrences(psi) -> float:
    """Same residual tangle via the concurrence expression (slower, noisier)."""
    psi = _as_state_vector(psi, 3)
    rho = np.outer(psi, psi.conj())
    ra = partial_trace(rho, [0], [2, 2, 2])
    c2_one_rest = 2.0 * (1.0 - np.trace(ra @ ra).real)
    cab = concurrence(partial_trace(rho, [0, 1], [2, 2, 2]))
    cac = concurrence(partial_trace(rho, [0, 2], [2, 2, 2]))
    return _clip_unit(max(0.0, c2_one_rest - cab**2 - cac**2), tol=1e-6)


def three_tangle_decomposition_bound(rho: np.ndarray, eig_tol: float = 1e-12) -> float:
    """Average residual tangle over the eigendecomposition of a 3-qubit state.

    Upper bound on the convex-roof extension; when it vanishes the convex
    roof is exactly zero, since a zero-average decomposition is minimal.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        raise ValueError(f"expected an 8x8 three-qubit state, got {rho.shape}")
    w, v = np.linalg.eigh(rho)
    total = 0.0
    for lam, vec in zip(w, v.T):
        if lam > eig_tol:
            total += lam * three_tangle_pure(vec / np.linalg.norm(vec))
    return float(total)


def one_vs_rest_concurrence(psi, qubit: int, n_qubits: int = 4) -> float:
    """sqrt(2 (1 - Tr rho_a^2)) for one qubit against the rest."""
    psi = _as_state_vector(psi, n_qubits)
    r = partial_trace(pure_state_density(psi), [qubit], [2] * n_qubits)
    return _clip_unit(np.sqrt(max(0.0, 2.0 * (1.0 - np.trace(r @ r).real))))


def pair_split_concurrence(psi, pair) -> float:
    """sqrt((4/3) (1 - Tr rho_AB^2)) for a two-two bipartition of four qubits."""
    psi = _as_state_vector(psi, 4)
    r = partial_trace(pure_state_density(psi), list(pair), [2] * 4)
    return _clip_unit(np.sqrt(max(0.0, (4.0 / 3.0) * (1.0 - np.trace(r @ r).real))))


SEPARABLE_LINEAR_ENTROPY = 1e-13


def four_qubit_concurrence(psi) -> float:
    """Geometric mean of the concurrence over all seven bipartitions.

    Zero if and only if the pure state is separable across some bipartition.
    The 1/7 power would blow partial-trace noise on a separable cut up to
    ~1e-1, so any bipartition whose linear entropy falls below the
    1e-13 separability floor forces an exact zero.
    """
    psi = _as_state_vector(psi, 4)
    rho = pure_state_density(psi)
    entropies = []
    for cut in ((0,), (1,), (2,), (3,), (0, 1), (0, 2), (0, 3)):
        r = partial_trace(rho, list(cut), [2] * 4)
        entropies.append(max(0.0, 1.0 - np.trace(r @ r).real))
    if min(entropies) < SEPARABLE_LINEAR_ENTROPY:
        return 0.0
    scale = [2.0] * 4 + [4.0 / 3.0] * 3
    factors = np.sqrt(np.array(scale) * np.array(entropies))
    return _clip_unit(float(np.prod(factors)) ** (1.0 / 7.0))


PAIRS_4 = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
SPLITS_4 = ((0, 1), (0, 2), (0, 3))


@dataclass(frozen=True)
class MeasureReport:
    """Every entanglement quantity of a four-qubit pure state."""

    pair_concurrence: dict
    one_vs_rest: tuple
    pair_vs_pair: dict
    three_tangle_bound: dict
    four_tangle: float
    four_qubit_concurrence: float


def four_qubit_measures(psi) -> MeasureReport:
    """Full measure report for a four-qubit pure state."""
    psi = _as_state_vector(psi, 4)
    rho = pure_state_density(psi)
    dims = [2] * 4
    pair_c = {p: concurrence(partial_trace(rho, list(p), dims)) for p in PAIRS_4}
    one_rest = tuple(one_vs_rest_concurrence(psi, q) for q in range(4))
    splits = {p: pair_split_concurrence(psi, p) for p in SPLITS_4}
    tangle3 = {}
    for dropped in range(4):
        kept = tuple(q for q in range(4) if q != dropped)
        tangle3[kept] = three_tangle_decomposition_bound(partial_trace(rho, list(kept), dims))
    return MeasureReport(
        pair_concurrence=pair_c,
        one_vs_rest=one_rest,
        pair_vs_pair=splits,
        three_tangle_bound=tangle3,
        four_tangle=four_tangle(psi),
        four_qubit_concurrence=four_qubit_concurrence(psi),
    )
