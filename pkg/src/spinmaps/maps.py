"""Quantum dynamical maps: Kraus sets, superoperators and Choi matrices.

Superoperators act on row-major vectorized density matrices, i.e. the column
vector (rho_00, rho_01, ..., rho_dd); the matrix element A[(i,j),(n,m)] is
sum_k (E_k)_{in} (E_k)*_{jm}, so A = sum_k kron(E_k, conj(E_k)).

The one- and two-qubit maps induced by a U(1) network on sender/receiver
subsets are built from sector amplitude tables.  All amplitudes entering a
map are taken relative to the vacuum phase exp(-i E_vac t), which makes the
vacuum-vacuum Kraus element exactly 1 and the resulting channel equal to the
exact reduced dynamics for arbitrary fields and ZZ couplings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .network import AmplitudeTable, SpinNetwork, amplitudes, vacuum_amplitude

DENSITY_ATOL = 1e-10
PSD_FLOOR = -1e-9
COMPLETENESS_ATOL = 1e-10


# ---------------------------------------------------------------------------
# density matrices

def assert_density_matrix(rho: np.ndarray, atol: float = DENSITY_ATOL, eig_floor: float = PSD_FLOOR):
    """Raise ValueError unless rho is Hermitian, unit-trace and PSD within tolerance."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > atol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > atol:
        raise ValueError(f"density matrix trace is {np.trace(rho)}, expected 1")
    w = np.linalg.eigvalsh(rho)
    if w.min() < eig_floor:
        raise ValueError(f"density matrix has negative eigenvalue {w.min():.3e}")


def pure_state_density(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-10:
        raise ValueError(f"state vector norm is {norm}, expected 1")
    return np.outer(psi, psi.conj())


def random_density_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """(1/2) trace norm of the difference of two Hermitian matrices."""
    return 0.5 * float(np.abs(np.linalg.eigvalsh(np.asarray(a) - np.asarray(b))).sum())


def partial_trace(rho: np.ndarray, keep, dims) -> np.ndarray:
    """Trace out all factors not listed in ``keep`` (kept in the given order)."""
    dims = list(dims)
    rho = np.asarray(rho)
    total = int(np.prod(dims))
    if rho.shape != (total, total):
        raise ValueError(f"state of shape {rho.shape} inconsistent with factor dims {dims}")
    keep = list(keep)
    if len(set(keep)) != len(keep) or any(not 0 <= q < len(dims) for q in keep):
        raise ValueError(f"invalid subsystem selection {keep} for {len(dims)} factors")
    rest = [q for q in range(len(dims)) if q not in keep]
    nsub = len(dims)
    resh = rho.reshape(dims + dims)
    perm = keep + rest + [q + nsub for q in keep] + [q + nsub for q in rest]
    dk = int(np.prod([dims[q] for q in keep])) if keep else 1
    dr = total // dk
    red = resh.transpose(perm).reshape(dk, dr, dk, dr)
    return np.einsum("ipjp->ij", red)


# ---------------------------------------------------------------------------
# map representations

@dataclass(frozen=True)
class KrausSet:
    """A quantum map as a tuple of Kraus operators.

    With ``complete=True`` (the default) the completeness relation
    sum_k E_k^dag E_k = 1 is checked to 1e-10 at construction.
    """

    operators: tuple
    complete: bool = True

    def __post_init__(self):
        if not self.operators:
            raise ValueError("KrausSet needs at least one operator")
        ops = tuple(np.asarray(op, dtype=complex) for op in self.operators)
        shape = ops[0].shape
        if len(shape) != 2:
            raise ValueError("Kraus operators must be matrices")
        if any(op.shape != shape for op in ops):
            raise ValueError("all Kraus operators must share the same shape")
        object.__setattr__(self, "operators", ops)
        if self.complete:
            dev = np.abs(self.completeness_defect()).max()
            if dev > COMPLETENESS_ATOL:
                raise ValueError(f"Kraus completeness violated by {dev:.3e}")

    @property
    def input_dim(self) -> int:
        return self.operators[0].shape[1]

    @property
    def output_dim(self) -> int:
        return self.operators[0].shape[0]

    def completeness_defect(self) -> np.ndarray:
        acc = sum(op.conj().T @ op for op in self.operators)
        return acc - np.eye(self.input_dim)


def identity_kraus(dim: int) -> KrausSet:
    return KrausSet((np.eye(dim, dtype=complex),))


def superop_from_kraus(ks: KrausSet) -> np.ndarray:
    """Superoperator matrix A = sum_k kron(E_k, conj(E_k))."""
    a = np.zeros((ks.output_dim**2, ks.input_dim**2), dtype=complex)
    for op in ks.operators:
        a += np.kron(op, op.conj())
    return a


def apply_kraus(ks: KrausSet, rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (ks.input_dim, ks.input_dim):
        raise ValueError(f"state dimension {rho.shape} does not match input dim {ks.input_dim}")
    return sum(op @ rho @ op.conj().T for op in ks.operators)


def apply_superop(a: np.ndarray, rho: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    rho = np.asarray(rho, dtype=complex)
    din = int(round(np.sqrt(a.shape[1])))
    dout = int(round(np.sqrt(a.shape[0])))
    if rho.shape != (din, din):
        raise ValueError(f"state dimension {rho.shape} does not match input dim {din}")
    return (a @ rho.reshape(-1)).reshape(dout, dout)


def apply(map_, rho: np.ndarray, validate: bool = True) -> np.ndarray:
    """Apply a map (KrausSet or superoperator matrix) to a density matrix."""
    out = apply_kraus(map_, rho) if isinstance(map_, KrausSet) else apply_superop(map_, rho)
    if validate:
        assert_density_matrix(out)
    return out


def choi_from_superop(a: np.ndarray, input_dim: int, output_dim: int) -> np.ndarray:
    """Unnormalized Choi matrix C[(n,i),(m,j)] = A[(i,j),(n,m)]."""
    a4 = np.asarray(a).reshape(output_dim, output_dim, input_dim, input_dim)
    d = input_dim * output_dim
    return a4.transpose(2, 0, 3, 1).reshape(d, d)


def choi_from_kraus(ks: KrausSet) -> np.ndarray:
    return choi_from_superop(superop_from_kraus(ks), ks.input_dim, ks.output_dim)


def kraus_from_choi(choi: np.ndarray, input_dim: int, output_dim: int, tol: float = 1e-12) -> KrausSet:
    """Minimal Kraus set from the eigendecomposition of a (PSD) Choi matrix."""
    w, v = np.linalg.eigh(np.asarray(choi))
    ops = []
    for lam, vec in zip(w, v.T):
        if lam > tol:
            ops.append(np.sqrt(lam) * vec.reshape(input_dim, output_dim).T)
    if not ops:
        raise ValueError("Choi matrix has no positive eigenvalues above tolerance")
    return KrausSet(tuple(ops), complete=False)


def is_trace_preserving(a: np.ndarray, atol: float = 1e-10) -> bool:
    """Check sum_i A[(i,i),(n,m)] = delta_nm."""
    a = np.asarray(a)
    din = int(round(np.sqrt(a.shape[1])))
    dout = int(round(np.sqrt(a.shape[0])))
    a4 = a.reshape(dout, dout, din * din)
    col = np.einsum("iix->x", a4)
    return bool(np.abs(col - np.eye(din).reshape(-1)).max() <= atol)


def is_hermiticity_preserving(a: np.ndarray, atol: float = 1e-10) -> bool:
    """Check conj(A[(i,j),(n,m)]) = A[(j,i),(m,n)]."""
    a = np.asarray(a)
    din = int(round(np.sqrt(a.shape[1])))
    dout = int(round(np.sqrt(a.shape[0])))
    a4 = a.reshape(dout, dout, din, din)
    swapped = a4.transpose(1, 0, 3, 2)
    return bool(np.abs(a4.conj() - swapped).max() <= atol)


@dataclass(frozen=True)
class CptpVerdict:
    ok: bool
    min_choi_eigenvalue: float
    trace_defect: float

    def __bool__(self) -> bool:
        return self.ok


def is_cptp(map_, tol: float = 1e-9) -> CptpVerdict:
    """Choi-PSD plus trace-preservation verdict with witness values."""
    if isinstance(map_, KrausSet):
        a = superop_from_kraus(map_)
        din, dout = map_.input_dim, map_.output_dim
    else:
        a = np.asarray(map_)
        din = int(round(np.sqrt(a.shape[1])))
        dout = int(round(np.sqrt(a.shape[0])))
    choi = choi_from_superop(a, din, dout)
    min_eig = float(np.linalg.eigvalsh(choi).min())
    # partial trace of the Choi matrix over the output factor
    tr_out = np.einsum("nimi->nm", choi.reshape(din, dout, din, dout))
    trace_defect = float(np.abs(tr_out - np.eye(din)).max())
    return CptpVerdict(min_eig >= -tol and trace_defect <= 1e-10, min_eig, trace_defect)


# ---------------------------------------------------------------------------
# one-qubit map

def one_qubit_kraus(f: complex) -> KrausSet:
    """Kraus pair of the single-excitation map with transition amplitude f.

    E_0 = [[1, 0], [0, f]] together with a single leakage operator
    [[0, sqrt(1-|f|^2)], [0, 0]] that stands in for the whole family of
    environment-resolved operators (only the total 1-|f|^2 enters the map).
    """
    f = complex(f)
    rem = 1.0 - abs(f) ** 2
    if rem < -1e-10:
        raise ValueError(f"amplitude modulus {abs(f)} exceeds 1")
    e0 = np.array([[1.0, 0.0], [0.0, f]], dtype=complex)
    e1 = np.array([[0.0, np.sqrt(max(rem, 0.0))], [0.0, 0.0]], dtype=complex)
    return KrausSet((e0, e1))


def network_one_qubit_kraus(network: SpinNetwork, sender: int, receiver: int, t: float) -> KrausSet:
    """Map from one sender site to one receiver site at time t."""
    n = network.n_sites
    if not (0 <= sender < n and 0 <= receiver < n):
        raise ValueError(f"sites ({sender}, {receiver}) out of range for {n} sites")
    table = amplitudes(network, 1, t)
    f = np.conj(vacuum_amplitude(network, t)) * table.site_amplitude(sender, receiver)
    return one_qubit_kraus(f)


def extend_with_identity(ks: KrausSet, side: str = "left") -> KrausSet:
    """Tensor a one-qubit map with the identity map on a second qubit.

    ``side="left"`` puts the identity on the left factor (first qubit).
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    eye = np.eye(2, dtype=complex)
    if side == "left":
        ops = tuple(np.kron(eye, op) for op in ks.operators)
    else:
        ops = tuple(np.kron(op, eye) for op in ks.operators)
    return KrausSet(ops, complete=ks.complete)


def tensor_map(m1: KrausSet, m2: KrausSet) -> KrausSet:
    """Kronecker composition of two maps acting on independent systems."""
    ops = tuple(np.kron(a, b) for a in m1.operators for b in m2.operators)
    return KrausSet(ops, complete=m1.complete and m2.complete)


# ---------------------------------------------------------------------------
# two-qubit map

def _check_pair(pair, n: int, label: str):
    a, b = pair
    if a == b:
        raise ValueError(f"{label} sites must be distinct, got {pair}")
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError(f"{label} sites {pair} out of range for {n} sites")


def two_qubit_kraus(
    k1: AmplitudeTable,
    k2: AmplitudeTable,
    senders,
    receivers,
    vacuum_amp: complex = 1.0,
) -> KrausSet:
    """Kraus operators of the two-qubit map from sender pair to receiver pair.

    ``senders=(i, j)`` and ``receivers=(n, m)`` assign network sites to the
    first/second qubit of the 4-dimensional input/output space in the order
    given; the pairs may coincide (storage) or overlap.  The set contains the
    4x4 block-diagonal E_0, one E_1^k for every site k outside the receiver
    pair (one excitation left in the environment) and one E_2^{kl} for every
    environment pair (both excitations lost).
    """
    n_sites = k1.sector.n_sites
    if k2.sector.n_sites != n_sites:
        raise ValueError("amplitude tables belong to different networks")
    if k1.sector.excitation_count != 1 or k2.sector.excitation_count != 2:
        raise ValueError("two_qubit_kraus needs a k=1 and a k=2 table")
    if k1.time != k2.time:
        raise ValueError(f"amplitude tables at different times: {k1.time} vs {k2.time}")
    _check_pair(senders, n_sites, "sender")
    _check_pair(receivers, n_sites, "receiver")
    i, j = senders
    n, m = receivers
    gauge = np.conj(complex(vacuum_amp))

    def f1(src, tgt):
        return gauge * k1.amplitude((src,), (tgt,))

    def f2(tgt_a, tgt_b):
        return gauge * k2.amplitude(tuple(sorted((i, j))), tuple(sorted((tgt_a, tgt_b))))

    e0 = np.zeros((4, 4), dtype=complex)
    e0[0, 0] = 1.0
    e0[1, 1] = f1(j, m)
    e0[1, 2] = f1(i, m)
    e0[2, 1] = f1(j, n)
    e0[2, 2] = f1(i, n)
    e0[3, 3] = f2(n, m)
    ops = [e0]
    environment = [k for k in range(n_sites) if k not in (n, m)]
    for k in environment:
        e1 = np.zeros((4, 4), dtype=complex)
        e1[0, 1] = f1(j, k)
        e1[0, 2] = f1(i, k)
        e1[1, 3] = f2(k, m)
        e1[2, 3] = f2(n, k)
        ops.append(e1)
    for k, l in itertools.combinations(environment, 2):
        e2 = np.zeros((4, 4), dtype=complex)
        e2[0, 3] = f2(k, l)
        ops.append(e2)
    return KrausSet(tuple(ops))


def network_two_qubit_kraus(network: SpinNetwork, senders, receivers, t: float) -> KrausSet:
    k1 = amplitudes(network, 1, t)
    k2 = amplitudes(network, 2, t)
    return two_qubit_kraus(k1, k2, senders, receivers, vacuum_amplitude(network, t))


def two_qubit_map_elements(
    k1: AmplitudeTable,
    k2: AmplitudeTable,
    senders,
    receivers,
    vacuum_amp: complex = 1.0,
) -> np.ndarray:
    """Closed-form 16x16 superoperator of the two-qubit map, element by element.

    Independent of :func:`two_qubit_kraus`: every element is written out from
    the transition-amplitude tables, with environment sums running over all
    sites (or site pairs) outside the receiver pair.  Must agree with the
    Kraus-built superoperator to 1e-10.
    """
    n_sites = k1.sector.n_sites
    _check_pair(senders, n_sites, "sender")
    _check_pair(receivers, n_sites, "receiver")
    i, j = senders
    n, m = receivers
    gauge = np.conj(complex(vacuum_amp))

    def f1(src, tgt):
        return gauge * k1.amplitude((src,), (tgt,))

    def f2(tgt_a, tgt_b):
        return gauge * k2.amplitude(tuple(sorted((i, j))), tuple(sorted((tgt_a, tgt_b))))

    env = [k for k in range(n_sites) if k not in (n, m)]
    env_pairs = list(itertools.combinations(env, 2))
    c = np.conj

    a = np.zeros((16, 16), dtype=complex)

    def put(out_pair, in_pair, value):
        a[4 * out_pair[0] + out_pair[1], 4 * in_pair[0] + in_pair[1]] = value

    put((0, 0), (0, 0), 1.0)
    put((0, 0), (1, 1), sum(abs(f1(j, k)) ** 2 for k in env))
    put((0, 0), (1, 2), sum(f1(j, k) * c(f1(i, k)) for k in env))
    put((0, 0), (2, 1), sum(f1(i, k) * c(f1(j, k)) for k in env))
    put((0, 0), (2, 2), sum(abs(f1(i, k)) ** 2 for k in env))
    put((0, 0), (3, 3), sum(abs(f2(k, l)) ** 2 for k, l in env_pairs))

    put((0, 1), (0, 1), c(f1(j, m)))
    put((0, 1), (0, 2), c(f1(i, m)))
    put((0, 1), (1, 3), sum(f1(j, k) * c(f2(k, m)) for k in env))
    put((0, 1), (2, 3), sum(f1(i, k) * c(f2(k, m)) for k in env))

    put((0, 2), (0, 1), c(f1(j, n)))
    put((0, 2), (0, 2), c(f1(i, n)))
    put((0, 2), (1, 3), sum(f1(j, k) * c(f2(n, k)) for k in env))
    put((0, 2), (2, 3), sum(f1(i, k) * c(f2(n, k)) for k in env))

    put((0, 3), (0, 3), c(f2(n, m)))

    put((1, 0), (1, 0), f1(j, m))
    put((1, 0), (2, 0), f1(i, m))
    put((1, 0), (3, 1), sum(f2(k, m) * c(f1(j, k)) for k in env))
    put((1, 0), (3, 2), sum(f2(k, m) * c(f1(i, k)) for k in env))

    put((1, 1), (1, 1), abs(f1(j, m)) ** 2)
    put((1, 1), (1, 2), f1(j, m) * c(f1(i, m)))
    put((1, 1), (2, 1), f1(i, m) * c(f1(j, m)))
    put((1, 1), (2, 2), abs(f1(i, m)) ** 2)
    put((1, 1), (3, 3), sum(abs(f2(k, m)) ** 2 for k in env))

    put((1, 2), (1, 1), f1(j, m) * c(f1(j, n)))
    put((1, 2), (1, 2), f1(j, m) * c(f1(i, n)))
    put((1, 2), (2, 1), f1(i, m) * c(f1(j, n)))
    put((1, 2), (2, 2), f1(i, m) * c(f1(i, n)))
    put((1, 2), (3, 3), sum(f2(k, m) * c(f2(n, k)) for k in env))

    put((1, 3), (1, 3), f1(j, m) * c(f2(n, m)))
    put((1, 3), (2, 3), f1(i, m) * c(f2(n, m)))

    put((2, 0), (1, 0), f1(j, n))
    put((2, 0), (2, 0), f1(i, n))
    put((2, 0), (3, 1), sum(f2(n, k) * c(f1(j, k)) for k in env))
    put((2, 0), (3, 2), sum(f2(n, k) * c(f1(i, k)) for k in env))

    put((2, 1), (1, 1), f1(j, n) * c(f1(j, m)))
    put((2, 1), (1, 2), f1(j, n) * c(f1(i, m)))
    put((2, 1), (2, 1), f1(i, n) * c(f1(j, m)))
    put((2, 1), (2, 2), f1(i, n) * c(f1(i, m)))
    put((2, 1), (3, 3), sum(f2(n, k) * c(f2(k, m)) for k in env))

    put((2, 2), (1, 1), abs(f1(j, n)) ** 2)
    put((2, 2), (1, 2), f1(j, n) * c(f1(i, n)))
    put((2, 2), (2, 1), f1(i, n) * c(f1(j, n)))
    put((2, 2), (2, 2), abs(f1(i, n)) ** 2)
    put((2, 2), (3, 3), sum(abs(f2(n, k)) ** 2 for k in env))

    put((2, 3), (1, 3), f1(j, n) * c(f2(n, m)))
    put((2, 3), (2, 3), f1(i, n) * c(f2(n, m)))

    put((3, 0), (3, 0), f2(n, m))
    put((3, 1), (3, 1), f2(n, m) * c(f1(j, m)))
    put((3, 1), (3, 2), f2(n, m) * c(f1(i, m)))
    put((3, 2), (3, 1), f2(n, m) * c(f1(j, n)))
    put((3, 2), (3, 2), f2(n, m) * c(f1(i, n)))
    put((3, 3), (3, 3), abs(f2(n, m)) ** 2)

    return a


def two_qubit_sparsity_pattern() -> np.ndarray:
    """Boolean 16x16 mask of superoperator elements a U(1) network can populate.

    An element A[(i,j),(n,m)] survives only if the excitation counts satisfy
    w(n) - w(i) = w(m) - w(j) >= 0, i.e. both bra and ket lose the same number
    of excitations to the environment.
    """
    w = np.array([0, 1, 1, 2])
    mask = np.zeros((16, 16), dtype=bool)
    for i in range(4):
        for j in range(4):
            for n in range(4):
                for m in range(4):
                    d = w[n] - w[i]
                    mask[4 * i + j, 4 * n + m] = d == w[m] - w[j] and d >= 0
    return mask


# ---------------------------------------------------------------------------
# closed-form reference matrices
#
# These reference matrices carry the conjugate-amplitude convention (each is
# the elementwise conjugate of the superoperator the Kraus construction
# yields, a consequence of pairing the input indices the transposed way), so
# for any amplitude f:
#   superop_from_kraus(one_qubit_kraus(f)) == one_qubit_transfer_matrix(conj(f)).

def one_qubit_transfer_matrix(f: complex) -> np.ndarray:
    """Reference 4x4 matrix of the single-excitation map (conjugate convention)."""
    f = complex(f)
    r = 1.0 - abs(f) ** 2
    return np.array(
        [
            [1, 0, 0, r],
            [0, f, 0, 0],
            [0, 0, np.conj(f), 0],
            [0, 0, 0, abs(f) ** 2],
        ],
        dtype=complex,
    )


def distributed_pair_matrix(f: complex) -> np.ndarray:
    """Reference 16x16 matrix of identity (x) single-excitation map (conjugate convention)."""
    f = complex(f)
    r = 1.0 - abs(f) ** 2
    fc = np.conj(f)
    f2 = abs(f) ** 2
    a = np.zeros((16, 16), dtype=complex)
    a[0, 0] = 1
    a[0, 5] = r
    a[1, 1] = f
    a[2, 2] = 1
    a[2, 7] = r
    a[3, 3] = f
    a[4, 4] = fc
    a[5, 5] = f2
    a[6, 6] = fc
    a[7, 7] = f2
    a[8, 8] = 1
    a[8, 13] = r
    a[9, 9] = f
    a[10, 10] = 1
    a[10, 15] = r
    a[11, 11] = f
    a[12, 12] = fc
    a[13, 13] = f2
    a[14, 14] = fc
    a[15, 15] = f2
    return a


def dual_rail_matrix(f: complex, g: complex) -> np.ndarray:
    """Reference 16x16 matrix of two parallel single-excitation maps (conjugate convention).

    f is the amplitude of the map on the first qubit, g on the second.
    """
    f, g = complex(f), complex(g)
    rf = 1.0 - abs(f) ** 2
    rg = 1.0 - abs(g) ** 2
    fc, gc = np.conj(f), np.conj(g)
    f2, g2 = abs(f) ** 2, abs(g) ** 2
    a = np.zeros((16, 16), dtype=complex)
    a[0, 0] = 1
    a[0, 5] = rg
    a[0, 10] = rf
    a[0, 15] = rf * rg
    a[1, 1] = g
    a[1, 11] = g * rf
    a[2, 2] = f
    a[2, 7] = f * rg
    a[3, 3] = f * g
    a[4, 4] = gc
    a[4, 14] = rf * gc
    a[5, 5] = g2
    a[5, 15] = rf * g2
    a[6, 6] = f * gc
    a[7, 7] = f * g2
    a[8, 8] = fc
    a[8, 13] = rg * fc
    a[9, 9] = g * fc
    a[10, 10] = f2
    a[10, 15] = f2 * rg
    a[11, 11] = g * f2
    a[12, 12] = fc * gc
    a[13, 13] = g2 * fc
    a[14, 14] = f2 * gc
    a[15, 15] = f2 * g2
    return a
