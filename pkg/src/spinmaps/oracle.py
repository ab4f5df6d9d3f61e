"""Brute-force dense evolution of the full 2^N network as ground truth.

Site 0 occupies the leftmost (most significant) position of the basis
bitstring; bit value 1 marks an excited spin (sigma^z = +1).
"""

from __future__ import annotations

import numpy as np

from .maps import assert_density_matrix, partial_trace
from .network import SpinNetwork, basis_index

MAX_SITES = 14


def full_hamiltonian(network: SpinNetwork) -> np.ndarray:
    """Dense 2^N Hamiltonian assembled from the network couplings."""
    n = network.n_sites
    if n > MAX_SITES:
        raise ValueError(f"{n} sites exceeds the dense-evolution cap of {MAX_SITES}")
    dim = 1 << n
    shifts = n - 1 - np.arange(n)
    bits = (np.arange(dim)[:, None] >> shifts) & 1
    s = 2.0 * bits - 1.0
    diag = s @ network.fields + 0.5 * np.einsum("bi,ij,bj->b", s, network.zz, s)
    h = np.diag(diag.astype(complex))
    states = np.arange(dim)
    for i in range(n):
        for j in range(i + 1, n):
            if network.xy[i, j] == 0.0:
                continue
            movable = (bits[:, i] == 1) & (bits[:, j] == 0)
            src = states[movable]
            dst = src - (1 << (n - 1 - i)) + (1 << (n - 1 - j))
            h[dst, src] += 2.0 * network.xy[i, j]
            h[src, dst] += 2.0 * network.xy[i, j]
    return h


class FullPropagator:
    """Eigendecomposed full-space propagator, reusable across times."""

    def __init__(self, network: SpinNetwork):
        self.network = network
        self.eigvals, self.eigvecs = np.linalg.eigh(full_hamiltonian(network))

    def unitary(self, t: float) -> np.ndarray:
        phases = np.exp(-1j * self.eigvals * t)
        return (self.eigvecs * phases) @ self.eigvecs.conj().T

    def evolve(self, state: np.ndarray, t: float) -> np.ndarray:
        """Evolve a state vector or density matrix by time t."""
        u = self.unitary(t)
        state = np.asarray(state, dtype=complex)
        if state.ndim == 1:
            return u @ state
        return u @ state @ u.conj().T


def full_evolve(network: SpinNetwork, state: np.ndarray, t: float) -> np.ndarray:
    """One-shot evolution of a vector or density matrix of the whole network."""
    return FullPropagator(network).evolve(state, t)


def initial_density(network: SpinNetwork, rho_s: np.ndarray, sender_sites) -> np.ndarray:
    """Embed a sender state into the network with the rest fully polarised."""
    sender_sites = list(sender_sites)
    n = network.n_sites
    if len(set(sender_sites)) != len(sender_sites):
        raise ValueError(f"sender sites {sender_sites} contain duplicates")
    if any(not 0 <= s < n for s in sender_sites):
        raise ValueError(f"sender sites {sender_sites} out of range for {n} sites")
    k = len(sender_sites)
    rho_s = np.asarray(rho_s, dtype=complex)
    if rho_s.shape != (2**k, 2**k):
        raise ValueError(f"sender state shape {rho_s.shape} does not match {k} sites")
    dim = 1 << n
    sigma = np.zeros((dim, dim), dtype=complex)
    embed = []
    for a in range(2**k):
        occupied = [site for q, site in enumerate(sender_sites) if (a >> (k - 1 - q)) & 1]
        embed.append(basis_index(occupied, n))
    sigma[np.ix_(embed, embed)] = rho_s
    return sigma


def reduced_output(
    network: SpinNetwork,
    rho_s: np.ndarray,
    sender_sites,
    receiver_sites,
    t: float,
    propagator: FullPropagator | None = None,
) -> np.ndarray:
    """Exact reduced state on the receiver sites after full evolution.

    The sender state is placed on ``sender_sites`` (in the given qubit order),
    every other spin starts in |0>, the whole network evolves for time t, and
    all sites except ``receiver_sites`` are traced out (receiver qubit order
    follows the given site order).
    """
    receiver_sites = list(receiver_sites)
    if len(set(receiver_sites)) != len(receiver_sites):
        raise ValueError(f"receiver sites {receiver_sites} contain duplicates")
    sigma0 = initial_density(network, rho_s, sender_sites)
    prop = propagator or FullPropagator(network)
    sigma_t = prop.evolve(sigma0, t)
    out = partial_trace(sigma_t, receiver_sites, [2] * network.n_sites)
    assert_density_matrix(out, atol=1e-8, eig_floor=-1e-8)
    return out


def magnetization_expectation(state: np.ndarray) -> float:
    """Expectation of the total sigma^z for a vector or density-matrix state."""
    state = np.asarray(state)
    dim = state.shape[0]
    n = dim.bit_length() - 1
    if 1 << n != dim:
        raise ValueError(f"state dimension {dim} is not a power of 2")
    weights = np.array([2 * bin(b).count("1") - n for b in range(dim)], dtype=float)
    if state.ndim == 1:
        return float(weights @ (np.abs(state) ** 2))
    return float(weights @ np.diag(state).real)
