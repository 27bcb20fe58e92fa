"""Tensor-product representations of bipartite correlations.

A representation consists of Hermitian observables M_i, N_j with spectra
in [-1, 1] and a state (unit vector psi in C^{d^2}, or a unit-trace psd
density matrix); the realized block has entries Tr((M_i (x) N_j) rho).
Any unit-vector system for a bipartite block yields a representation on
the maximally entangled state with local dimension 2^floor(r/2), r the
span dimension of the system, and rank-one representations reduce to a
diagonal Schmidt state without changing the correlations or growing the
local dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import gamma_generators, gamma_of_vector
from .elliptope import CSystem
from .errors import (
    CSystemMismatchError,
    InvariantViolationError,
    NonUnitVectorError,
    NotPsdError,
    NotRankOneError,
    ShapeError,
)
from .factorization import MatrixFactorization
from .linalg import (
    DEFAULT_TOL,
    SchmidtDecomposition,
    ToleranceConfig,
    as_matrix,
    numerical_rank,
    require_hermitian,
    schmidt,
    sorted_eigh,
    vec_inv,
)


@dataclass(frozen=True)
class TensorProductRep:
    """Observables plus a shared state; exactly one of psi or rho is set.

    alice_obs has shape (n, d, d) and bob_obs (m, d, d); psi is a vector of
    length d^2, rho a d^2 x d^2 density matrix.  States are kept as vectors
    whenever possible; the density matrix is materialized on demand.
    """

    alice_obs: np.ndarray
    bob_obs: np.ndarray
    psi: np.ndarray | None = None
    rho: np.ndarray | None = None

    def __post_init__(self) -> None:
        alice = np.asarray(self.alice_obs, dtype=complex)
        bob = np.asarray(self.bob_obs, dtype=complex)
        if alice.ndim != 3 or bob.ndim != 3 or alice.shape[1:] != bob.shape[1:]:
            raise ShapeError("observables must be stacks of equal-size square matrices")
        if alice.shape[1] != alice.shape[2]:
            raise ShapeError("observables must be square")
        d = alice.shape[1]
        if (self.psi is None) == (self.rho is None):
            raise ShapeError("exactly one of psi or rho must be provided")
        object.__setattr__(self, "alice_obs", alice)
        object.__setattr__(self, "bob_obs", bob)
        if self.psi is not None:
            psi = np.asarray(self.psi, dtype=complex).reshape(-1)
            if psi.size != d * d:
                raise ShapeError(f"state vector length {psi.size} does not match d^2 = {d * d}")
            object.__setattr__(self, "psi", psi)
        else:
            rho = np.asarray(self.rho, dtype=complex)
            if rho.shape != (d * d, d * d):
                raise ShapeError(f"density shape {rho.shape} does not match {(d * d, d * d)}")
            object.__setattr__(self, "rho", rho)

    @property
    def local_dim(self) -> int:
        return int(self.alice_obs.shape[1])

    @property
    def sizes(self) -> tuple[int, int]:
        return int(self.alice_obs.shape[0]), int(self.bob_obs.shape[0])

    def density(self) -> np.ndarray:
        if self.rho is not None:
            return self.rho
        return np.outer(self.psi, self.psi.conj())


@dataclass(frozen=True)
class SchmidtState:
    """Schmidt profile of a rank-one state: positive descending coefficients
    with squares summing to one; local_dim counts the nonzero terms."""

    local_dim: int
    coefficients: np.ndarray


def maximally_entangled(d: int) -> np.ndarray:
    """Unit vector d^{-1/2} sum_i e_i (x) e_i; all Schmidt coefficients equal.

    Satisfies psi^* (A (x) B) psi = Tr(A B^T) / d for all d x d matrices.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return np.eye(d, dtype=complex).reshape(-1) / np.sqrt(d)


def build_tensor_rep(c, sys: CSystem, tol: ToleranceConfig = DEFAULT_TOL) -> TensorProductRep:
    """Representation of a bipartite block from a unit-vector system.

    The system's vectors are expressed in an orthonormal basis of their
    common span (dimension r); the observables are G(u_i) and G(v_j)^T for
    the rank-r generator family, and the state is the maximally entangled
    vector at local dimension 2^floor(r/2).
    """
    block = as_matrix(c, "bipartite block")
    rows, cols = sys.row_vectors, sys.col_vectors
    if block.shape != (rows.shape[0], cols.shape[0]):
        raise ShapeError(
            f"block shape {block.shape} does not match system {(rows.shape[0], cols.shape[0])}"
        )
    stacked = np.vstack([rows, cols])
    norm_dev = float(np.max(np.abs(np.linalg.norm(stacked, axis=1) - 1.0)))
    if norm_dev > tol.eq_tol:
        raise NonUnitVectorError(f"system vectors must be unit, worst deviation {norm_dev:.3e}")
    entry_dev = float(np.max(np.abs(block - rows @ cols.T), initial=0.0))
    if entry_dev > tol.eq_tol:
        raise CSystemMismatchError(f"system misses the block by {entry_dev:.3e}")

    _, svals, vh = np.linalg.svd(stacked)
    r = int(np.count_nonzero(svals > tol.rank_tol * svals[0]))
    basis = vh[:r]
    row_coords = rows @ basis.T
    col_coords = cols @ basis.T

    rep = gamma_generators(r)
    alice = np.stack([gamma_of_vector(rep, u) for u in row_coords])
    bob = np.stack([gamma_of_vector(rep, v).T for v in col_coords])
    return TensorProductRep(alice, bob, psi=maximally_entangled(rep.rep_dim))


def eval_correlations(rep: TensorProductRep, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Realized block: entry (i, j) is Tr((M_i (x) N_j) rho).

    For vector states the contraction Tr(M W N^T W^*) with W = vec_inv(psi)
    avoids materializing the d^2 x d^2 product.  The real part is returned;
    an imaginary residue above eq_tol raises, since Hermitian observables
    against a Hermitian state give real values analytically.
    """
    n, m = rep.sizes
    out = np.empty((n, m))
    residue = 0.0
    if rep.psi is not None:
        norm_dev = abs(float(np.linalg.norm(rep.psi)) - 1.0)
        if norm_dev > tol.eq_tol:
            raise InvariantViolationError(f"state norm deviates from one by {norm_dev:.3e}")
        w = vec_inv(rep.psi, rep.local_dim)
        wc = w.conj().T
        for i in range(n):
            left = rep.alice_obs[i] @ w
            for j in range(m):
                val = complex(np.trace(left @ rep.bob_obs[j].T @ wc))
                residue = max(residue, abs(val.imag))
                out[i, j] = val.real
    else:
        rho = rep.rho
        trace_dev = abs(complex(np.trace(rho)).real - 1.0)
        if trace_dev > tol.eq_tol:
            raise InvariantViolationError(f"state trace deviates from one by {trace_dev:.3e}")
        for i in range(n):
            for j in range(m):
                val = complex(np.trace(np.kron(rep.alice_obs[i], rep.bob_obs[j]) @ rho))
                residue = max(residue, abs(val.imag))
                out[i, j] = val.real
    if residue > tol.eq_tol:
        raise InvariantViolationError(f"imaginary residue {residue:.3e} exceeds eq_tol")
    return out


def _rank_one_vector(rep: TensorProductRep, tol: ToleranceConfig) -> np.ndarray:
    if rep.psi is not None:
        return rep.psi
    rho = require_hermitian(rep.rho, tol, what="state")
    if numerical_rank(rho, tol) != 1:
        raise NotRankOneError("state has numerical rank above one")
    w, u = sorted_eigh(rho)
    return u[:, 0] * np.sqrt(max(w[0], 0.0))


def reduce_rank_one_rep(rep: TensorProductRep, tol: ToleranceConfig = DEFAULT_TOL) -> TensorProductRep:
    """Compress a rank-one representation to its diagonal Schmidt form.

    The state becomes sum_k c_k e_k (x) e_k with descending positive c_k and
    the observables are conjugated by the isometries onto the Schmidt bases.
    Correlations are unchanged and the local dimension never grows; spectra
    stay within [-1, 1] because compressions of contractions are
    contractions.
    """
    phi = _rank_one_vector(rep, tol)
    d_in = rep.local_dim
    sd: SchmidtDecomposition = schmidt(phi, d_in, tol)
    if sd.coefficients.size == 0:
        raise NotRankOneError("state vector is numerically zero")
    left_iso = sd.left_vectors.conj()
    right_iso = sd.right_vectors.conj()
    alice = np.stack([left_iso @ m @ left_iso.conj().T for m in rep.alice_obs])
    bob = np.stack([right_iso @ nmat @ right_iso.conj().T for nmat in rep.bob_obs])
    psi = np.diag(sd.coefficients.astype(complex)).reshape(-1)
    return TensorProductRep(alice, bob, psi=psi)


def schmidt_state(rep: TensorProductRep, tol: ToleranceConfig = DEFAULT_TOL) -> SchmidtState:
    """Schmidt profile of the representation's rank-one state."""
    phi = _rank_one_vector(rep, tol)
    sd = schmidt(phi, rep.local_dim, tol)
    return SchmidtState(int(sd.coefficients.size), sd.coefficients)


def check_observable(h, tol: ToleranceConfig = DEFAULT_TOL) -> tuple[bool, float]:
    """Whether all eigenvalues lie in [-1, 1] up to psd_tol; also returns the
    largest eigenvalue magnitude."""
    a = require_hermitian(h, tol, what="observable")
    w = np.linalg.eigvalsh((a + a.conj().T) / 2.0)
    top = float(np.max(np.abs(w))) if w.size else 0.0
    return top <= 1.0 + tol.psd_tol, top


def to_matrix_factorization(rep: TensorProductRep, tol: ToleranceConfig = DEFAULT_TOL) -> MatrixFactorization:
    """Bridge a rank-one representation to a weighted factorization.

    With W = vec_inv(psi) Hermitian positive definite, the triple
    (X_i = M_i, Y_j = N_j^T, K = W) satisfies
    c_ij = <K X_i, Y_j K>, so the factorization verifiers apply directly.
    Representations produced by build_tensor_rep or reduce_rank_one_rep have
    this form.
    """
    if rep.psi is None:
        raise NotRankOneError("bridge needs a vector state; reduce the representation first")
    w = vec_inv(rep.psi, rep.local_dim)
    k = require_hermitian(w, tol, what="weight")
    eigs = np.linalg.eigvalsh((k + k.conj().T) / 2.0)
    if eigs[0] <= tol.psd_tol:
        raise NotPsdError(f"weight must be positive definite, min eigenvalue {eigs[0]:.3e}")
    trace_dev = abs(float(np.trace(k @ k).real) - 1.0)
    if trace_dev > tol.eq_tol:
        raise InvariantViolationError(f"weight trace norm deviates from one by {trace_dev:.3e}")
    y_mats = np.stack([nmat.T for nmat in rep.bob_obs]) if rep.bob_obs.shape[0] else rep.bob_obs
    return MatrixFactorization(rep.alice_obs.copy(), y_mats, k)
