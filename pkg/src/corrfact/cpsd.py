"""Witness matrices with 2x2 outcome blocks, their psd-factor families, and
dimension lower-bound certificates.

A correlation matrix C of size n induces a 2n x 2n witness: block (i, j)
equals [[1+c_ij, 1-c_ij], [1-c_ij, 1+c_ij]] / 4 with rows inside each
block indexed by outcomes +1 then -1.  Unit Gram factors u_i of C give the
explicit factor family (I + a G(u_i)) / (2 sqrt(d)), a in {+1, -1}, which
realizes every witness entry as a trace inner product.  When C is extreme
of rank r, every psd-factor family for the witness must have size at least
2^floor(r/2); the construction attains that bound for r >= 2 (rank 1 uses
size 2 while the bound is 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .clifford import gamma_generators, gamma_of_vector
from .elliptope import check_extreme, gram_factors, require_correlation
from .errors import (
    InconsistentSumsError,
    InvariantViolationError,
    NonUnitVectorError,
    ShapeError,
    ZeroSumError,
)
from .factorization import MatrixFactorization
from .linalg import DEFAULT_TOL, ToleranceConfig, as_matrix, gram, hs_inner, sorted_eigh
from .report import CheckResult, VerificationReport


@dataclass(frozen=True)
class CpsdFactorization:
    """Hermitian psd factors indexed by (row index, outcome).

    mats has shape (n, 2, d, d); outcome +1 is stored at [:, 0] and outcome
    -1 at [:, 1], matching the witness row convention.
    """

    mats: np.ndarray

    @property
    def n(self) -> int:
        return int(self.mats.shape[0])

    @property
    def dim(self) -> int:
        return int(self.mats.shape[-1])

    def factor(self, i: int, outcome: int) -> np.ndarray:
        if outcome not in (1, -1):
            raise ValueError(f"outcome must be +1 or -1, got {outcome}")
        return self.mats[i, 0 if outcome == 1 else 1]

    def outcome_sums(self) -> np.ndarray:
        return self.mats[:, 0] + self.mats[:, 1]


@dataclass(frozen=True)
class CpsdRankCertificate:
    """Dimension lower bound for psd-factor families of a witness.

    The bound 2^floor(rank/2) applies only when the source correlation
    matrix is extreme; otherwise lower_bound is None.  construction_dim is
    the size of the generator-based factorization actually built, which
    attains the bound for rank >= 2 and is 2 at rank 1.
    """

    rank: int
    is_extreme: bool
    lower_bound: int | None
    construction_dim: int


def build_pc(c, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Assemble the 2n x 2n outcome-block witness of a correlation matrix.

    Row (i, a) maps to index 2i + (0 if a = +1 else 1), zero-based i.  The
    four entries of every block sum to one exactly: the block holds
    (1 + c)/4 and its complement to 1/2, and the complement subtraction is
    exact because the larger of the two lies in [1/4, 1/2].
    """
    a = require_correlation(c, tol)
    plus = (1.0 + a) / 4.0
    minus = (1.0 - a) / 4.0
    hi = np.maximum(plus, minus)
    lo = 0.5 - hi
    plus = np.where(a >= 0.0, hi, lo)
    minus = np.where(a >= 0.0, lo, hi)
    return np.kron(plus, np.eye(2)) + np.kron(minus, np.array([[0.0, 1.0], [1.0, 0.0]]))


def build_cpsd_factorization(
    c,
    *,
    factors=None,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> CpsdFactorization:
    """Generator-based psd-factor family for the witness of c.

    With unit Gram factors u_i of rank r, the factors are
    (I + a G(u_i)) / (2 sqrt(d)) at d = 2^floor(r/2) (d = 2 for r = 1); their
    trace inner products equal (1 + a b c_ij) / 4 entrywise.
    """
    a = require_correlation(c, tol)
    if factors is None:
        u = gram_factors(a, tol)
    else:
        u = np.asarray(factors, dtype=float)
        if u.ndim != 2 or u.shape[0] != a.shape[0]:
            raise ShapeError(f"expected {a.shape[0]} factor rows, got shape {u.shape}")
        dev = float(np.max(np.abs(gram(u) - a)))
        if dev > max(tol.eq_tol, 1e-12):
            raise InvariantViolationError(f"supplied factors miss the matrix by {dev:.3e}")
    norm_dev = float(np.max(np.abs(np.linalg.norm(u, axis=1) - 1.0)))
    if norm_dev > tol.eq_tol:
        raise NonUnitVectorError(f"factor rows must be unit vectors, worst deviation {norm_dev:.3e}")
    rep = gamma_generators(u.shape[1])
    d = rep.rep_dim
    eye = np.eye(d, dtype=complex)
    scale = 1.0 / (2.0 * math.sqrt(d))
    mats = np.empty((a.shape[0], 2, d, d), dtype=complex)
    for i, row in enumerate(u):
        g = gamma_of_vector(rep, row)
        mats[i, 0] = (eye + g) * scale
        mats[i, 1] = (eye - g) * scale
    return CpsdFactorization(mats)


def verify_cpsd_factorization(
    p,
    f: CpsdFactorization,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> VerificationReport:
    """Check a psd-factor family against a 2n x 2n witness entrywise.

    Verifies hermiticity and positivity of every factor, the entry identity
    p[(i,a),(j,b)] = Tr(P^i_a P^j_b), consistency of the per-index outcome
    sums, and the normalization Tr(K^2) = 1 of the common sum K.
    """
    mat = as_matrix(p, "witness")
    n = f.n
    if mat.shape != (2 * n, 2 * n):
        raise ShapeError(f"witness shape {mat.shape} does not match family size {(2 * n, 2 * n)}")

    herm_dev = 0.0
    min_eig = math.inf
    for i in range(n):
        for o in range(2):
            factor = f.mats[i, o]
            herm_dev = max(herm_dev, float(np.max(np.abs(factor - factor.conj().T))))
            w = np.linalg.eigvalsh((factor + factor.conj().T) / 2.0)
            min_eig = min(min_eig, float(w[0]))

    entry_dev = 0.0
    for i in range(n):
        for oa in range(2):
            for j in range(n):
                for ob in range(2):
                    target = mat[2 * i + oa, 2 * j + ob]
                    entry_dev = max(entry_dev, abs(hs_inner(f.mats[i, oa], f.mats[j, ob]) - target))

    sums = f.outcome_sums()
    mean_sum = sums.mean(axis=0)
    sum_dev = float(np.max(np.abs(sums - mean_sum), initial=0.0))
    trace_dev = abs(float(np.trace(mean_sum @ mean_sum).real) - 1.0)

    checks = (
        CheckResult("factors_hermitian", herm_dev <= tol.eq_tol, herm_dev),
        CheckResult(
            "factors_psd",
            min_eig >= -tol.psd_tol,
            max(0.0, -min_eig),
            note=f"min eigenvalue {min_eig:.6g}",
        ),
        CheckResult("entry_reconstruction", entry_dev <= tol.eq_tol, float(entry_dev)),
        CheckResult("outcome_sums_consistent", sum_dev <= tol.eq_tol, sum_dev),
        CheckResult("sum_trace_normalized", trace_dev <= tol.eq_tol, trace_dev),
    )
    return VerificationReport(checks)


def certify_lower_bound(c, tol: ToleranceConfig = DEFAULT_TOL) -> CpsdRankCertificate:
    """Dimension lower-bound certificate for the witness of c.

    Runs the extremality rank test; when it passes, every psd-factor family
    of the witness has size at least 2^floor(rank/2).  The certificate also
    records the dimension of the generator construction, which attains the
    bound for rank >= 2.  For non-extreme input no bound is claimed.
    """
    ext = check_extreme(c, tol)
    construction = build_cpsd_factorization(c, tol=tol)
    lower = 2 ** (ext.rank // 2) if ext.is_extreme else None
    return CpsdRankCertificate(ext.rank, ext.is_extreme, lower, construction.dim)


def extract_matrix_factorization(
    f: CpsdFactorization,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> tuple[MatrixFactorization, VerificationReport]:
    """Turn a psd-factor family into a weighted factorization of the doubled completion.

    Procedure: form the common outcome sum K and check it is independent of
    the row index; diagonalize K and restrict every factor to its support
    (this is the size-optimality reduction, applied unconditionally); then
    conjugate by K^{-1/2} and take signed differences
    X_i = P~^i_{+1} - P~^i_{-1}.  Returns the X family used on both sides
    together with the restricted diagonal weight, plus diagnostics: each
    X_i^2 is at most I, with equality exactly when the source correlation
    matrix forces unit factor norms (extreme sources do).
    """
    sums = f.outcome_sums()
    mean_sum = sums.mean(axis=0)
    mean_sum = (mean_sum + mean_sum.conj().T) / 2.0
    sum_dev = float(np.max(np.abs(sums - mean_sum), initial=0.0))
    if sum_dev > tol.eq_tol:
        raise InconsistentSumsError(f"outcome sums differ across indices by {sum_dev:.3e}")

    diag = np.diag(mean_sum)
    if float(np.max(np.abs(mean_sum - np.diag(diag)), initial=0.0)) <= tol.eq_tol:
        # already diagonal: keep the coordinate basis so support restriction
        # literally strips padded rows and columns
        w = diag.real.copy()
        u = np.eye(mean_sum.shape[0], dtype=complex)
        order = np.argsort(-w, kind="stable")
        w = w[order]
        u = u[:, order]
    else:
        w, u = sorted_eigh(mean_sum)
    if w.size == 0 or w[0] <= 0.0:
        raise ZeroSumError("common outcome sum is numerically zero")
    keep = w > tol.rank_tol * w[0]
    lam = w[keep]
    basis = u[:, keep]
    inv_sqrt = 1.0 / np.sqrt(lam)
    scaling = np.outer(inv_sqrt, inv_sqrt)

    n = f.n
    s = lam.size
    eye = np.eye(s)
    x_mats = np.empty((n, s, s), dtype=complex)
    inv_dev = 0.0
    for i in range(n):
        plus = basis.conj().T @ f.mats[i, 0] @ basis * scaling
        minus = basis.conj().T @ f.mats[i, 1] @ basis * scaling
        x = plus - minus
        x = (x + x.conj().T) / 2.0
        x_mats[i] = x
        inv_dev = max(inv_dev, float(np.max(np.abs(x @ x - eye))))

    k_restricted = np.diag(lam.astype(complex))
    trace_dev = abs(float(np.sum(lam**2)) - 1.0)
    checks = (
        CheckResult(
            "involutions",
            inv_dev <= tol.eq_tol,
            inv_dev,
            note="squares strictly below identity indicate a sub-unit factor system",
        ),
        CheckResult("weight_trace_normalized", trace_dev <= tol.eq_tol, trace_dev),
        CheckResult("outcome_sums_consistent", True, sum_dev),
        CheckResult(
            "support_dimension",
            True,
            0.0,
            note=f"restricted {f.dim} -> {s}",
            value=s,
        ),
    )
    mf = MatrixFactorization(x_mats, x_mats.copy(), k_restricted)
    return mf, VerificationReport(checks)
