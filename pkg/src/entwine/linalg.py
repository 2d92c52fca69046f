"""Dense complex linear algebra kernel.

Matrices are plain ``numpy.ndarray`` values with ``complex128`` entries;
everything here is a pure function of its inputs.  The solver behind
:func:`hermitian_eigen` is LAPACK's Hermitian eigensolver (via
``numpy.linalg.eigh``); the contract is the residual and orthonormality
bounds below, not the method.

Conventions
-----------
* Eigenvalues are returned sorted ascending.
* Eigenvector phase: the first component of each column with magnitude
  above 1e-8 is made real and positive, so outputs are reproducible.
* Numerically degenerate eigenvalues are grouped into clusters with
  tolerance ``1e-8 * max(1, ||M||_F)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NonCommuting, NotHermitian

#: Hermiticity check: max|M - M^dag| <= HERMITICITY_TOL * max(1, ||M||_F)
HERMITICITY_TOL = 1e-12

#: eigenvalue clustering: gaps below CLUSTER_TOL * max(1, ||M||_F) merge
CLUSTER_TOL = 1e-8

#: first eigenvector component larger than this sets the phase
PHASE_EPS = 1e-8

#: pairwise commutator bound for simultaneous diagonalization
COMMUTE_TOL = 1e-10


def as_matrix(m) -> np.ndarray:
    """Coerce to a 2-d complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got ndim={a.ndim}")
    return a


def frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def hermiticity_residual(m: np.ndarray) -> float:
    """max |M - M^dag|, the deviation from being self-adjoint."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def require_hermitian(m: np.ndarray, what: str = "matrix") -> np.ndarray:
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise NotHermitian(f"{what} is not square: shape {m.shape}")
    scale = max(1.0, frobenius(m))
    res = hermiticity_residual(m)
    if res > HERMITICITY_TOL * scale:
        raise NotHermitian(f"{what} is not Hermitian: max|M - M^dag| = {res:.3e}")
    return m


@dataclass(frozen=True)
class EigenSystem:
    """Spectral decomposition of a Hermitian matrix.

    ``eigenvalues`` are ascending; column ``k`` of ``eigenvectors`` pairs
    with ``eigenvalues[k]``.  ``cluster_boundaries`` are fence posts
    ``(0, ..., n)``: cluster ``j`` spans columns
    ``cluster_boundaries[j]:cluster_boundaries[j+1]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    cluster_boundaries: tuple[int, ...]

    @property
    def n_clusters(self) -> int:
        return len(self.cluster_boundaries) - 1

    def clusters(self) -> list[tuple[int, int]]:
        b = self.cluster_boundaries
        return [(b[j], b[j + 1]) for j in range(len(b) - 1)]

    def cluster_value(self, j: int) -> float:
        """Representative eigenvalue (mean) of cluster j."""
        lo, hi = self.cluster_boundaries[j], self.cluster_boundaries[j + 1]
        return float(np.mean(self.eigenvalues[lo:hi]))

    def cluster_basis(self, j: int) -> np.ndarray:
        """Orthonormal columns spanning cluster j's eigenspace."""
        lo, hi = self.cluster_boundaries[j], self.cluster_boundaries[j + 1]
        return self.eigenvectors[:, lo:hi]


def fix_phases(vectors: np.ndarray, eps: float = PHASE_EPS) -> np.ndarray:
    """Rotate each column so its first component above ``eps`` is real positive."""
    out = vectors.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        idx = np.flatnonzero(np.abs(col) > eps)
        if idx.size:
            pivot = col[idx[0]]
            out[:, k] = col * (np.conj(pivot) / abs(pivot))
    return out


def cluster_indices(values: np.ndarray, tol: float) -> tuple[int, ...]:
    """Fence posts grouping ascending ``values`` whenever the gap exceeds ``tol``."""
    n = len(values)
    if n == 0:
        return (0,)
    bounds = [0]
    for i in range(1, n):
        if values[i] - values[i - 1] > tol:
            bounds.append(i)
    bounds.append(n)
    return tuple(bounds)


def hermitian_eigen(m, cluster_tol: float | None = None) -> EigenSystem:
    """Eigendecompose a Hermitian matrix.

    Guarantees, with ``s = max(1, ||M||_F)``:

    * ``||M v_k - lam_k v_k|| <= 1e-10 * s`` for every k,
    * ``|v_j^dag v_k - delta_jk| <= 1e-10``,
    * clusters separated by gaps above ``cluster_tol`` (default
      ``1e-8 * s``).

    Raises ``NotHermitian`` for non-Hermitian input and ``NoConvergence``
    if the underlying iteration fails (LAPACK's internal sweep cap).
    """
    m = require_hermitian(m)
    scale = max(1.0, frobenius(m))
    try:
        values, vectors = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - hard to trigger
        raise NoConvergence(f"eigensolver did not converge: {exc}") from exc
    vectors = fix_phases(vectors)
    if cluster_tol is None:
        cluster_tol = CLUSTER_TOL * scale
    bounds = cluster_indices(values, cluster_tol)
    return EigenSystem(values, vectors, bounds)


def commutator(a, b) -> np.ndarray:
    """AB - BA for square matrices of equal size."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[0] != a.shape[1] or b.shape[0] != b.shape[1]:
        raise DimensionMismatch("commutator needs square matrices")
    if a.shape != b.shape:
        raise DimensionMismatch(f"size mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def kron(a, b) -> np.ndarray:
    """Kronecker product, size (rA*rB) x (cA*cB)."""
    return np.kron(as_matrix(a), as_matrix(b))


def unitary_exp(h, theta: float) -> np.ndarray:
    """exp(-i * theta * H) for Hermitian H, via spectral decomposition.

    The result satisfies ``||U^dag U - I||_F <= 1e-12``.
    """
    eig = hermitian_eigen(h)
    phases = np.exp(-1j * theta * eig.eigenvalues)
    v = eig.eigenvectors
    return (v * phases) @ v.conj().T


def commutation_scale(a: np.ndarray, b: np.ndarray) -> float:
    return max(1.0, frobenius(a) * frobenius(b))


def simultaneous_eigenbasis(
    h_list, tol: float = COMMUTE_TOL
) -> tuple[list[tuple[float, ...]], np.ndarray]:
    """Common eigenbasis of mutually commuting Hermitian matrices.

    Returns ``(weights, basis)`` where column ``j`` of ``basis`` is an
    eigenvector of every input and ``weights[j]`` collects its eigenvalue
    under each input, in order.  Works by recursive refinement:
    diagonalize the first operator, then the second restricted to each
    degenerate cluster, and so on.

    Raises ``NonCommuting`` if any pair fails
    ``max|[H_i, H_j]| <= tol * max(1, ||H_i||_F ||H_j||_F)``.
    """
    mats = [require_hermitian(h, f"operator {i}") for i, h in enumerate(h_list)]
    if not mats:
        raise DimensionMismatch("need at least one operator")
    n = mats[0].shape[0]
    for m in mats:
        if m.shape[0] != n:
            raise DimensionMismatch("operators must share one size")
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            res = float(np.max(np.abs(commutator(mats[i], mats[j]))))
            if res > tol * commutation_scale(mats[i], mats[j]):
                raise NonCommuting(
                    f"operators {i} and {j} do not commute: max|[A,B]| = {res:.3e}"
                )

    # each entry: (accumulated weights, isometry from subspace into C^n)
    blocks: list[tuple[tuple[float, ...], np.ndarray]] = [((), np.eye(n, dtype=np.complex128))]
    for h in mats:
        refined = []
        for weights, iso in blocks:
            sub = iso.conj().T @ h @ iso
            sub = (sub + sub.conj().T) / 2
            eig = hermitian_eigen(sub, cluster_tol=CLUSTER_TOL * max(1.0, frobenius(h)))
            for j in range(eig.n_clusters):
                refined.append(
                    (weights + (eig.cluster_value(j),), iso @ eig.cluster_basis(j))
                )
        blocks = refined

    weights_out: list[tuple[float, ...]] = []
    columns = []
    for weights, iso in blocks:
        for k in range(iso.shape[1]):
            weights_out.append(weights)
            columns.append(iso[:, k])
    basis = fix_phases(np.stack(columns, axis=1))
    return weights_out, basis
