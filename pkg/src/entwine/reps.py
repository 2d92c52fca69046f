"""Irreducible representations, Casimirs, and tensor-product decomposition.

Reducible representations are split spectrally: invariant blocks are the
eigenspaces of a generic element of the commutant (the space of Hermitian
matrices commuting with every generator), and each block is identified by
its dimension together with the quadratic and cubic Casimir scalars.  No
root-system bookkeeping is involved; everything is plain numerics on the
matrices themselves.

Reproducibility: the generic commutant element uses the fixed seed
:data:`DECOMPOSE_SEED`.  If an eigenvalue collision merges two blocks
(vanishingly rare), deterministic retry draws are taken from
``SeedSequence([DECOMPOSE_SEED, attempt])``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import (
    GeneratorSet,
    StructureConstants,
    d_symbols,
    jacobi_residual,
    normalize_algebra_id,
    parse_su,
    su_fundamental,
)
from .errors import (
    AlgebraMismatch,
    BadParameter,
    CommutantFailure,
    JacobiViolation,
    UnknownIrrep,
    UnsupportedAlgebra,
)
from .linalg import (
    commutator,
    frobenius,
    hermitian_eigen,
    kron,
    simultaneous_eigenbasis,
)

#: fixed seed for the generic commutant element used by decompose
DECOMPOSE_SEED = 20260809

#: deterministic redraws allowed on eigenvalue collision
MAX_SPLIT_ATTEMPTS = 6

#: Casimir-scalar matching tolerance (scaled by max(1, |value|))
SCALAR_TOL = 1e-6

#: singular values below this (times max(1, largest)) count as null space
NULLSPACE_TOL = 1e-9

#: eigenvalue clustering tolerance when splitting by Casimir spectra
CASIMIR_CLUSTER_TOL = 1e-6

#: per-component tolerance for weight multiset comparison
WEIGHT_TOL = 1e-8


# ---------------------------------------------------------------------------
# representation constructors

def trivial_rep(algebra_id: str) -> GeneratorSet:
    """One-dimensional representation: every generator is zero."""
    algebra_id = normalize_algebra_id(algebra_id)
    n = parse_su(algebra_id)
    d = n * n - 1
    zero = np.zeros((1, 1), dtype=np.complex128)
    return GeneratorSet.build(algebra_id, [zero] * d)


def su2_spin_irrep(d_r: int) -> GeneratorSet:
    """Ladder construction of the su(2) irrep on d_r states.

    With j = (d_r - 1)/2 the third generator is diagonal with entries
    j, j-1, ..., -j; the raising operator has the usual matrix elements
    sqrt(j(j+1) - m(m+1)).  d_r = 1 gives three zero matrices, the
    trivial solution of the bracket relations; d_r = 2 reproduces the
    Pauli matrices over two.
    """
    if d_r < 1:
        raise BadParameter(f"spin irrep needs d_r >= 1, got {d_r}")
    if d_r == 1:
        return trivial_rep("su2")
    j = (d_r - 1) / 2.0
    m_values = [j - i for i in range(d_r)]
    raising = np.zeros((d_r, d_r), dtype=np.complex128)
    for i in range(1, d_r):
        m = m_values[i]
        raising[i - 1, i] = np.sqrt(j * (j + 1) - m * (m + 1))
    lowering = raising.conj().T
    t1 = (raising + lowering) / 2.0
    t2 = (raising - lowering) / 2.0j
    t3 = np.diag(np.array(m_values, dtype=np.complex128))
    return GeneratorSet.build("su2", [t1, t2, t3])


def adjoint_rep(
    constants: StructureConstants, algebra_id: str | None = None
) -> GeneratorSet:
    """The d-dimensional representation built from the structure constants.

    Matrix a has entries ``(t_a)_bc = -i f_abc``; antisymmetry and
    reality of f make these Hermitian.  Raises ``JacobiViolation`` if
    the constants fail the Jacobi identity.
    """
    f = constants.f
    scale = max(1.0, float(np.max(np.abs(f))) ** 2) if f.size else 1.0
    if jacobi_residual(constants) > 1e-12 * scale:
        raise JacobiViolation("structure constants violate the Jacobi identity")
    if algebra_id is None:
        n = round(np.sqrt(constants.d + 1))
        if n * n - 1 != constants.d:
            raise BadParameter(
                f"cannot infer algebra from d={constants.d}; pass algebra_id"
            )
        algebra_id = f"su{n}"
    mats = [-1j * f[a] for a in range(constants.d)]
    return GeneratorSet.build(algebra_id, mats)


def conjugate_rep(rep: GeneratorSet) -> GeneratorSet:
    """Negative complex conjugate of each generator; same structure constants."""
    return GeneratorSet.build(
        rep.algebra_id, [-g.conj() for g in rep.generators]
    )


def tensor_rep(rep1: GeneratorSet, rep2: GeneratorSet) -> GeneratorSet:
    """Joint representation t_a (x) I + I (x) s_a on the product space."""
    if normalize_algebra_id(rep1.algebra_id) != normalize_algebra_id(rep2.algebra_id):
        raise AlgebraMismatch(
            f"{rep1.algebra_id!r} and {rep2.algebra_id!r} are different algebras"
        )
    if rep1.d != rep2.d:
        raise AlgebraMismatch("generator counts differ")
    if not rep1.is_trivial() and not rep2.is_trivial():
        df = float(np.max(np.abs(rep1.constants.f - rep2.constants.f)))
        if df > 1e-10:
            raise AlgebraMismatch(
                f"structure constants differ entrywise by {df:.3e}"
            )
    eye1 = np.eye(rep1.d_r, dtype=np.complex128)
    eye2 = np.eye(rep2.d_r, dtype=np.complex128)
    mats = [
        kron(a, eye2) + kron(eye1, b)
        for a, b in zip(rep1.generators, rep2.generators)
    ]
    return GeneratorSet.build(rep1.algebra_id, mats)


def embed_in_product(rep: GeneratorSet, other_dim: int, slot: int) -> GeneratorSet:
    """Generators t_a (x) I (slot 0) or I (x) t_a (slot 1) on the product space.

    Either embedding is itself a valid representation of the same algebra;
    this backs per-participant questions on shared (two-diner) scenarios.
    """
    eye = np.eye(other_dim, dtype=np.complex128)
    if slot == 0:
        mats = [kron(g, eye) for g in rep.generators]
    elif slot == 1:
        mats = [kron(eye, g) for g in rep.generators]
    else:
        raise BadParameter(f"slot must be 0 or 1, got {slot}")
    return GeneratorSet.build(rep.algebra_id, mats)


# ---------------------------------------------------------------------------
# Casimir operators

def quadratic_casimir(rep: GeneratorSet) -> np.ndarray:
    """Sum of squared generators; commutes with every generator."""
    g = rep.stacked()
    return np.einsum("aij,ajk->ik", g, g, optimize=True)


def cubic_casimir(rep: GeneratorSet, d_tensor: np.ndarray) -> np.ndarray:
    """Sum d_abc t_a t_b t_c with the symmetric tensor of the fundamental.

    The scalar flips sign under conjugation, which is what tells apart a
    representation from its inequivalent conjugate.
    """
    d_tensor = np.asarray(d_tensor, dtype=np.float64)
    if d_tensor.shape != (rep.d, rep.d, rep.d):
        raise AlgebraMismatch(
            f"d tensor shape {d_tensor.shape} does not fit d={rep.d}"
        )
    g = rep.stacked()
    pair = np.einsum("aij,bjk->abik", g, g, optimize=True)
    third = np.einsum("abc,cij->abij", d_tensor, g, optimize=True)
    return np.einsum("abij,abjk->ik", pair, third, optimize=True)


@lru_cache(maxsize=None)
def fundamental_d_tensor(algebra_id: str) -> np.ndarray:
    """Symmetric invariant tensor of the algebra's fundamental representation."""
    n = parse_su(normalize_algebra_id(algebra_id))
    d = d_symbols(su_fundamental(n))
    d.flags.writeable = False
    return d


def scalar_part(matrix: np.ndarray) -> tuple[float, float]:
    """(scalar, residual) for a matrix expected to be scalar times identity."""
    n = matrix.shape[0]
    scalar = float(np.trace(matrix).real) / n
    residual = float(np.max(np.abs(matrix - scalar * np.eye(n))))
    return scalar, residual


# ---------------------------------------------------------------------------
# weights and equivalence

def weights(
    rep: GeneratorSet, cartan_indices=None
) -> list[tuple[float, ...]]:
    """Simultaneous eigenvalue tuples of the commuting (Cartan) generators.

    Returns the multiset sorted lexicographically.  Defaults to the
    algebra's conventional diagonal generators.
    """
    if cartan_indices is None:
        cartan_indices = rep.cartan_indices
    mats = [rep.generators[i] for i in cartan_indices]
    tuples, _ = simultaneous_eigenbasis(mats)
    return sorted(tuples)


def weight_multisets_match(
    left, right, tol: float = WEIGHT_TOL
) -> bool:
    """True when the two weight multisets pair up within tol per component."""
    if len(left) != len(right):
        return False
    remaining = list(right)
    for w in left:
        for i, v in enumerate(remaining):
            if len(v) == len(w) and all(abs(a - b) <= tol for a, b in zip(w, v)):
                del remaining[i]
                break
        else:
            return False
    return True


def rep_equivalent(rep1: GeneratorSet, rep2: GeneratorSet) -> bool:
    """Equivalence test via matching Cartan weight multisets.

    Valid for representations of a compact algebra under the catalog's
    fixed Cartan choice: the weight multiset is the character data, and
    matching characters mean a unitary change of basis exists.
    """
    try:
        if normalize_algebra_id(rep1.algebra_id) != normalize_algebra_id(
            rep2.algebra_id
        ):
            return False
    except UnsupportedAlgebra:
        return False
    if rep1.d_r != rep2.d_r or rep1.d != rep2.d:
        return False
    return weight_multisets_match(weights(rep1), weights(rep2))


# ---------------------------------------------------------------------------
# irrep catalog

@dataclass(frozen=True)
class IrrepLabel:
    """Identifier of one irreducible representation.

    ``c3`` is zero for self-conjugate entries; conjugate pairs carry
    opposite signs.  ``name`` follows the dimension-with-bar convention
    ("3", "3bar", "8", ...); primes separate inequivalent entries of the
    same dimension and conjugacy class.
    """

    algebra_id: str
    d_r: int
    c2: float
    c3: float
    name: str

    @property
    def self_conjugate(self) -> bool:
        return abs(self.c3) <= SCALAR_TOL


@dataclass(frozen=True)
class IrrepCatalog:
    """Labels plus one concrete model representation per label."""

    algebra_id: str
    max_dim: int
    labels: tuple[IrrepLabel, ...]
    models: dict

    def __iter__(self):
        return iter(self.labels)

    def __len__(self):
        return len(self.labels)

    def label(self, name: str) -> IrrepLabel:
        for lab in self.labels:
            if lab.name == name:
                return lab
        raise UnknownIrrep(f"no catalog entry named {name!r}")

    def model(self, name: str) -> GeneratorSet:
        self.label(name)
        return self.models[name]

    def match(self, d_r: int, c2: float, c3: float) -> IrrepLabel | None:
        """Entry with this dimension and Casimir scalars, or None."""
        for lab in self.labels:
            if (
                lab.d_r == d_r
                and abs(lab.c2 - c2) <= SCALAR_TOL * max(1.0, abs(lab.c2))
                and abs(lab.c3 - c3) <= SCALAR_TOL * max(1.0, abs(lab.c3))
            ):
                return lab
        return None

    def conjugate_of(self, name: str) -> IrrepLabel:
        lab = self.label(name)
        match = self.match(lab.d_r, lab.c2, -lab.c3)
        if match is None:
            raise UnknownIrrep(f"conjugate of {name!r} not in catalog")
        return match

    def ambiguous_dimensions(self) -> set[int]:
        """Dimensions whose (c2, c3) key could also arise as a multiple
        of a smaller entry with the same scalars; empty for su(2)/su(3)
        in the covered range."""
        out = set()
        for lab in self.labels:
            for other in self.labels:
                if (
                    other.d_r < lab.d_r
                    and lab.d_r % other.d_r == 0
                    and abs(lab.c2 - other.c2) <= SCALAR_TOL
                    and abs(lab.c3 - other.c3) <= SCALAR_TOL
                ):
                    out.add(lab.d_r)
        return out


def _measured_scalars(rep: GeneratorSet) -> tuple[float, float]:
    c2, _ = scalar_part(quadratic_casimir(rep))
    c3, _ = scalar_part(cubic_casimir(rep, fundamental_d_tensor(rep.algebra_id)))
    return c2, c3


def _claim_name(existing: set[str], d_r: int, c3: float) -> str:
    primes = 0
    while True:
        base = str(d_r) + "'" * primes
        name = base + ("bar" if c3 < -SCALAR_TOL else "")
        if name not in existing:
            return name
        primes += 1


def _casimir_blocks(rep: GeneratorSet) -> list[np.ndarray]:
    """Isometries onto the joint eigenspaces of the quadratic and cubic
    Casimirs.  These blocks are invariant, and any commutant element is
    block diagonal with respect to them."""
    c2_matrix = quadratic_casimir(rep)
    c3_matrix = cubic_casimir(rep, fundamental_d_tensor(rep.algebra_id))
    blocks = []
    eig2 = hermitian_eigen(
        c2_matrix, cluster_tol=CASIMIR_CLUSTER_TOL * max(1.0, frobenius(c2_matrix))
    )
    for j in range(eig2.n_clusters):
        v2 = eig2.cluster_basis(j)
        sub = v2.conj().T @ c3_matrix @ v2
        sub = (sub + sub.conj().T) / 2
        eig3 = hermitian_eigen(
            sub, cluster_tol=CASIMIR_CLUSTER_TOL * max(1.0, frobenius(c3_matrix))
        )
        for k in range(eig3.n_clusters):
            blocks.append(v2 @ eig3.cluster_basis(k))
    return blocks


def _hermitian_basis(m: int) -> list[np.ndarray]:
    """Orthonormal (Hilbert-Schmidt) real basis of Hermitian m x m matrices."""
    basis = []
    for i in range(m):
        e = np.zeros((m, m), dtype=np.complex128)
        e[i, i] = 1.0
        basis.append(e)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for i in range(m):
        for j in range(i + 1, m):
            e = np.zeros((m, m), dtype=np.complex128)
            e[i, j] = inv_sqrt2
            e[j, i] = inv_sqrt2
            basis.append(e)
            e = np.zeros((m, m), dtype=np.complex128)
            e[i, j] = -1j * inv_sqrt2
            e[j, i] = 1j * inv_sqrt2
            basis.append(e)
    return basis


def _block_commutant(projected: list[np.ndarray]) -> list[np.ndarray]:
    """Hermitian basis of {X : [X, t_a] = 0 for all a} on one block.

    Least-squares null space: stack the real and imaginary parts of
    vec([E_p, t_a]) over a Hermitian parameter basis E_p, SVD, and keep
    right singular vectors whose singular values fall below
    ``NULLSPACE_TOL * max(1, sigma_max)``.
    """
    m = projected[0].shape[0]
    params = _hermitian_basis(m)
    columns = []
    for e in params:
        rows = []
        for t in projected:
            c = e @ t - t @ e
            rows.append(c.real.ravel())
            rows.append(c.imag.ravel())
        columns.append(np.concatenate(rows))
    a = np.stack(columns, axis=1)
    # rows >= columns always (2d m^2 vs m^2), so the reduced SVD still
    # carries every right singular vector
    _, sigma, vt = np.linalg.svd(a, full_matrices=False)
    cutoff = NULLSPACE_TOL * max(1.0, float(sigma[0]) if sigma.size else 0.0)
    null_vectors = [vt[k] for k in range(vt.shape[0]) if sigma[k] < cutoff]
    out = []
    for x in null_vectors:
        mat = sum(coef * e for coef, e in zip(x, params))
        out.append((mat + mat.conj().T) / 2)
    return out


def commutant(rep: GeneratorSet, catalog: IrrepCatalog | None = None) -> list[np.ndarray]:
    """Orthonormal Hermitian basis of everything commuting with every generator.

    The space is assembled blockwise over the joint Casimir eigenspaces
    (which the commutant cannot mix).  When a catalog is supplied, a
    block whose (dimension, c2, c3) already identifies a single catalog
    irrep contributes just its scaled projector, skipping the null-space
    solve; this changes nothing about the result, only the cost.
    """
    if rep.d_r == 0:
        return []
    if rep.is_trivial():
        blocks = [np.eye(rep.d_r, dtype=np.complex128)]
    else:
        blocks = _casimir_blocks(rep)
    skip_dims = catalog.ambiguous_dimensions() if catalog is not None else set()
    c2_matrix = quadratic_casimir(rep)
    c3_matrix = cubic_casimir(rep, fundamental_d_tensor(rep.algebra_id))
    basis: list[np.ndarray] = []
    for v in blocks:
        m = v.shape[1]
        if catalog is not None and m not in skip_dims:
            c2b = v.conj().T @ c2_matrix @ v
            c3b = v.conj().T @ c3_matrix @ v
            c2, r2 = scalar_part(c2b)
            c3, r3 = scalar_part(c3b)
            if (
                max(r2, r3) <= SCALAR_TOL
                and catalog.match(m, c2, c3) is not None
            ):
                basis.append((v @ v.conj().T) / np.sqrt(m))
                continue
        projected = [v.conj().T @ g @ v for g in rep.generators]
        for x in _block_commutant(projected):
            basis.append(v @ x @ v.conj().T)
    return basis


# ---------------------------------------------------------------------------
# decomposition

@dataclass(frozen=True)
class DecompositionResult:
    """Reducible representation split into catalog irreps.

    ``parts`` holds (label, multiplicity, isometry); each isometry has
    ``multiplicity * label.d_r`` orthonormal columns mapping the irrep
    copies into the big space.  ``residual`` is the largest invariance
    or bracket violation over all blocks.
    """

    parts: tuple[tuple[IrrepLabel, int, np.ndarray], ...]
    residual: float

    @property
    def total_dim(self) -> int:
        return sum(label.d_r * mult for label, mult, _ in self.parts)

    def names(self) -> list[str]:
        """Irrep names repeated by multiplicity, largest blocks first."""
        out = []
        for label, mult, _ in self.parts:
            out.extend([label.name] * mult)
        return out

    def summary(self) -> str:
        return " + ".join(self.names())


def _split_blocks(
    rep: GeneratorSet, basis: list[np.ndarray], attempt: int
) -> list[np.ndarray]:
    rng = np.random.default_rng(np.random.SeedSequence([DECOMPOSE_SEED, attempt]))
    coeffs = rng.standard_normal(len(basis))
    generic = sum(c * b for c, b in zip(coeffs, basis))
    generic = (generic + generic.conj().T) / 2
    eig = hermitian_eigen(generic)
    return [eig.cluster_basis(j) for j in range(eig.n_clusters)]


def _identify_block(
    rep: GeneratorSet,
    isometry: np.ndarray,
    catalog: IrrepCatalog,
    c2_matrix: np.ndarray,
    c3_matrix: np.ndarray,
) -> tuple[IrrepLabel | None, float]:
    """Match one invariant block against the catalog.

    Returns (label or None, residual).  The residual combines the
    invariance violation ||t_a V - V V^dag t_a V|| with the Casimir
    scalar deviation on the block.
    """
    v = isometry
    c2b = v.conj().T @ c2_matrix @ v
    c3b = v.conj().T @ c3_matrix @ v
    c2, r2 = scalar_part(c2b)
    c3, r3 = scalar_part(c3b)
    invariance = 0.0
    for g in rep.generators:
        gv = g @ v
        invariance = max(invariance, frobenius(gv - v @ (v.conj().T @ gv)))
    label = None
    if max(r2, r3) <= SCALAR_TOL * max(1.0, abs(c2), abs(c3)):
        label = catalog.match(v.shape[1], c2, c3)
    return label, max(invariance, 0.0)


def decompose(rep: GeneratorSet, catalog: IrrepCatalog) -> DecompositionResult:
    """Split a representation into catalog irreps with isometries.

    Steps: build the commutant, eigendecompose a generic fixed-seed
    element of it (its eigenspaces are the invariant blocks), identify
    every block by (dimension, c2, c3) against the catalog, then merge
    repeated labels into multiplicities.

    Raises ``UnknownIrrep`` when a block matches nothing in the catalog
    and ``CommutantFailure`` when the blocks fail to tile the space.
    """
    if normalize_algebra_id(rep.algebra_id) != normalize_algebra_id(
        catalog.algebra_id
    ):
        raise AlgebraMismatch(
            f"representation is {rep.algebra_id!r}, catalog is {catalog.algebra_id!r}"
        )
    basis = commutant(rep, catalog)
    if not basis:
        raise CommutantFailure("empty commutant")
    c2_matrix = quadratic_casimir(rep)
    c3_matrix = cubic_casimir(rep, fundamental_d_tensor(rep.algebra_id))

    identified: list[tuple[IrrepLabel | None, np.ndarray, float]] = []
    for attempt in range(MAX_SPLIT_ATTEMPTS):
        blocks = _split_blocks(rep, basis, attempt)
        identified = []
        for v in blocks:
            label, res = _identify_block(rep, v, catalog, c2_matrix, c3_matrix)
            identified.append((label, v, res))
        if all(label is not None for label, _, _ in identified):
            break
    unmatched = [(v.shape[1],) for label, v, _ in identified if label is None]
    if unmatched:
        raise UnknownIrrep(
            f"blocks of dimension {sorted(d for d, in unmatched)} match no catalog entry"
        )

    if sum(v.shape[1] for _, v, _ in identified) != rep.d_r:
        raise CommutantFailure("invariant blocks do not tile the space")

    # bracket residual of the projected generators, against the shared f
    f = rep.constants.f if not rep.is_trivial() else np.zeros((rep.d,) * 3)
    residual = 0.0
    for label, v, res in identified:
        residual = max(residual, res)
        projected = np.stack([v.conj().T @ g @ v for g in rep.generators])
        prod = np.einsum("aij,bjk->abik", projected, projected, optimize=True)
        comm = prod - np.swapaxes(prod, 0, 1)
        recon = 1j * np.einsum("abc,cij->abij", f, projected, optimize=True)
        residual = max(
            residual,
            float(np.max(np.sqrt(np.sum(np.abs(comm - recon) ** 2, axis=(2, 3))))),
        )

    order = sorted(
        identified,
        key=lambda item: (-item[0].d_r, -item[0].c3, item[0].name),
    )
    merged: list[tuple[IrrepLabel, list[np.ndarray]]] = []
    for label, v, _ in order:
        for existing_label, isos in merged:
            if existing_label == label:
                isos.append(v)
                break
        else:
            merged.append((label, [v]))
    parts = tuple(
        (label, len(isos), np.hstack(isos)) for label, isos in merged
    )
    if sum(label.d_r * mult for label, mult, _ in parts) != rep.d_r:
        raise CommutantFailure("multiplicities do not tile the space")
    return DecompositionResult(parts, residual)


# ---------------------------------------------------------------------------
# catalog construction

def _discover_blocks(product: GeneratorSet) -> list[tuple[np.ndarray, float, float]]:
    """(isometry, c2, c3) per joint Casimir eigenspace, with purity checks."""
    c2_matrix = quadratic_casimir(product)
    c3_matrix = cubic_casimir(product, fundamental_d_tensor(product.algebra_id))
    out = []
    for v in _casimir_blocks(product):
        c2, r2 = scalar_part(v.conj().T @ c2_matrix @ v)
        c3, r3 = scalar_part(v.conj().T @ c3_matrix @ v)
        if max(r2, r3) > SCALAR_TOL * max(1.0, abs(c2), abs(c3)):
            raise CommutantFailure(
                f"impure Casimir block of dimension {v.shape[1]} while building catalog"
            )
        out.append((v, c2, c3))
    return out


def decompose_product(
    algebra_id: str, factor_names: list[str], max_dim: int | None = None
) -> DecompositionResult:
    """Tensor catalog irreps by name and decompose the product.

    ``max_dim`` bounds the catalog used for identification.  The default
    covers the su(2) product exactly and the su(3) range up to 27 (all
    blocks of products of the named entries through the adjoint square);
    pass a larger value if a block comes back unidentified.
    """
    algebra_id = normalize_algebra_id(algebra_id)
    if not factor_names:
        raise BadParameter("need at least one factor name")
    names = [str(name) for name in factor_names]
    named_dims = []
    for name in names:
        m = re.match(r"\d+", name)
        if not m:
            raise UnknownIrrep(f"factor {name!r} does not name a catalog entry")
        named_dims.append(int(m.group()))
    if max_dim is None:
        if algebra_id == "su2":
            max_dim = int(np.prod(named_dims))
        else:
            max_dim = max([27, *named_dims])
    catalog = build_irrep_catalog(algebra_id, max_dim)
    factors = [catalog.model(name) for name in names]
    product = factors[0]
    for extra in factors[1:]:
        product = tensor_rep(product, extra)
    return decompose(product, catalog)


@lru_cache(maxsize=None)
def build_irrep_catalog(algebra_id: str, max_dim: int) -> IrrepCatalog:
    """All irreps of the algebra up to dimension ``max_dim``.

    su(2): the spin ladder, one entry per dimension.  su(3): discovered
    bottom-up by tensoring the two inequivalent three-dimensional
    representations onto everything already found and splitting the
    products by (dimension, c2, c3).  Each label keeps one concrete model
    representation, so weights or further products can be formed later.

    Results are cached; treat the returned catalog as immutable.
    """
    algebra_id = normalize_algebra_id(algebra_id)
    if max_dim < 1:
        raise BadParameter(f"max_dim must be >= 1, got {max_dim}")
    if algebra_id == "su2":
        labels = []
        models = {}
        for d_r in range(1, max_dim + 1):
            model = su2_spin_irrep(d_r)
            c2, c3 = _measured_scalars(model)
            name = str(d_r)
            labels.append(IrrepLabel("su2", d_r, c2, c3, name))
            models[name] = model
        return IrrepCatalog("su2", max_dim, tuple(labels), models)
    if algebra_id != "su3":
        raise UnsupportedAlgebra(
            f"irrep catalog covers su2 and su3, not {algebra_id!r}"
        )

    fundamental = su_fundamental(3)
    seeds = [
        ("1", trivial_rep("su3")),
        ("3", fundamental),
        ("3bar", conjugate_rep(fundamental)),
    ]
    labels = []
    models = {}
    for name, model in seeds:
        if model.d_r <= max_dim:
            c2, c3 = _measured_scalars(model)
            labels.append(IrrepLabel("su3", model.d_r, c2, c3, name))
            models[name] = model

    def already_known(d_r, c2, c3):
        return any(
            lab.d_r == d_r
            and abs(lab.c2 - c2) <= SCALAR_TOL * max(1.0, abs(lab.c2))
            and abs(lab.c3 - c3) <= SCALAR_TOL * max(1.0, abs(lab.c3))
            for lab in labels
        )

    factor_names = [name for name in ("3", "3bar") if name in models]
    queue = sorted(
        (m.d_r, name) for name, m in models.items() if not m.is_trivial()
    )
    position = 0
    while position < len(queue):
        _, name = queue[position]
        position += 1
        base = models[name]
        for factor_name in factor_names:
            product = tensor_rep(base, models[factor_name])
            for v, c2, c3 in _discover_blocks(product):
                d_block = v.shape[1]
                if d_block > max_dim or already_known(d_block, c2, c3):
                    continue
                new_name = _claim_name({lab.name for lab in labels}, d_block, c3)
                projected = [v.conj().T @ g @ v for g in product.generators]
                model = GeneratorSet.build("su3", projected)
                labels.append(IrrepLabel("su3", d_block, c2, c3, new_name))
                models[new_name] = model
                queue.append((d_block, new_name))
                queue[position:] = sorted(queue[position:])
    labels.sort(key=lambda lab: (lab.d_r, -lab.c3, lab.name))
    return IrrepCatalog("su3", max_dim, tuple(labels), models)
