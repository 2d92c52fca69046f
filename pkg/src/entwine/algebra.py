"""Generator sets, structure constants, and the simple-algebra catalog.

A :class:`GeneratorSet` holds ``d`` Hermitian traceless matrices of size
``d_r`` realizing one representation of a compact simple algebra, together
with its trace normalization ``T`` (``tr(t_a t_b) = T * delta_ab``).  The
su(n) fundamental uses the generalized Gell-Mann basis, ordered so that
for su(2) the generators are the Pauli matrices over two and for su(3)
the Gell-Mann matrices over two, with the diagonal generators in their
conventional slots (indices 3, 8, 15, ... one-based).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    BadParameter,
    NotClosed,
    UnsupportedAlgebra,
    ValidationError,
    WrongNormalization,
)
from .linalg import commutator, frobenius, hermiticity_residual

#: Hermiticity / tracelessness bound for generators, scaled by max(1, ||t||_F)
GENERATOR_TOL = 1e-12

#: trace-orthogonality bound |tr(t_a t_b) - T delta_ab|
ORTHOGONALITY_TOL = 1e-10

#: reconstruction bound max||[t_a,t_b] - i f_abc t_c||_F
CLOSURE_TOL = 1e-10

_SU_PATTERN = re.compile(r"^su\(?(\d+)\)?$")


def parse_su(algebra_id: str) -> int | None:
    """Return n for ids like ``su2``/``su(2)``, else None."""
    m = _SU_PATTERN.match(algebra_id.strip().lower())
    if not m:
        return None
    return int(m.group(1))


def normalize_algebra_id(algebra_id: str) -> str:
    n = parse_su(algebra_id)
    if n is None:
        raise UnsupportedAlgebra(f"unsupported algebra id: {algebra_id!r}")
    return f"su{n}"


def su_cartan_indices(n: int) -> tuple[int, ...]:
    """0-based indices of the diagonal generators in the su(n) ordering."""
    return tuple(k * k - 2 for k in range(2, n + 1))


@dataclass(frozen=True)
class GeneratorSet:
    """d Hermitian traceless d_r x d_r matrices with tr(t_a t_b) = T delta_ab.

    ``trace_index`` is zero only for the trivial representation (all
    generators zero), the degenerate but legal solution of the bracket
    relations.
    """

    algebra_id: str
    generators: tuple[np.ndarray, ...]
    trace_index: float

    @property
    def d(self) -> int:
        return len(self.generators)

    @property
    def d_r(self) -> int:
        return self.generators[0].shape[0] if self.generators else 0

    @property
    def cartan_indices(self) -> tuple[int, ...]:
        n = parse_su(self.algebra_id)
        if n is None:
            raise UnsupportedAlgebra(f"no Cartan convention for {self.algebra_id!r}")
        return su_cartan_indices(n)

    def cartan_generators(self) -> list[np.ndarray]:
        return [self.generators[i] for i in self.cartan_indices]

    def stacked(self) -> np.ndarray:
        """Generators as one (d, d_r, d_r) array."""
        return np.stack(self.generators)

    @cached_property
    def constants(self) -> "StructureConstants":
        """Structure constants of this set, computed once and cached."""
        return structure_constants(self)

    @classmethod
    def build(
        cls, algebra_id: str, matrices, validate: bool = True
    ) -> "GeneratorSet":
        gens = []
        for m in matrices:
            a = np.asarray(m, dtype=np.complex128).copy()
            a.flags.writeable = False
            gens.append(a)
        gens = tuple(gens)
        trace_index = 0.0
        if gens:
            trace_index = float(
                np.mean([np.trace(g @ g).real for g in gens])
            )
        out = cls(algebra_id, gens, trace_index)
        if validate and gens:
            report = verify_generator_set(out)
            report.require()
        return out

    def is_trivial(self) -> bool:
        return self.trace_index == 0.0 or all(
            not np.any(g) for g in self.generators
        )


@dataclass(frozen=True)
class StructureConstants:
    """Real totally antisymmetric tensor f with [t_a, t_b] = i f_abc t_c."""

    d: int
    f: np.ndarray

    def antisymmetry_residual(self) -> float:
        f = self.f
        return float(
            max(
                np.max(np.abs(f + np.swapaxes(f, 0, 1))),
                np.max(np.abs(f + np.swapaxes(f, 1, 2))),
            )
        ) if f.size else 0.0

    def nonzero_entries(self, tol: float = 1e-12) -> list[tuple[int, int, int, float]]:
        """Entries (a, b, c, value) with a < b and |value| > tol, 0-based."""
        out = []
        d = self.d
        for a in range(d):
            for b in range(a + 1, d):
                for c in range(d):
                    v = self.f[a, b, c]
                    if abs(v) > tol:
                        out.append((a, b, c, float(v)))
        return out


@dataclass(frozen=True)
class AlgebraInfo:
    """Catalog row for one compact simple algebra."""

    family: str
    n: int
    rank: int
    dimension: int
    alt_name: str


_EXCEPTIONAL = {
    "g2": (2, 14),
    "f4": (4, 52),
    "e6": (6, 78),
    "e7": (7, 133),
    "e8": (8, 248),
}


def algebra_catalog(family: str, n: int | None = None) -> AlgebraInfo:
    """Rank, dimension, and alternate name for one classical or exceptional family.

    Classical families: a_n -> su(n+1) with dimension n(n+2); b_n ->
    o(2n+1) and c_n -> usp(2n), both n(2n+1); d_n -> o(2n) with n(2n-1),
    needing n >= 3.  Exceptional: g2, f4, e6, e7, e8 with dimensions
    14, 52, 78, 133, 248.
    """
    fam = family.strip().lower()
    if fam in _EXCEPTIONAL:
        rank, dim = _EXCEPTIONAL[fam]
        if n is not None and n != rank:
            raise BadParameter(f"{fam} has fixed rank {rank}, got n={n}")
        return AlgebraInfo(fam, rank, rank, dim, fam)
    if fam not in ("a", "b", "c", "d"):
        raise UnsupportedAlgebra(f"unknown family {family!r}")
    if n is None:
        raise BadParameter(f"family {fam!r} needs a rank parameter n")
    if fam == "d" and n < 3:
        raise BadParameter("family d needs n >= 3")
    if fam in ("a", "b", "c") and n < 1:
        raise BadParameter(f"family {fam} needs n >= 1")
    if fam == "a":
        return AlgebraInfo(fam, n, n, n * (n + 2), f"su({n + 1})")
    if fam == "b":
        return AlgebraInfo(fam, n, n, n * (2 * n + 1), f"o({2 * n + 1})")
    if fam == "c":
        return AlgebraInfo(fam, n, n, n * (2 * n + 1), f"usp({2 * n})")
    return AlgebraInfo(fam, n, n, n * (2 * n - 1), f"o({2 * n})")


def su_fundamental(n: int) -> GeneratorSet:
    """Fundamental representation of su(n): generalized Gell-Mann basis over two.

    Produces ``n^2 - 1`` generators with ``T = 1/2``.  Ordering walks the
    columns k = 2..n; for each k it emits the symmetric and antisymmetric
    pair generators for rows j < k, then the k'th diagonal generator.
    For n = 2 this is the Pauli basis over two; for n = 3 the Gell-Mann
    basis over two with indices matching the usual one-based t_1..t_8.
    """
    if n < 2:
        raise BadParameter(f"su(n) fundamental needs n >= 2, got {n}")
    mats: list[np.ndarray] = []
    for k in range(2, n + 1):
        for j in range(1, k):
            sym = np.zeros((n, n), dtype=np.complex128)
            sym[j - 1, k - 1] = 0.5
            sym[k - 1, j - 1] = 0.5
            mats.append(sym)
            asym = np.zeros((n, n), dtype=np.complex128)
            asym[j - 1, k - 1] = -0.5j
            asym[k - 1, j - 1] = 0.5j
            mats.append(asym)
        diag = np.zeros(n, dtype=np.complex128)
        diag[: k - 1] = 1.0
        diag[k - 1] = -(k - 1)
        diag *= 1.0 / np.sqrt(2.0 * k * (k - 1))
        mats.append(np.diag(diag))
    return GeneratorSet.build(f"su{n}", mats)


def structure_constants(rep: GeneratorSet) -> StructureConstants:
    """f_abc = -(i/T) tr([t_a, t_b] t_c), with a closure check.

    Raises ``NotClosed`` when the brackets do not reconstruct from the
    computed tensor within ``1e-10`` (scaled by the generator size).
    """
    d = rep.d
    if rep.is_trivial():
        return StructureConstants(d, np.zeros((d, d, d)))
    g = rep.stacked()
    prod = np.einsum("aij,bjk->abik", g, g, optimize=True)
    comm = prod - np.swapaxes(prod, 0, 1)
    f_complex = np.einsum("abij,cji->abc", comm, g, optimize=True) * (-1j / rep.trace_index)
    f = f_complex.real
    scale = max(1.0, max(frobenius(t) for t in rep.generators) ** 2)
    imag_leak = float(np.max(np.abs(f_complex.imag)))
    recon = np.einsum("abc,cij->abij", f, g, optimize=True) * 1j
    residual = float(np.max(np.sqrt(np.sum(np.abs(comm - recon) ** 2, axis=(2, 3)))))
    if imag_leak > CLOSURE_TOL * scale or residual > CLOSURE_TOL * scale:
        raise NotClosed(
            f"brackets leave the span of the generators: residual {max(residual, imag_leak):.3e}"
        )
    return StructureConstants(d, f)


def jacobi_residual(constants: StructureConstants) -> float:
    """max over (a,b,c,e) of |f_abd f_dce + f_bcd f_dae + f_cad f_dbe|."""
    f = constants.f
    if f.size == 0:
        return 0.0
    total = (
        np.einsum("abd,dce->abce", f, f, optimize=True)
        + np.einsum("bcd,dae->abce", f, f, optimize=True)
        + np.einsum("cad,dbe->abce", f, f, optimize=True)
    )
    return float(np.max(np.abs(total)))


def d_symbols(rep: GeneratorSet) -> np.ndarray:
    """Totally symmetric invariant tensor d_abc = 2 tr({t_a, t_b} t_c).

    Expects a fundamental-normalized set (``T = 1/2``); raises
    ``WrongNormalization`` otherwise.
    """
    if abs(rep.trace_index - 0.5) > 1e-9:
        raise WrongNormalization(
            f"d symbols need trace index 1/2, got {rep.trace_index!r}"
        )
    g = rep.stacked()
    prod = np.einsum("aij,bjk->abik", g, g, optimize=True)
    anti = prod + np.swapaxes(prod, 0, 1)
    d = 2.0 * np.einsum("abij,cji->abc", anti, g, optimize=True)
    return d.real


@dataclass(frozen=True)
class GeneratorSetReport:
    """Residuals from checking one generator set, each against its bound."""

    hermiticity: float
    tracelessness: float
    orthogonality: float
    closure: float
    trace_index: float
    degenerate: bool

    TOLERANCES = {
        "hermiticity": GENERATOR_TOL,
        "tracelessness": GENERATOR_TOL,
        "orthogonality": ORTHOGONALITY_TOL,
        "closure": CLOSURE_TOL,
    }

    def failures(self) -> list[str]:
        out = []
        for name, tol in self.TOLERANCES.items():
            if getattr(self, name) > tol:
                out.append(name)
        return out

    @property
    def passed(self) -> bool:
        return not self.degenerate and not self.failures()

    def require(self) -> None:
        bad = self.failures()
        if bad:
            details = ", ".join(f"{k}={getattr(self, k):.3e}" for k in bad)
            raise ValidationError(f"generator set fails checks: {details}")

    def as_dict(self) -> dict:
        return {
            "degenerate": bool(self.degenerate),
            "trace_index": float(self.trace_index),
            "checks": {
                name: {
                    "residual": float(getattr(self, name)),
                    "tolerance": tol,
                    "ok": bool(getattr(self, name) <= tol),
                }
                for name, tol in self.TOLERANCES.items()
            },
            "passed": bool(self.passed),
        }


def verify_generator_set(rep: GeneratorSet) -> GeneratorSetReport:
    """Measure Hermiticity, trace, orthogonality, and closure residuals.

    Residuals are scaled relative (divided by ``max(1, ||t||_F)`` terms)
    so the bounds in :class:`GeneratorSetReport` apply uniformly.  A set
    with no generators is marked degenerate.
    """
    if not rep.generators:
        return GeneratorSetReport(0.0, 0.0, 0.0, 0.0, 0.0, True)
    scale = max(1.0, max(frobenius(t) for t in rep.generators))
    herm = max(hermiticity_residual(t) for t in rep.generators) / scale
    trace = max(abs(np.trace(t)) for t in rep.generators) / scale
    g = rep.stacked()
    gram = np.einsum("aij,bji->ab", g, g, optimize=True)
    target = rep.trace_index * np.eye(rep.d)
    ortho = float(np.max(np.abs(gram - target))) / max(1.0, rep.trace_index)
    if rep.is_trivial():
        closure = 0.0
    else:
        try:
            constants = rep.constants
            recon = np.einsum("abc,cij->abij", constants.f, g, optimize=True) * 1j
            prod = np.einsum("aij,bjk->abik", g, g, optimize=True)
            comm = prod - np.swapaxes(prod, 0, 1)
            closure = float(
                np.max(np.sqrt(np.sum(np.abs(comm - recon) ** 2, axis=(2, 3))))
            ) / max(1.0, scale**2)
        except NotClosed:
            closure = float("inf")
    return GeneratorSetReport(herm, trace, ortho, closure, rep.trace_index, False)
