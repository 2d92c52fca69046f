"""Questions, answer distributions, and state update.

A question is a unit-norm real combination of the generators; its
eigenvalues are the possible answers.  Probabilities are squared norms
of the state's projections onto the eigenvalue clusters, and answering
projects the state onto the observed cluster (degenerate answers keep
their full eigenspace; nothing is split arbitrarily).

``peek`` never touches the state; ``ask`` is the committal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import GeneratorSet
from .errors import (
    BadParameter,
    DimensionMismatch,
    LengthMismatch,
    NonCommuting,
    NotNormalized,
)
from .linalg import EigenSystem, hermitian_eigen, simultaneous_eigenbasis, unitary_exp
from .streams import trial_draws

#: probabilities below this are clamped to zero and dropped from sampling
PROBABILITY_FLOOR = 1e-14

#: acceptable deviation of ||coefficients|| from one
COEFF_NORM_TOL = 1e-9

#: acceptable deviation of ||state|| from one
STATE_NORM_TOL = 1e-12


def unit_coefficients(coeffs) -> np.ndarray:
    """Normalize a real coefficient vector to unit length."""
    c = np.asarray(coeffs, dtype=np.float64)
    norm = float(np.linalg.norm(c))
    if norm == 0.0:
        raise NotNormalized("cannot normalize a zero coefficient vector")
    return c / norm


def as_state(vec) -> np.ndarray:
    """Validate and return a unit-norm complex state vector."""
    psi = np.asarray(vec, dtype=np.complex128)
    if psi.ndim != 1:
        raise DimensionMismatch(f"state must be a vector, got ndim={psi.ndim}")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > STATE_NORM_TOL:
        raise NotNormalized(f"state norm is {norm!r}, expected 1")
    return psi


def uniform_state(d_r: int) -> np.ndarray:
    """The even superposition (1, ..., 1)/sqrt(d_r)."""
    return np.full(d_r, 1.0 / np.sqrt(d_r), dtype=np.complex128)


@dataclass(frozen=True)
class Observable:
    """A question: unit-norm real combination of generators, resolved to
    its Hermitian matrix."""

    coefficients: np.ndarray
    matrix: np.ndarray
    name: str | None = None

    @property
    def d_r(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def eigen(self) -> EigenSystem:
        return hermitian_eigen(self.matrix)


def compose_question(
    coeffs, rep: GeneratorSet, name: str | None = None
) -> Observable:
    """Observable from a unit-norm coefficient vector over the generators.

    Callers normalize first (see :func:`unit_coefficients`); a vector off
    unit length by more than 1e-9 is an error, not silently rescaled.
    """
    c = np.asarray(coeffs, dtype=np.float64).copy()
    norm = float(np.linalg.norm(c))
    if abs(norm - 1.0) > COEFF_NORM_TOL:
        raise NotNormalized(f"coefficient norm is {norm!r}, expected 1")
    if len(c) != rep.d:
        raise LengthMismatch(f"expected {rep.d} coefficients, got {len(c)}")
    matrix = np.einsum("a,aij->ij", c, rep.stacked())
    c.flags.writeable = False
    matrix.flags.writeable = False
    return Observable(c, matrix, name)


@dataclass(frozen=True)
class Outcome:
    """One possible answer: eigenvalue, its probability, and the state
    after receiving it (None when the probability is negligible)."""

    eigenvalue: float
    probability: float
    post_state: np.ndarray | None


@dataclass(frozen=True)
class OutcomeDistribution:
    outcomes: tuple[Outcome, ...]

    def probabilities(self) -> list[float]:
        return [o.probability for o in self.outcomes]

    def eigenvalues(self) -> list[float]:
        return [o.eigenvalue for o in self.outcomes]

    def sample(self, u: float) -> int:
        """Index of the outcome owning position u of the unit interval."""
        acc = 0.0
        supported = [
            k for k, o in enumerate(self.outcomes)
            if o.probability >= PROBABILITY_FLOOR
        ]
        for k in supported:
            acc += self.outcomes[k].probability
            if u < acc:
                return k
        return supported[-1]


def _check_dims(state: np.ndarray, q: Observable) -> None:
    if len(state) != q.d_r:
        raise DimensionMismatch(
            f"state has dimension {len(state)}, question acts on {q.d_r}"
        )


def peek(state, q: Observable) -> OutcomeDistribution:
    """Answer distribution without collapsing the state.

    One outcome per eigenvalue cluster; degenerate answers carry their
    whole eigenspace projector.
    """
    psi = as_state(state)
    _check_dims(psi, q)
    eig = q.eigen
    outcomes = []
    for j in range(eig.n_clusters):
        basis = eig.cluster_basis(j)
        amps = basis.conj().T @ psi
        p = float(np.real(np.vdot(amps, amps)))
        p = 0.0 if p < PROBABILITY_FLOOR else min(p, 1.0)
        post = None
        if p >= PROBABILITY_FLOOR:
            post = (basis @ amps) / np.sqrt(p)
        outcomes.append(Outcome(eig.cluster_value(j), p, post))
    return OutcomeDistribution(tuple(outcomes))


def ask(state, q: Observable, rng: np.random.Generator) -> tuple[float, np.ndarray]:
    """Commit to the question: sample an answer, return it with the
    projected state.  Deterministic for a given generator state."""
    dist = peek(state, q)
    k = dist.sample(rng.random())
    outcome = dist.outcomes[k]
    return outcome.eigenvalue, outcome.post_state


@dataclass(frozen=True)
class JointOutcome:
    values: tuple[float, ...]
    probability: float
    post_state: np.ndarray | None


@dataclass(frozen=True)
class JointDistribution:
    outcomes: tuple[JointOutcome, ...]

    def probabilities(self) -> list[float]:
        return [o.probability for o in self.outcomes]

    def marginal(self, position: int) -> dict[float, float]:
        """Probability per eigenvalue of the question at ``position``."""
        acc: dict[float, float] = {}
        for o in self.outcomes:
            acc[o.values[position]] = acc.get(o.values[position], 0.0) + o.probability
        return acc


def joint_peek(state, questions) -> JointDistribution:
    """Distribution over simultaneous answers to commuting questions.

    Raises ``NonCommuting`` when any pair of question matrices fails to
    commute; the lattice of outcomes is the set of joint eigenvalue
    tuples, which is generally sparser than the product of the
    individual spectra.
    """
    psi = as_state(state)
    qs = list(questions)
    if not qs:
        raise BadParameter("need at least one question")
    for q in qs:
        _check_dims(psi, q)
    try:
        tuples, basis = simultaneous_eigenbasis([q.matrix for q in qs])
    except NonCommuting:
        raise
    # columns of one leaf share the identical tuple object
    groups: list[tuple[tuple[float, ...], list[int]]] = []
    for idx, w in enumerate(tuples):
        if groups and groups[-1][0] is w:
            groups[-1][1].append(idx)
        else:
            groups.append((w, [idx]))
    outcomes = []
    for w, cols in groups:
        sub = basis[:, cols]
        amps = sub.conj().T @ psi
        p = float(np.real(np.vdot(amps, amps)))
        p = 0.0 if p < PROBABILITY_FLOOR else min(p, 1.0)
        post = (sub @ amps) / np.sqrt(p) if p >= PROBABILITY_FLOOR else None
        outcomes.append(JointOutcome(tuple(w), p, post))
    return JointDistribution(tuple(outcomes))


def expectation(state, q: Observable) -> float:
    """Mean answer psi^dag H psi."""
    psi = as_state(state)
    _check_dims(psi, q)
    return float(np.real(np.vdot(psi, q.matrix @ psi)))


def evolve(state, h: Observable, theta: float) -> np.ndarray:
    """Rotate the state by exp(-i theta H); norm is preserved.

    This is the pre-measurement nudge: steering a system toward or away
    from an answer before committing to the question.
    """
    psi = as_state(state)
    _check_dims(psi, h)
    return unitary_exp(h.matrix, theta) @ psi


@dataclass(frozen=True)
class FrequencyTable:
    """Joint outcome counts from repeated measurement chains."""

    questions: tuple[str, ...]
    trials: int
    seed: int
    counts: tuple[tuple[tuple[float, ...], int], ...]

    def frequency(self, outcomes: tuple[float, ...], tol: float = 1e-9) -> float:
        total = 0
        for values, count in self.counts:
            if len(values) == len(outcomes) and all(
                abs(a - b) <= tol for a, b in zip(values, outcomes)
            ):
                total += count
        return total / self.trials

    def conditional(self, position: int, value: float,
                    given: dict[int, float], tol: float = 1e-9) -> float:
        """Frequency of ``value`` at ``position`` among chains matching
        ``given`` (position -> value)."""
        hit = 0
        base = 0
        for values, count in self.counts:
            if all(abs(values[p] - v) <= tol for p, v in given.items()):
                base += count
                if abs(values[position] - value) <= tol:
                    hit += count
        if base == 0:
            return float("nan")
        return hit / base

    def as_doc(self) -> dict:
        return {
            "chain": list(self.questions),
            "trials": self.trials,
            "seed": self.seed,
            "counts": [
                {"outcomes": list(values), "count": count}
                for values, count in self.counts
            ],
        }


def simulate_sequence(initial, questions, trials: int, seed: int) -> FrequencyTable:
    """Run independent measurement chains and tally joint outcomes.

    Each trial starts from ``initial`` and asks the questions in order,
    threading the projected state forward.  Trial t consumes the
    counter-based uniform stream (seed, t), so results are identical
    whether trials run sequentially, in parallel, or vectorized (as
    here).
    """
    if trials < 1:
        raise BadParameter(f"need at least one trial, got {trials}")
    psi = as_state(initial)
    qs = list(questions)
    names = tuple(q.name or f"q{k}" for k, q in enumerate(qs))
    if not qs:
        return FrequencyTable(names, trials, seed, ((tuple(), trials),))
    for q in qs:
        _check_dims(psi, q)

    clusters = []
    for q in qs:
        eig = q.eigen
        clusters.append(
            [(eig.cluster_value(j), eig.cluster_basis(j)) for j in range(eig.n_clusters)]
        )

    draws = trial_draws(seed, trials, len(qs))
    states = np.broadcast_to(psi, (trials, len(psi))).copy()
    picks = np.zeros((trials, len(qs)), dtype=np.int64)
    for step, per_question in enumerate(clusters):
        probs = np.empty((trials, len(per_question)))
        amps = []
        for j, (_, basis) in enumerate(per_question):
            a = states @ basis.conj()
            amps.append(a)
            probs[:, j] = np.einsum("tm,tm->t", a, a.conj(), optimize=True).real
        probs[probs < PROBABILITY_FLOOR] = 0.0
        cum = np.cumsum(probs, axis=1)
        chosen = (draws[:, step : step + 1] >= cum).sum(axis=1)
        chosen = np.minimum(chosen, len(per_question) - 1)
        picks[:, step] = chosen
        for j, (_, basis) in enumerate(per_question):
            rows = np.flatnonzero(chosen == j)
            if rows.size == 0:
                continue
            projected = amps[j][rows] @ basis.T
            norms = np.sqrt(probs[rows, j])
            states[rows] = projected / norms[:, None]

    eigenvalue_of = [
        np.array([value for value, _ in per_question])
        for per_question in clusters
    ]
    unique_rows, counts = np.unique(picks, axis=0, return_counts=True)
    table = []
    for row, count in zip(unique_rows, counts):
        values = tuple(
            float(eigenvalue_of[step][row[step]]) for step in range(len(qs))
        )
        table.append((values, int(count)))
    table.sort(key=lambda item: item[0])
    return FrequencyTable(names, trials, seed, tuple(table))
