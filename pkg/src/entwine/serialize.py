"""Wire formats: complex numbers as [re, im] pairs, matrices row-major.

Every document here is plain JSON-compatible data; the HTTP service and
the CLI's structured output share these encoders.  Tensor indices in the
structure-constant listing are 0-based.
"""

from __future__ import annotations

import numpy as np

from .algebra import GeneratorSet, StructureConstants
from .errors import SchemaError
from .measure import FrequencyTable, JointDistribution, OutcomeDistribution


def complex_to_doc(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def complex_from_doc(doc) -> complex:
    if not isinstance(doc, (list, tuple)) or len(doc) != 2:
        raise SchemaError(f"complex numbers are [re, im] pairs, got {doc!r}")
    return complex(float(doc[0]), float(doc[1]))


def vector_to_doc(v: np.ndarray) -> list[list[float]]:
    return [complex_to_doc(z) for z in np.asarray(v).ravel()]


def vector_from_doc(doc) -> np.ndarray:
    return np.array([complex_from_doc(z) for z in doc], dtype=np.complex128)


def matrix_to_doc(m: np.ndarray) -> dict:
    m = np.asarray(m)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [complex_to_doc(z) for z in m.ravel(order="C")],
    }


def matrix_from_doc(doc) -> np.ndarray:
    try:
        rows, cols = int(doc["rows"]), int(doc["cols"])
        entries = doc["entries"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"matrix documents need rows/cols/entries: {exc}") from exc
    if len(entries) != rows * cols:
        raise SchemaError(
            f"matrix entries length {len(entries)} != rows*cols {rows * cols}"
        )
    flat = np.array([complex_from_doc(z) for z in entries], dtype=np.complex128)
    return flat.reshape(rows, cols)


def generator_set_to_doc(rep: GeneratorSet) -> dict:
    return {
        "algebra_id": rep.algebra_id,
        "d": rep.d,
        "d_r": rep.d_r,
        "trace_index": rep.trace_index,
        "generators": [matrix_to_doc(g) for g in rep.generators],
    }


def generator_set_from_doc(doc) -> GeneratorSet:
    try:
        algebra_id = doc["algebra_id"]
        mats = [matrix_from_doc(m) for m in doc["generators"]]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"generator set document malformed: {exc}") from exc
    return GeneratorSet.build(algebra_id, mats)


def structure_constants_to_doc(constants: StructureConstants) -> dict:
    return {
        "d": constants.d,
        "entries": [
            [a, b, c, value] for a, b, c, value in constants.nonzero_entries()
        ],
    }


def distribution_to_doc(dist: OutcomeDistribution, with_states: bool = True) -> dict:
    outcomes = []
    for o in dist.outcomes:
        entry = {"eigenvalue": o.eigenvalue, "probability": o.probability}
        if with_states and o.post_state is not None:
            entry["post_state"] = vector_to_doc(o.post_state)
        outcomes.append(entry)
    return {"outcomes": outcomes}


def joint_distribution_to_doc(dist: JointDistribution, with_states: bool = True) -> dict:
    outcomes = []
    for o in dist.outcomes:
        entry = {"values": list(o.values), "probability": o.probability}
        if with_states and o.post_state is not None:
            entry["post_state"] = vector_to_doc(o.post_state)
        outcomes.append(entry)
    return {"outcomes": outcomes}


def decomposition_to_doc(result, with_isometries: bool = False) -> dict:
    parts = []
    for label, mult, iso in result.parts:
        entry = {
            "name": label.name,
            "d_r": label.d_r,
            "multiplicity": mult,
            "c2": label.c2,
            "c3": label.c3,
            "residual": result.residual,
        }
        if with_isometries:
            entry["isometry"] = matrix_to_doc(iso)
        parts.append(entry)
    return {
        "parts": parts,
        "summary": result.summary(),
        "residual": result.residual,
        "total_dim": result.total_dim,
    }


def frequency_table_to_doc(table: FrequencyTable) -> dict:
    return table.as_doc()


def state_summary_doc(state: np.ndarray) -> dict:
    """Amplitudes plus display-ready magnitude and phase per direction."""
    amps = np.asarray(state)
    return {
        "amplitudes": vector_to_doc(amps),
        "magnitudes": [float(abs(z)) for z in amps],
        "phases": [float(np.angle(z)) for z in amps],
    }


def scenario_info_doc(scenario) -> dict:
    """Algebra and representation metadata for one scenario."""
    from .algebra import algebra_catalog, parse_su
    from .reps import quadratic_casimir, scalar_part, weights

    n = parse_su(scenario.algebra_id)
    info = algebra_catalog("a", n - 1)
    c2, c2_residual = scalar_part(quadratic_casimir(scenario.rep))
    doc = {
        "name": scenario.name,
        "algebra": scenario.algebra_id,
        "family": f"a{info.rank}",
        "rank": info.rank,
        "d": scenario.d,
        "d_r": scenario.d_r,
        "trace_index": scenario.rep.trace_index,
        "c2": c2,
        "c2_is_scalar": c2_residual <= 1e-9,
        "representation": scenario.representation_spec,
        "weights": [list(w) for w in weights(scenario.rep)],
        "options": dict(scenario.options),
        "derived": {k: list(map(float, v)) for k, v in scenario.derived.items()},
        "questions": scenario.question_names(),
        "warnings": list(scenario.warnings),
    }
    return doc
