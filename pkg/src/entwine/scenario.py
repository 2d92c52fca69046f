"""Scenarios bind drink names to generators; sessions thread state and history.

A scenario document is plain JSON: algebra, representation recipe, the
option-name-to-generator map, optional derived questions (unit-norm
coefficient vectors), and an initial-state recipe.  Two-diner scenarios
use a tensor representation; each participant's copy of an option is
exposed with an ``@1``/``@2`` suffix, and the bare name asks both at
once (the summed generators).

Sessions record every mutation.  Ask events store the per-event seed
(derived deterministically from the session seed and event index), so a
history replays bit-for-bit.
"""

from __future__ import annotations

import re
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone

import jsonschema
import numpy as np

from .algebra import GeneratorSet, normalize_algebra_id, parse_su, su_fundamental
from .errors import (
    SchemaError,
    UnknownName,
    UnsupportedAlgebra,
    ValidationError,
)
from .measure import (
    Observable,
    compose_question,
    peek,
    evolve as evolve_state,
    uniform_state,
)
from .reps import adjoint_rep, conjugate_rep, embed_in_product, su2_spin_irrep, tensor_rep
from .serialize import vector_from_doc, vector_to_doc
from .streams import derive_seed

_PARTICIPANT = re.compile(r"^(?P<base>.+)@(?P<slot>[12])$")

SCENARIO_SCHEMA = {
    "type": "object",
    "required": ["name", "algebra", "representation", "options"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "algebra": {"type": "string"},
        "representation": {"$ref": "#/$defs/rep"},
        "options": {
            "type": "object",
            "additionalProperties": {"type": "integer", "minimum": 0},
        },
        "derived": {
            "type": "object",
            "additionalProperties": {
                "type": "array",
                "items": {"type": "number"},
                "minItems": 1,
            },
        },
        "initial": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"enum": ["uniform", "eigenstate", "explicit"]},
                "question": {"type": "string"},
                "rank": {"type": "integer", "minimum": 0},
                "amplitudes": {"type": "array"},
            },
        },
    },
    "$defs": {
        "rep": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {
                    "enum": ["fundamental", "conjugate", "adjoint", "spin", "tensor"]
                },
                "d_r": {"type": "integer", "minimum": 1},
                "tensor": {
                    "type": "array",
                    "minItems": 2,
                    "maxItems": 2,
                    "items": {"$ref": "#/$defs/rep"},
                },
            },
        }
    },
}

SESSION_SCHEMA = {
    "type": "object",
    "required": ["scenario", "seed", "amplitudes", "history"],
    "properties": {
        "scenario": {"type": "object"},
        "seed": {"type": "integer"},
        "amplitudes": {"type": "array"},
        "history": {"type": "array", "items": {"type": "object"}},
        "id": {"type": "string"},
    },
}


def _schema_check(doc, schema) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        raise SchemaError(exc.message, path=exc.json_path) from exc


def build_representation(algebra_id: str, spec: dict) -> GeneratorSet:
    """Construct the generator set a representation recipe describes."""
    n = parse_su(algebra_id)
    kind = spec["kind"]
    if kind == "fundamental":
        return su_fundamental(n)
    if kind == "conjugate":
        return conjugate_rep(su_fundamental(n))
    if kind == "adjoint":
        return adjoint_rep(su_fundamental(n).constants, algebra_id=f"su{n}")
    if kind == "spin":
        if n != 2:
            raise ValidationError("spin representations are an su2 recipe")
        if "d_r" not in spec:
            raise ValidationError("spin representation needs d_r")
        return su2_spin_irrep(spec["d_r"])
    if kind == "tensor":
        if "tensor" not in spec:
            raise ValidationError("tensor representation needs two factor recipes")
        left = build_representation(algebra_id, spec["tensor"][0])
        right = build_representation(algebra_id, spec["tensor"][1])
        return tensor_rep(left, right)
    raise ValidationError(f"unknown representation kind {kind!r}")


@dataclass(frozen=True)
class Scenario:
    """Validated scenario: representation built, names resolved, initial
    state materialized."""

    name: str
    algebra_id: str
    representation_spec: dict
    rep: GeneratorSet
    factors: tuple[GeneratorSet, ...] | None
    options: dict[str, int]
    derived: dict[str, np.ndarray]
    initial_spec: dict
    initial_state: np.ndarray
    warnings: tuple[str, ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def d(self) -> int:
        return self.rep.d

    @property
    def d_r(self) -> int:
        return self.rep.d_r

    def question_names(self) -> list[str]:
        names = list(self.options) + list(self.derived)
        if self.factors is not None:
            for slot in (1, 2):
                names.extend(f"{opt}@{slot}" for opt in self.options)
        return names

    def document(self) -> dict:
        doc = {
            "name": self.name,
            "algebra": self.algebra_id,
            "representation": self.representation_spec,
            "options": dict(self.options),
            "initial": self.initial_spec,
        }
        if self.derived:
            doc["derived"] = {k: list(map(float, v)) for k, v in self.derived.items()}
        return doc


def load_scenario(doc: dict) -> Scenario:
    """Validate a scenario document and build everything it names.

    Schema violations raise ``SchemaError`` with the failing path;
    semantic problems (norms, index bounds, unknown names) raise
    ``ValidationError``.
    """
    _schema_check(doc, SCENARIO_SCHEMA)
    try:
        algebra_id = normalize_algebra_id(doc["algebra"])
    except UnsupportedAlgebra:
        raise UnsupportedAlgebra(f"unknown algebra {doc['algebra']!r}")

    rep_spec = doc["representation"]
    rep = build_representation(algebra_id, rep_spec)
    factors = None
    if rep_spec["kind"] == "tensor":
        left = build_representation(algebra_id, rep_spec["tensor"][0])
        right = build_representation(algebra_id, rep_spec["tensor"][1])
        factors = (
            embed_in_product(left, right.d_r, 0),
            embed_in_product(right, left.d_r, 1),
        )

    options: dict[str, int] = dict(doc["options"])
    seen = set()
    for name, index in options.items():
        if not 0 <= index < rep.d:
            raise ValidationError(
                f"option {name!r} uses generator {index}, valid range is 0..{rep.d - 1}"
            )
        if index in seen:
            raise ValidationError(f"option {name!r} reuses generator {index}")
        seen.add(index)
        if _PARTICIPANT.match(name):
            raise ValidationError(
                f"option name {name!r} collides with participant suffix syntax"
            )

    derived: dict[str, np.ndarray] = {}
    for name, coeffs in doc.get("derived", {}).items():
        vec = np.asarray(coeffs, dtype=np.float64)
        if len(vec) != rep.d:
            raise ValidationError(
                f"derived question {name!r} has {len(vec)} coefficients, expected {rep.d}"
            )
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > 1e-9:
            raise ValidationError(
                f"derived question {name!r} has norm {norm!r}, expected 1"
            )
        if name in options:
            raise ValidationError(f"derived question {name!r} shadows an option")
        derived[name] = vec

    initial_spec = doc.get("initial", {"kind": "uniform"})
    scenario = Scenario(
        name=doc["name"],
        algebra_id=algebra_id,
        representation_spec=rep_spec,
        rep=rep,
        factors=factors,
        options=options,
        derived=derived,
        initial_spec=initial_spec,
        initial_state=uniform_state(rep.d_r),
    )
    state, warnings = _resolve_initial(scenario, initial_spec)
    object.__setattr__(scenario, "initial_state", state)
    object.__setattr__(scenario, "warnings", tuple(warnings))
    return scenario


def _resolve_initial(scenario: Scenario, spec: dict) -> tuple[np.ndarray, list[str]]:
    warnings: list[str] = []
    kind = spec.get("kind", "uniform")
    if kind == "uniform":
        return uniform_state(scenario.d_r), warnings
    if kind == "eigenstate":
        if "question" not in spec or "rank" not in spec:
            raise ValidationError("eigenstate initial needs question and rank")
        q = resolve_question(scenario, spec["question"])
        rank = spec["rank"]
        if not 0 <= rank < scenario.d_r:
            raise ValidationError(
                f"eigenstate rank {rank} out of range 0..{scenario.d_r - 1}"
            )
        eig = q.eigen
        for lo, hi in eig.clusters():
            if lo <= rank < hi and hi - lo > 1:
                warnings.append(
                    f"initial eigenstate rank {rank} sits in a degenerate cluster "
                    f"({hi - lo} states); using the phase-convention first vector"
                )
                rank = lo
                break
        return eig.eigenvectors[:, rank].copy(), warnings
    if kind == "explicit":
        if "amplitudes" not in spec:
            raise ValidationError("explicit initial needs amplitudes")
        vec = vector_from_doc(spec["amplitudes"])
        if len(vec) != scenario.d_r:
            raise ValidationError(
                f"initial state has {len(vec)} amplitudes, expected {scenario.d_r}"
            )
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > 1e-9:
            raise ValidationError(f"initial state norm is {norm!r}, expected 1")
        return vec / norm, warnings
    raise ValidationError(f"unknown initial state kind {kind!r}")


def resolve_question(scenario: Scenario, ref) -> Observable:
    """Observable for an option name, derived name, participant-suffixed
    name, or a raw unit-norm coefficient vector."""
    if isinstance(ref, str):
        cached = scenario._cache.get(ref)
        if cached is not None:
            return cached
        q = _resolve_named(scenario, ref)
        scenario._cache[ref] = q
        return q
    coeffs = np.asarray(ref, dtype=np.float64)
    return compose_question(coeffs, scenario.rep, None)


def _resolve_named(scenario: Scenario, name: str) -> Observable:
    if name in scenario.options:
        index = scenario.options[name]
        coeffs = np.zeros(scenario.d)
        coeffs[index] = 1.0
        return compose_question(coeffs, scenario.rep, name)
    if name in scenario.derived:
        return compose_question(scenario.derived[name], scenario.rep, name)
    match = _PARTICIPANT.match(name)
    if match and scenario.factors is not None:
        base, slot = match.group("base"), int(match.group("slot"))
        if base in scenario.options:
            index = scenario.options[base]
            coeffs = np.zeros(scenario.d)
            coeffs[index] = 1.0
            return compose_question(coeffs, scenario.factors[slot - 1], name)
        if base in scenario.derived:
            return compose_question(
                scenario.derived[base], scenario.factors[slot - 1], name
            )
    raise UnknownName(f"scenario {scenario.name!r} has no question {name!r}")


# ---------------------------------------------------------------------------
# sessions

def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


@dataclass
class Session:
    """One questioning run: current state plus the full mutation log."""

    id: str
    scenario: Scenario
    seed: int
    state: np.ndarray
    history: list[dict] = field(default_factory=list)
    seq: int = 0

    def snapshot(self) -> dict:
        return {
            "id": self.id,
            "scenario": self.scenario.document(),
            "seed": self.seed,
            "amplitudes": vector_to_doc(self.state),
            "history": [dict(e) for e in self.history],
        }


def new_session(
    scenario: Scenario, seed: int | None = None, session_id: str | None = None
) -> Session:
    if seed is None:
        seed = int(np.random.SeedSequence().entropy % (1 << 63))
    return Session(
        id=session_id or uuid.uuid4().hex[:12],
        scenario=scenario,
        seed=int(seed),
        state=scenario.initial_state.copy(),
    )


def _question_ref(ref) -> str | list:
    return ref if isinstance(ref, str) else [float(x) for x in ref]


def apply_ask(session: Session, ref) -> dict:
    """Commit to a question; returns the recorded event."""
    q = resolve_question(session.scenario, ref)
    dist = peek(session.state, q)
    event_seed = derive_seed(session.seed, session.seq)
    draw = float(np.random.default_rng(event_seed).random())
    index = dist.sample(draw)
    outcome = dist.outcomes[index]
    session.state = outcome.post_state
    event = {
        "seq": session.seq,
        "kind": "ask",
        "question": _question_ref(ref),
        "seed": event_seed,
        "outcome_index": index,
        "eigenvalue": outcome.eigenvalue,
        "time": _now(),
    }
    session.history.append(event)
    session.seq += 1
    return event


def apply_evolve(session: Session, ref, theta: float) -> dict:
    """Rotate the state under a question's generator by angle theta."""
    q = resolve_question(session.scenario, ref)
    session.state = evolve_state(session.state, q, theta)
    event = {
        "seq": session.seq,
        "kind": "evolve",
        "question": _question_ref(ref),
        "theta": float(theta),
        "time": _now(),
    }
    session.history.append(event)
    session.seq += 1
    return event


def apply_reset(session: Session) -> dict:
    """Return to the scenario's initial state; the reset itself is logged."""
    session.state = session.scenario.initial_state.copy()
    event = {"seq": session.seq, "kind": "reset", "time": _now()}
    session.history.append(event)
    session.seq += 1
    return event


def history_fingerprint(history: list[dict]) -> list[dict]:
    """History with wall-clock fields dropped: the deterministic part
    that must be identical for identical seeds."""
    out = []
    for event in history:
        out.append({k: v for k, v in event.items() if k != "time"})
    return out


def replay(scenario: Scenario, history: list[dict]) -> np.ndarray:
    """Recompute the state a history leads to, verifying recorded answers.

    Raises ``ValidationError`` if a recorded outcome disagrees with the
    re-sampled one; that means the snapshot was edited or corrupted.
    """
    state = scenario.initial_state.copy()
    for event in history:
        kind = event.get("kind")
        if kind == "ask":
            q = resolve_question(scenario, event["question"])
            dist = peek(state, q)
            draw = float(np.random.default_rng(event["seed"]).random())
            index = dist.sample(draw)
            if index != event["outcome_index"]:
                raise ValidationError(
                    f"replay diverged at event {event.get('seq')}: "
                    f"sampled outcome {index}, recorded {event['outcome_index']}"
                )
            state = dist.outcomes[index].post_state
        elif kind == "evolve":
            q = resolve_question(scenario, event["question"])
            state = evolve_state(state, q, event["theta"])
        elif kind == "reset":
            state = scenario.initial_state.copy()
        else:
            raise ValidationError(f"unknown history event kind {kind!r}")
    return state


def session_from_snapshot(doc: dict, verify: bool = True) -> Session:
    """Rebuild a session from its snapshot document."""
    _schema_check(doc, SESSION_SCHEMA)
    scenario = load_scenario(doc["scenario"])
    state = vector_from_doc(doc["amplitudes"])
    history = [dict(e) for e in doc["history"]]
    session = Session(
        id=doc.get("id") or uuid.uuid4().hex[:12],
        scenario=scenario,
        seed=int(doc["seed"]),
        state=state,
        history=history,
        seq=1 + max((e.get("seq", -1) for e in history), default=-1),
    )
    if verify and history:
        replayed = replay(scenario, history)
        if np.linalg.norm(replayed - state) > 1e-10:
            raise ValidationError("snapshot state disagrees with its history replay")
    return session


# ---------------------------------------------------------------------------
# built-in scenarios

_SQRT_HALF = float(1.0 / np.sqrt(2.0))

CHILD_SU2 = {
    "name": "child-su2",
    "algebra": "su2",
    "representation": {"kind": "fundamental"},
    "options": {"cola": 0, "apple-juice": 1, "water": 2},
    "derived": {"lemonade": [_SQRT_HALF, 0.0, _SQRT_HALF]},
    "initial": {"kind": "uniform"},
}

ADULT_SU3 = {
    "name": "adult-su3",
    "algebra": "su3",
    "representation": {"kind": "fundamental"},
    "options": {
        "wine": 0,
        "whisky": 1,
        "beer": 2,
        "coffee": 3,
        "tea": 4,
        "lemonade": 5,
        "cola": 6,
        "water": 7,
    },
    "derived": {
        "champagne": [0.95, 0.0, 0.0, 0.0, 0.0, float(np.sqrt(1 - 0.95**2)), 0.0, 0.0],
        "lager": [0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    },
    "initial": {"kind": "uniform"},
}

TWO_CHILDREN_SU2 = {
    "name": "two-children-su2",
    "algebra": "su2",
    "representation": {
        "kind": "tensor",
        "tensor": [{"kind": "fundamental"}, {"kind": "fundamental"}],
    },
    "options": {"cola": 0, "apple-juice": 1, "water": 2},
    "initial": {"kind": "uniform"},
}

BUILTIN_DOCS = {
    doc["name"]: doc for doc in (CHILD_SU2, ADULT_SU3, TWO_CHILDREN_SU2)
}


def builtin_names() -> list[str]:
    return list(BUILTIN_DOCS)


def get_scenario(name_or_doc) -> Scenario:
    """Load a built-in scenario by name, or any scenario document."""
    if isinstance(name_or_doc, str):
        if name_or_doc not in BUILTIN_DOCS:
            raise UnknownName(f"no built-in scenario named {name_or_doc!r}")
        return load_scenario(BUILTIN_DOCS[name_or_doc])
    return load_scenario(name_or_doc)
