"""Quantum models and bounds for the bipartite inequalities.

Everything is real-valued: states are real unit vectors and measurements
are real symmetric projectors (the stored projector is the outcome-0
effect; outcome 1 is its complement).  Includes Bell operators, see-saw
optimization of state and measurements, a dedicated two-angle eigenvalue
scan for the first pentagonal inequality, the block reduction that shows
two qubits suffice, Schmidt analysis, and the qutrit construction reaching
the pentagon's Lovasz number.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import CapacityError, InvalidInputError
from .numerics import as_sym_matrix, svd
from .scenarios import Behavior, Event, Inequality, named_inequality

MAX_LOCAL_DIM = 4
_PROJECTOR_TOL = 1e-10


@dataclass(frozen=True)
class QuantumModel:
    """Bipartite pure state plus per-setting binary projective measurements."""

    dims: tuple
    state: np.ndarray
    alice: tuple  # outcome-0 projector per setting, each dims[0] x dims[0]
    bob: tuple

    def __post_init__(self):
        d_a, d_b = int(self.dims[0]), int(self.dims[1])
        object.__setattr__(self, "dims", (d_a, d_b))
        state = np.asarray(self.state, dtype=float).reshape(-1)
        if state.shape[0] != d_a * d_b:
            raise InvalidInputError(f"state length {state.shape[0]} != {d_a}*{d_b}")
        if abs(np.linalg.norm(state) - 1.0) > 1e-12:
            raise InvalidInputError("state is not normalized (within 1e-12)")
        state.flags.writeable = False
        object.__setattr__(self, "state", state)
        for label, projs, d in (("alice", self.alice, d_a), ("bob", self.bob, d_b)):
            validated = []
            for k, p in enumerate(projs):
                p = np.asarray(p, dtype=float)
                if p.shape != (d, d):
                    raise InvalidInputError(f"{label} projector {k} is not {d}x{d}")
                if np.max(np.abs(p - p.T)) > _PROJECTOR_TOL:
                    raise InvalidInputError(f"{label} projector {k} is not symmetric")
                if np.max(np.abs(p @ p - p)) > _PROJECTOR_TOL:
                    raise InvalidInputError(f"{label} projector {k} is not idempotent")
                p = (p + p.T) / 2.0
                p.flags.writeable = False
                validated.append(p)
            object.__setattr__(self, label, tuple(validated))


def projector_onto(vector) -> np.ndarray:
    """Rank-1 projector onto the direction of a real vector."""
    v = np.asarray(vector, dtype=float).reshape(-1)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        raise InvalidInputError("cannot project onto the zero vector")
    v = v / norm
    return np.outer(v, v)


def qubit_projector(angle: float) -> np.ndarray:
    """Projector onto the unit vector (cos angle, sin angle)."""
    return projector_onto((np.cos(angle), np.sin(angle)))


def _effect(projector: Optional[np.ndarray], outcome: int, dim: int) -> np.ndarray:
    if projector is None:
        return np.eye(dim)
    return projector if outcome == 0 else np.eye(dim) - projector


def _term_effects(term: Event, alice, bob, dims):
    d_a, d_b = dims
    if term.alice is None:
        op_a = np.eye(d_a)
    else:
        x, a = term.alice
        if x >= len(alice):
            raise InvalidInputError(f"no Alice measurement for setting {x}")
        op_a = _effect(alice[x], a, d_a)
    if term.bob is None:
        op_b = np.eye(d_b)
    else:
        y, b = term.bob
        if y >= len(bob):
            raise InvalidInputError(f"no Bob measurement for setting {y}")
        op_b = _effect(bob[y], b, d_b)
    return op_a, op_b


def bell_operator(iq: Inequality, model: QuantumModel) -> np.ndarray:
    """Sum over terms of (Alice effect) x (Bob effect); wildcard -> identity."""
    return _bell_matrix(iq, model.alice, model.bob, model.dims)


def _bell_matrix(iq, alice, bob, dims) -> np.ndarray:
    d_a, d_b = dims
    s = np.zeros((d_a * d_b, d_a * d_b))
    for term in iq.terms:
        op_a, op_b = _term_effects(term, alice, bob, dims)
        s += np.kron(op_a, op_b)
    return (s + s.T) / 2.0


def behavior_of(model: QuantumModel) -> Behavior:
    """Full probability table of the model over its declared settings."""
    d_a, d_b = model.dims
    psi = model.state.reshape(d_a, d_b)
    tables = {}
    for x, pa in enumerate(model.alice):
        for y, pb in enumerate(model.bob):
            block = np.zeros((2, 2))
            for a in range(2):
                ea = _effect(pa, a, d_a)
                for b in range(2):
                    eb = _effect(pb, b, d_b)
                    block[a, b] = float(np.sum(psi * (ea @ psi @ eb)))
            tables[(x, y)] = block
    return Behavior(tables)


def schmidt(state, dims) -> np.ndarray:
    """Descending Schmidt coefficients of a bipartite real unit vector."""
    d_a, d_b = int(dims[0]), int(dims[1])
    v = np.asarray(state, dtype=float).reshape(-1)
    if abs(np.linalg.norm(v) - 1.0) > 1e-10:
        raise InvalidInputError("state is not normalized")
    return svd(v.reshape(d_a, d_b)).singular_values


def _positive_eigenspace_projector(f: np.ndarray) -> np.ndarray:
    # strictly positive eigenvalues only; ties at zero are excluded
    w, v = np.linalg.eigh((f + f.T) / 2.0)
    cut = 1e-11 * max(1.0, float(np.abs(w).max()))
    keep = v[:, w > cut]
    return keep @ keep.T


def _seesaw_once(iq, dims, rng):
    d_a, d_b = dims
    alice = [projector_onto(rng.standard_normal(d_a)) for _ in range(iq.alice_settings)]
    bob = [projector_onto(rng.standard_normal(d_b)) for _ in range(iq.bob_settings)]
    state = rng.standard_normal(d_a * d_b)
    state /= np.linalg.norm(state)

    value = -np.inf
    stall = 0
    trace = []
    for _ in range(10_000):
        s = _bell_matrix(iq, alice, bob, dims)
        w, v = np.linalg.eigh(s)
        new_value = float(w[-1])
        trace.append(new_value)
        state = v[:, -1]
        psi = state.reshape(d_a, d_b)

        for x in range(iq.alice_settings):
            f = np.zeros((d_a, d_a))
            for term in iq.terms:
                if term.alice is None or term.alice[0] != x:
                    continue
                _, op_b = _term_effects(term, alice, bob, dims)
                m = psi @ op_b @ psi.T
                f += m if term.alice[1] == 0 else -m
            alice[x] = _positive_eigenspace_projector(f)
        for y in range(iq.bob_settings):
            f = np.zeros((d_b, d_b))
            for term in iq.terms:
                if term.bob is None or term.bob[0] != y:
                    continue
                op_a, _ = _term_effects(term, alice, bob, dims)
                m = psi.T @ op_a @ psi
                f += m if term.bob[1] == 0 else -m
            bob[y] = _positive_eigenspace_projector(f)

        if new_value - value < 1e-12:
            stall += 1
            if stall >= 2:
                value = max(value, new_value)
                break
        else:
            stall = 0
        value = max(value, new_value)

    s = _bell_matrix(iq, alice, bob, dims)
    w, v = np.linalg.eigh(s)
    model = QuantumModel(dims, v[:, -1], tuple(alice), tuple(bob))
    return float(w[-1]), model, trace


def qmax_seesaw(iq: Inequality, dims=(2, 2), restarts: int = 32, seed: int = 0):
    """Best see-saw value over seeded restarts, with the achieving model.

    Alternates the state (top eigenvector of the Bell operator) with the
    measurements (projector onto the strictly positive eigenspace of each
    setting's effective operator); the value is monotone along a run.
    Restart r uses seed + r, and ties keep the lowest restart index.
    """
    d_a, d_b = int(dims[0]), int(dims[1])
    if d_a > MAX_LOCAL_DIM or d_b > MAX_LOCAL_DIM:
        raise CapacityError(f"local dimensions limited to {MAX_LOCAL_DIM}")
    if restarts < 1:
        raise InvalidInputError("restarts must be >= 1")
    best_value, best_model = -np.inf, None
    for r in range(restarts):
        value, model, _ = _seesaw_once(iq, (d_a, d_b), np.random.default_rng(seed + r))
        if value > best_value:
            best_value, best_model = value, model
    return best_value, best_model


class ScanResult(NamedTuple):
    value: float
    angles: tuple
    model: QuantumModel


def qmax_scan_ineq2() -> ScanResult:
    """Two-angle eigenvalue maximization for the first pentagonal inequality.

    Both setting-0 measurements are fixed to the sigma_z projector; the
    setting-1 projectors lie in the real plane at angles (theta_a, theta_b),
    which covers every real-qubit model up to local rotations.  A 181x181
    coarse grid over [0, pi]^2 seeds a pattern search refined to a 1e-10
    step.  The model's state is the Bell operator's top eigenvector.
    """
    iq = named_inequality("pentagon-1")
    sigma_z0 = np.diag([1.0, 0.0])

    def top_eig(theta_a, theta_b):
        s = _bell_matrix(
            iq,
            [sigma_z0, qubit_projector(theta_a)],
            [sigma_z0, qubit_projector(theta_b)],
            (2, 2),
        )
        return float(np.linalg.eigvalsh(s)[-1])

    grid = np.linspace(0.0, np.pi, 181)
    best = (-np.inf, 0.0, 0.0)
    for ta in grid:
        for tb in grid:
            v = top_eig(ta, tb)
            if v > best[0]:
                best = (v, ta, tb)

    value, ta, tb = best
    step = grid[1] - grid[0]
    while step > 1e-10:
        improved = False
        for da, db in ((step, 0), (-step, 0), (0, step), (0, -step), (step, step), (step, -step), (-step, step), (-step, -step)):
            v = top_eig(ta + da, tb + db)
            if v > value:
                value, ta, tb = v, ta + da, tb + db
                improved = True
        if not improved:
            step /= 2.0

    alice = (sigma_z0, qubit_projector(ta))
    bob = (sigma_z0, qubit_projector(tb))
    s = _bell_matrix(iq, alice, bob, (2, 2))
    _, v = np.linalg.eigh(s)
    model = QuantumModel((2, 2), v[:, -1], alice, bob)
    return ScanResult(value, (float(ta), float(tb)), model)


@dataclass(frozen=True)
class BlockReduction:
    """Block-diagonal form of P1 x Q1 + P2 x Q2 + 1 x Q0 over Alice's space.

    The multiset of all block eigenvalues plus the residual spectrum equals
    the spectrum of the full operator (within 1e-8).
    """

    blocks: tuple
    residual_spectrum: np.ndarray
    gram_singular_values: np.ndarray


def _range_basis(projector: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(projector)
    return v[:, w > 0.5]


def block_reduce(p1, p2, q0, q1, q2) -> BlockReduction:
    """Split the Bell operator along the singular directions of the overlap
    between the ranges of Alice's two projectors.

    The Gram matrix of the two range bases is diagonalized by SVD; each
    singular direction pairs one vector from each range into an invariant
    Alice subspace of dimension at most two, so each block acts on at most
    a (2 x Bob)-dimensional space.  Alice directions orthogonal to both
    ranges only feel Q0 and contribute the residual spectrum.
    """
    p1 = as_sym_matrix(p1)
    p2 = as_sym_matrix(p2)
    for k, p in (("P1", p1), ("P2", p2)):
        if np.max(np.abs(p @ p - p)) > _PROJECTOR_TOL:
            raise InvalidInputError(f"{k} is not a projector")
    q0 = as_sym_matrix(q0)
    q1 = as_sym_matrix(q1)
    q2 = as_sym_matrix(q2)
    d_a = p1.shape[0]
    if p2.shape[0] != d_a:
        raise InvalidInputError("P1 and P2 act on different spaces")

    e = _range_basis(p1)
    f = _range_basis(p2)
    r1, r2 = e.shape[1], f.shape[1]
    if r1 == 0 and r2 == 0:
        full = np.kron(np.eye(d_a), q0)
        return BlockReduction((), np.linalg.eigvalsh(full), np.zeros(0))

    gram = e.T @ f
    if r1 and r2:
        u, s_vals, vh = np.linalg.svd(gram, full_matrices=True)
    else:
        u, s_vals, vh = np.eye(r1), np.zeros(0), np.eye(r2)
    e_rot = e @ u
    f_rot = f @ vh.T

    blocks = []
    used = 0
    for mu in range(max(r1, r2)):
        basis = []
        if mu < r1:
            basis.append(e_rot[:, mu])
        if mu < r2:
            vec = f_rot[:, mu]
            for b in basis:
                vec = vec - (b @ vec) * b
            norm = np.linalg.norm(vec)
            if norm > 1e-9:
                basis.append(vec / norm)
        b_mat = np.column_stack(basis)
        used += b_mat.shape[1]
        block = (
            np.kron(b_mat.T @ p1 @ b_mat, q1)
            + np.kron(b_mat.T @ p2 @ b_mat, q2)
            + np.kron(np.eye(b_mat.shape[1]), q0)
        )
        blocks.append((block + block.T) / 2.0)

    residual_multiplicity = d_a - used
    q0_eigs = np.linalg.eigvalsh(q0)
    residual = np.sort(np.tile(q0_eigs, residual_multiplicity)) if residual_multiplicity else np.zeros(0)
    return BlockReduction(tuple(blocks), residual, s_vals)


def kcbs_vectors() -> np.ndarray:
    """Five qutrit unit vectors with adjacent pairs orthogonal (umbrella
    construction); columns are the vectors."""
    cos2 = np.cos(np.pi / 5) / (1.0 + np.cos(np.pi / 5))
    theta = np.arccos(np.sqrt(cos2))
    ks = np.arange(5)
    phi = 4.0 * np.pi * ks / 5.0
    return np.vstack(
        [
            np.full(5, np.cos(theta)),
            np.sin(theta) * np.cos(phi),
            np.sin(theta) * np.sin(phi),
        ]
    )


def kcbs_model():
    """Qutrit state and five projectors whose probability sum reaches the
    pentagon's Lovasz number sqrt(5)."""
    vectors = kcbs_vectors()
    state = np.array([1.0, 0.0, 0.0])
    projectors = tuple(projector_onto(vectors[:, k]) for k in range(5))
    return state, projectors


# ---------------------------------------------------------------------------
# Hand-constructed optimal models for the named pentagonal inequalities
# ---------------------------------------------------------------------------


def known_optimal_model(name: str) -> QuantumModel:
    """Hand-constructed optimal model for a named inequality.

    pentagon-2 and pentagon-3 are exact: the maximally entangled state with
    pi/8 measurement angles.  pentagon-1 uses four-digit numeric constants
    for its optimum and is accurate to about 5e-4 in each probability.
    """
    if name == "pentagon-1":
        c, s = 0.7911, 0.6117
        cc, ss = 0.2152, 0.9766
        state = np.array([0.6338, 0.0, 0.0, 0.7735])
        state /= np.linalg.norm(state)
        return QuantumModel(
            (2, 2),
            state,
            (projector_onto((c, -s)), projector_onto((cc, -ss))),
            (projector_onto((-s, c)), projector_onto((-ss, cc))),
        )
    if name in ("pentagon-2", "pentagon-3"):
        c8, s8 = np.cos(np.pi / 8), np.sin(np.pi / 8)
        state = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0)
        alice = [projector_onto((0.0, 1.0)), projector_onto((-1.0, 1.0))]
        if name == "pentagon-3":
            alice.append(projector_onto((-s8, c8)))
        bob = (projector_onto((-s8, c8)), projector_onto((s8, c8)))
        return QuantumModel((2, 2), state, tuple(alice), bob)
    raise InvalidInputError(f"no built-in optimal model for {name!r}")


# ---------------------------------------------------------------------------
# Model file format
# ---------------------------------------------------------------------------


def model_to_json(model: QuantumModel) -> dict:
    def encode(projs):
        out = []
        for x, p in enumerate(projs):
            w, v = np.linalg.eigh(p)
            rank = int(np.sum(w > 0.5))
            if rank == 1:
                out.append({"setting": x, "vector": [float(t) for t in v[:, -1]]})
            else:
                out.append({"setting": x, "matrix": [[float(t) for t in row] for row in p]})
        return out

    return {
        "dims": list(model.dims),
        "state": [float(t) for t in model.state],
        "alice": encode(model.alice),
        "bob": encode(model.bob),
    }


def model_from_json(data) -> QuantumModel:
    if not isinstance(data, dict) or "dims" not in data or "state" not in data:
        raise InvalidInputError("model JSON needs 'dims', 'state', 'alice', 'bob'")
    try:
        dims = (int(data["dims"][0]), int(data["dims"][1]))

        def decode(entries, dim):
            by_setting = {}
            for entry in entries:
                x = int(entry["setting"])
                if "vector" in entry:
                    by_setting[x] = projector_onto(entry["vector"])
                else:
                    by_setting[x] = np.asarray(entry["matrix"], dtype=float)
            if sorted(by_setting) != list(range(len(by_setting))):
                raise InvalidInputError("measurement settings must be 0..k-1")
            return tuple(by_setting[x] for x in range(len(by_setting)))

        return QuantumModel(
            dims,
            np.asarray(data["state"], dtype=float),
            decode(data["alice"], dims[0]),
            decode(data["bob"], dims[1]),
        )
    except (TypeError, KeyError, ValueError, IndexError) as exc:
        raise InvalidInputError(f"malformed model JSON: {exc}") from exc


def load_model(path) -> QuantumModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{path}: not valid JSON ({exc})") from exc
    return model_from_json(data)


def save_model(model: QuantumModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_json(model), fh, indent=2)
        fh.write("\n")
