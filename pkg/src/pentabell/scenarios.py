"""Bipartite Bell events and the combinatorics built on them.

Covers the event model (including single-party "wildcard" events such as
_1|_0, where only Bob's setting and outcome are fixed), exclusivity-graph
extraction with typed edges, classical bounds by deterministic-strategy
enumeration, correlator decomposition, the PR box, exclusivity-principle
checks, and the enumeration of all pentagonal inequalities up to relabeling.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import CapacityError, InvalidInputError
from .graphs import Graph, cycle, graph, is_isomorphic

MAX_SETTING = 3  # setting indices 0..3
MAX_ENUM_SETTINGS = 4  # deterministic-strategy enumeration envelope


@dataclass(frozen=True)
class Event:
    """One measurement event: optional (setting, outcome) per party.

    A party set to None is a wildcard: the event does not constrain that
    party at all (a marginal-probability event).
    """

    alice: Optional[tuple]
    bob: Optional[tuple]

    def __post_init__(self):
        if self.alice is None and self.bob is None:
            raise InvalidInputError("event must fix at least one party")
        for label, part in (("alice", self.alice), ("bob", self.bob)):
            if part is None:
                continue
            part = (int(part[0]), int(part[1]))
            object.__setattr__(self, label, part)
            setting, outcome = part
            if outcome not in (0, 1):
                raise InvalidInputError(f"{label} outcome {outcome} not in {{0,1}}")
            if not 0 <= setting <= MAX_SETTING:
                raise InvalidInputError(f"{label} setting {setting} outside [0,{MAX_SETTING}]")

    @classmethod
    def parse(cls, text: str) -> "Event":
        """Parse "ab|xy" with '_' for a wildcard party, e.g. "_1|_0"."""
        t = text.strip()
        if len(t) != 5 or t[2] != "|":
            raise InvalidInputError(f"cannot parse event {text!r}")
        a, b, x, y = t[0], t[1], t[3], t[4]
        if (a == "_") != (x == "_") or (b == "_") != (y == "_"):
            raise InvalidInputError(f"wildcard must blank both outcome and setting: {text!r}")
        alice = None if a == "_" else (int(x), int(a))
        bob = None if b == "_" else (int(y), int(b))
        return cls(alice, bob)

    def __str__(self):
        a, x = ("_", "_") if self.alice is None else (str(self.alice[1]), str(self.alice[0]))
        b, y = ("_", "_") if self.bob is None else (str(self.bob[1]), str(self.bob[0]))
        return f"{a}{b}|{x}{y}"


@dataclass(frozen=True)
class Inequality:
    """Unit-weight sum of event probabilities with optional recorded bounds."""

    terms: tuple
    name: str = ""
    alice_settings: Optional[int] = None
    bob_settings: Optional[int] = None
    lhv: Optional[float] = None
    quantum: Optional[float] = None

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if len(set(terms)) != len(terms):
            raise InvalidInputError("inequality has duplicate events")
        if not terms:
            raise InvalidInputError("inequality needs at least one term")
        need_a = 1 + max((e.alice[0] for e in terms if e.alice is not None), default=-1)
        need_b = 1 + max((e.bob[0] for e in terms if e.bob is not None), default=-1)
        for label, declared, needed in (
            ("alice_settings", self.alice_settings, need_a),
            ("bob_settings", self.bob_settings, need_b),
        ):
            if declared is None:
                object.__setattr__(self, label, max(needed, 1))
            elif declared < needed:
                raise InvalidInputError(f"{label}={declared} but a term references setting {needed - 1}")


@dataclass(frozen=True)
class DeterministicStrategy:
    """One outcome per setting for each party."""

    alice: tuple
    bob: tuple

    def matches(self, event: Event) -> bool:
        """True when the strategy makes the event happen (wildcards vacuous)."""
        if event.alice is not None and self.alice[event.alice[0]] != event.alice[1]:
            return False
        if event.bob is not None and self.bob[event.bob[0]] != event.bob[1]:
            return False
        return True


class TypedEdge(NamedTuple):
    i: int
    j: int
    kind: str  # 'A', 'B' or 'AB'


class Behavior:
    """Probability table P(ab|xy) with derived marginals and correlators.

    Construction validates normalization, non-negativity, and no-signaling
    (each within 1e-9); offending tables are rejected.
    """

    _ATOL = 1e-9

    def __init__(self, tables):
        store = {}
        for key, block in tables.items():
            x, y = int(key[0]), int(key[1])
            p = np.asarray(block, dtype=float).reshape(2, 2)
            if np.any(p < -1e-12):
                raise InvalidInputError(f"negative probability at setting pair ({x},{y})")
            if abs(p.sum() - 1.0) > self._ATOL:
                raise InvalidInputError(f"probabilities at ({x},{y}) sum to {p.sum()}, not 1")
            p = np.clip(p, 0.0, None)
            p.flags.writeable = False
            store[(x, y)] = p
        self._tables = store
        self._check_no_signaling()

    def _check_no_signaling(self):
        for x in self.alice_settings:
            margs = [self._tables[(x, y)].sum(axis=1) for y in self.bob_settings if (x, y) in self._tables]
            for m in margs[1:]:
                if np.max(np.abs(m - margs[0])) > self._ATOL:
                    raise InvalidInputError(f"no-signaling violated for Alice setting {x}")
        for y in self.bob_settings:
            margs = [self._tables[(x, y)].sum(axis=0) for x in self.alice_settings if (x, y) in self._tables]
            for m in margs[1:]:
                if np.max(np.abs(m - margs[0])) > self._ATOL:
                    raise InvalidInputError(f"no-signaling violated for Bob setting {y}")

    @property
    def alice_settings(self):
        return sorted({x for x, _ in self._tables})

    @property
    def bob_settings(self):
        return sorted({y for _, y in self._tables})

    def table(self, x: int, y: int) -> np.ndarray:
        try:
            return self._tables[(x, y)]
        except KeyError:
            raise InvalidInputError(f"behavior does not cover setting pair ({x},{y})") from None

    def prob(self, event: Event) -> float:
        """Probability of an event; wildcard parties are marginalized out."""
        if event.alice is not None and event.bob is not None:
            (x, a), (y, b) = event.alice, event.bob
            return float(self.table(x, y)[a, b])
        if event.bob is not None:
            y, b = event.bob
            xs = [x for x in self.alice_settings if (x, y) in self._tables]
            if not xs:
                raise InvalidInputError(f"behavior does not cover Bob setting {y}")
            return float(self.table(xs[0], y)[:, b].sum())
        x, a = event.alice
        ys = [y for y in self.bob_settings if (x, y) in self._tables]
        if not ys:
            raise InvalidInputError(f"behavior does not cover Alice setting {x}")
        return float(self.table(x, ys[0])[a, :].sum())

    def correlator(self, x: int, y: int) -> float:
        p = self.table(x, y)
        return float(p[0, 0] - p[0, 1] - p[1, 0] + p[1, 1])

    def alice_expectation(self, x: int) -> float:
        p = self.table(x, self.bob_settings[0])
        return float(p[0, :].sum() - p[1, :].sum())

    def bob_expectation(self, y: int) -> float:
        p = self.table(self.alice_settings[0], y)
        return float(p[:, 0].sum() - p[:, 1].sum())


def strategy_behavior(strategy: DeterministicStrategy, alice_settings=None, bob_settings=None) -> Behavior:
    """Deterministic 0/1 behavior produced by a local strategy."""
    n_a = len(strategy.alice) if alice_settings is None else alice_settings
    n_b = len(strategy.bob) if bob_settings is None else bob_settings
    tables = {}
    for x in range(n_a):
        for y in range(n_b):
            p = np.zeros((2, 2))
            p[strategy.alice[x], strategy.bob[y]] = 1.0
            tables[(x, y)] = p
    return Behavior(tables)


def pr_box() -> Behavior:
    """The no-signaling box with E_00 = E_01 = E_10 = 1 and E_11 = -1."""
    tables = {}
    for x in range(2):
        for y in range(2):
            p = np.zeros((2, 2))
            for a in range(2):
                for b in range(2):
                    if (a + b) % 2 == (x * y) % 2:
                        p[a, b] = 0.5
            tables[(x, y)] = p
    return Behavior(tables)


def random_ns_behavior(rng: np.random.Generator) -> Behavior:
    """Random point of the 2x2 no-signaling polytope.

    Convex mixture of the 16 deterministic behaviors and the PR box, so the
    result is no-signaling by construction.
    """
    weights = rng.random(17)
    weights /= weights.sum()
    tables = {(x, y): np.zeros((2, 2)) for x in range(2) for y in range(2)}
    components = [
        strategy_behavior(DeterministicStrategy(sa, sb))
        for sa in itertools.product((0, 1), repeat=2)
        for sb in itertools.product((0, 1), repeat=2)
    ] + [pr_box()]
    for w, comp in zip(weights, components):
        for key in tables:
            tables[key] += w * comp.table(*key)
    return Behavior(tables)


def exclusive(e: Event, f: Event) -> Optional[str]:
    """Exclusivity kind of an event pair: 'A', 'B', 'AB', or None.

    Two events are exclusive when some party measures the same setting in
    both but with different outcomes.  Wildcard parties never contribute.
    """
    a_excl = (
        e.alice is not None
        and f.alice is not None
        and e.alice[0] == f.alice[0]
        and e.alice[1] != f.alice[1]
    )
    b_excl = (
        e.bob is not None
        and f.bob is not None
        and e.bob[0] == f.bob[0]
        and e.bob[1] != f.bob[1]
    )
    if a_excl and b_excl:
        return "AB"
    if a_excl:
        return "A"
    if b_excl:
        return "B"
    return None


def exclusivity_graph(iq: Inequality):
    """Graph over the inequality's terms plus the typed edge list."""
    n = len(iq.terms)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            kind = exclusive(iq.terms[i], iq.terms[j])
            if kind is not None:
                edges.append(TypedEdge(i, j, kind))
    return graph(n, [(e.i, e.j) for e in edges]), edges


def lhv_bound(iq: Inequality, alice_settings: Optional[int] = None, bob_settings: Optional[int] = None):
    """Exact deterministic-strategy maximum of the term count, with witness."""
    n_a = iq.alice_settings if alice_settings is None else int(alice_settings)
    n_b = iq.bob_settings if bob_settings is None else int(bob_settings)
    if n_a > MAX_ENUM_SETTINGS or n_b > MAX_ENUM_SETTINGS:
        raise CapacityError(f"strategy enumeration limited to {MAX_ENUM_SETTINGS} settings per party")
    best, witness = -1, None
    for sa in itertools.product((0, 1), repeat=n_a):
        for sb in itertools.product((0, 1), repeat=n_b):
            strategy = DeterministicStrategy(sa, sb)
            score = sum(1 for t in iq.terms if strategy.matches(t))
            if score > best:
                best, witness = score, strategy
    return best, witness


def evaluate(iq: Inequality, behavior: Behavior) -> float:
    """Sum of the term probabilities under the behavior."""
    return float(sum(behavior.prob(t) for t in iq.terms))


@dataclass(frozen=True)
class CorrelatorDecomposition:
    """Affine form: value = offset + sum c_xy E_xy (+ marginal terms).

    correlator_only is True when the marginal coefficients vanish, i.e. the
    inequality is a rescaled, shifted combination of correlators alone.
    """

    offset: float
    coefficients: dict
    correlator_only: bool
    residual: float
    alice_coefficients: dict = field(default_factory=dict)
    bob_coefficients: dict = field(default_factory=dict)

    def predict(self, behavior: Behavior) -> float:
        total = self.offset
        for (x, y), c in self.coefficients.items():
            total += c * behavior.correlator(x, y)
        for x, c in self.alice_coefficients.items():
            total += c * behavior.alice_expectation(x)
        for y, c in self.bob_coefficients.items():
            total += c * behavior.bob_expectation(y)
        return float(total)


def chsh_decomposition(iq: Inequality) -> CorrelatorDecomposition:
    """Express a 2x2-setting inequality in correlators, solved over the 16
    deterministic behaviors.

    When the pure correlator fit leaves a residual, single-party expectation
    terms are added; that extended system is always exactly solvable.
    """
    for t in iq.terms:
        if (t.alice is not None and t.alice[0] > 1) or (t.bob is not None and t.bob[0] > 1):
            raise InvalidInputError("correlator decomposition needs a 2x2-setting inequality")

    pairs = [(x, y) for x in range(2) for y in range(2)]
    rows, targets = [], []
    for sa in itertools.product((0, 1), repeat=2):
        for sb in itertools.product((0, 1), repeat=2):
            a_sign = [1 - 2 * o for o in sa]
            b_sign = [1 - 2 * o for o in sb]
            rows.append(
                [1.0]
                + [a_sign[x] * b_sign[y] for x, y in pairs]
                + [a_sign[0], a_sign[1], b_sign[0], b_sign[1]]
            )
            targets.append(evaluate(iq, strategy_behavior(DeterministicStrategy(sa, sb))))
    m = np.array(rows)
    t = np.array(targets)

    sol, *_ = np.linalg.lstsq(m[:, :5], t, rcond=None)
    residual = float(np.max(np.abs(m[:, :5] @ sol - t)))
    if residual <= 1e-10:
        return CorrelatorDecomposition(
            offset=float(sol[0]),
            coefficients={p: float(c) for p, c in zip(pairs, sol[1:])},
            correlator_only=True,
            residual=residual,
        )

    sol, *_ = np.linalg.lstsq(m, t, rcond=None)
    residual = float(np.max(np.abs(m @ sol - t)))
    return CorrelatorDecomposition(
        offset=float(sol[0]),
        coefficients={p: float(c) for p, c in zip(pairs, sol[1:5])},
        correlator_only=False,
        residual=residual,
        alice_coefficients={0: float(sol[5]), 1: float(sol[6])},
        bob_coefficients={0: float(sol[7]), 1: float(sol[8])},
    )


@dataclass(frozen=True)
class EPrincipleReport:
    """Exclusivity-principle audit of a behavior against an inequality."""

    value: float
    max_clique_sum: float
    worst_clique: tuple
    pentagon_cap: Optional[float]
    chsh_cap: Optional[float]
    violated: bool


def eprinciple_check(iq: Inequality, behavior: Behavior) -> EPrincipleReport:
    """Check that pairwise-exclusive event probabilities sum to at most 1.

    All cliques of the exclusivity graph are enumerated exhaustively.  For
    pentagonal inequalities the principle additionally caps the full sum at
    the pentagon's Lovasz number, and when the inequality is a pure
    correlator combination that cap is translated into a bound on the
    unit-coefficient correlator form.
    """
    from .theta import lovasz_theta

    g, _ = exclusivity_graph(iq)
    if g.n > 10:
        raise CapacityError("clique enumeration limited to 10 vertices")
    probs = [behavior.prob(t) for t in iq.terms]
    masks = g.adjacency_masks()
    best_sum, best_clique = 0.0, ()
    for subset in range(1, 1 << g.n):
        members = [v for v in range(g.n) if subset >> v & 1]
        if all(masks[i] >> j & 1 for i, j in itertools.combinations(members, 2)):
            s = sum(probs[v] for v in members)
            if s > best_sum:
                best_sum, best_clique = s, tuple(members)

    value = float(sum(probs))
    pentagon_cap = None
    chsh_cap = None
    iso, _ = is_isomorphic(g, cycle(5)) if g.n == 5 else (False, None)
    if iso:
        pentagon_cap = lovasz_theta(cycle(5)).value
        try:
            dec = chsh_decomposition(iq)
        except InvalidInputError:
            dec = None
        if dec is not None and dec.correlator_only:
            mags = {round(abs(c), 12) for c in dec.coefficients.values()}
            if len(mags) == 1 and mags != {0.0}:
                scale = abs(next(iter(dec.coefficients.values())))
                chsh_cap = (pentagon_cap - dec.offset) / scale

    violated = best_sum > 1.0 + 1e-9 or (pentagon_cap is not None and value > pentagon_cap + 1e-9)
    return EPrincipleReport(value, best_sum, best_clique, pentagon_cap, chsh_cap, violated)


# ---------------------------------------------------------------------------
# Edge patterns of the pentagon and the enumeration of pentagonal inequalities
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PatternClass:
    """Orbit of an A/B edge labeling of C5 under rotation, reflection and
    the A<->B swap; canonical is the lexicographically largest member."""

    canonical: str
    members: frozenset


def _pattern_orbit(pattern: str) -> frozenset:
    variants = set()
    for s in (pattern, pattern[::-1]):
        for swap in (False, True):
            t = s.translate(str.maketrans("AB", "BA")) if swap else s
            for k in range(5):
                variants.add(t[k:] + t[:k])
    return frozenset(variants)


def edge_patterns_c5():
    """All A/B edge labelings of the pentagon reduced to symmetry classes."""
    classes = {}
    for bits in itertools.product("AB", repeat=5):
        s = "".join(bits)
        orbit = _pattern_orbit(s)
        classes[max(orbit)] = PatternClass(max(orbit), orbit)
    return sorted(classes.values(), key=lambda c: c.canonical)


def _has_triple_run(pattern: str) -> bool:
    doubled = pattern + pattern
    return any(doubled[i : i + 3] in ("AAA", "BBB") for i in range(5))


def feasible_patterns():
    """Pattern classes whose every member avoids a cyclic AAA/BBB run.

    Three same-type edges in a row would force two non-adjacent pentagon
    vertices to be exclusive, which is impossible, so such patterns cannot
    be realized by bipartite events.
    """
    return [c for c in edge_patterns_c5() if not any(_has_triple_run(m) for m in c.members)]


def _event_key(event: Event):
    part = lambda p: (1, -1, -1) if p is None else (0, p[0], p[1])
    return part(event.alice) + part(event.bob)


def _compact(terms):
    """Relabel each party's used settings to 0..k-1 preserving order."""
    used_a = sorted({e.alice[0] for e in terms if e.alice is not None})
    used_b = sorted({e.bob[0] for e in terms if e.bob is not None})
    map_a = {x: i for i, x in enumerate(used_a)}
    map_b = {y: i for i, y in enumerate(used_b)}
    out = []
    for e in terms:
        alice = None if e.alice is None else (map_a[e.alice[0]], e.alice[1])
        bob = None if e.bob is None else (map_b[e.bob[0]], e.bob[1])
        out.append(Event(alice, bob))
    return frozenset(out)


def _orbit(compacted: frozenset):
    """All compacted images of an event set under the equivalence group:
    party swap x per-party setting permutation x per-party-setting outcome
    flip."""
    results = set()
    for swap in (False, True):
        if swap:
            base = [Event(e.bob, e.alice) for e in compacted]
        else:
            base = list(compacted)
        used_a = sorted({e.alice[0] for e in base if e.alice is not None})
        used_b = sorted({e.bob[0] for e in base if e.bob is not None})
        k_a, k_b = len(used_a), len(used_b)
        for perm_a in itertools.permutations(range(k_a)):
            for flips_a in itertools.product((0, 1), repeat=k_a):
                for perm_b in itertools.permutations(range(k_b)):
                    for flips_b in itertools.product((0, 1), repeat=k_b):
                        image = []
                        for e in base:
                            alice = e.alice
                            if alice is not None:
                                i = used_a.index(alice[0])
                                alice = (perm_a[i], alice[1] ^ flips_a[i])
                            bob = e.bob
                            if bob is not None:
                                i = used_b.index(bob[0])
                                bob = (perm_b[i], bob[1] ^ flips_b[i])
                            image.append(Event(alice, bob))
                        results.add(frozenset(image))
    return results


def canonical_form(terms):
    """Canonical encoding of an event set modulo the equivalence group."""
    compacted = _compact(tuple(terms))
    return min(tuple(sorted(_event_key(e) for e in member)) for member in _orbit(compacted))


def _event_from_key(key):
    alice = None if key[0] == 1 else (key[1], key[2])
    bob = None if key[3] == 1 else (key[4], key[5])
    return Event(alice, bob)


def canonicalize(iq: Inequality) -> Inequality:
    """Representative inequality of iq's equivalence class."""
    keys = canonical_form(iq.terms)
    return Inequality(tuple(_event_from_key(k) for k in keys), name=iq.name)


def enumerate_pentagonal(max_alice_settings: int = 3, max_bob_settings: int = 3):
    """All pentagonal Bell inequalities up to relabeling.

    Enumerates every assignment of events (wildcards included) to the five
    vertices of a cycle such that the induced exclusivity graph is exactly
    C5, then deduplicates modulo the equivalence group.  Returns one
    representative Inequality per class; representatives matching a built-in
    named inequality reuse its terms and recorded bounds.
    """
    events = []
    parts_a = [None] + [(x, a) for x in range(max_alice_settings) for a in (0, 1)]
    parts_b = [None] + [(y, b) for y in range(max_bob_settings) for b in (0, 1)]
    for pa in parts_a:
        for pb in parts_b:
            if pa is None and pb is None:
                continue
            events.append(Event(pa, pb))

    n = len(events)
    adjacent = [[exclusive(events[i], events[j]) is not None for j in range(n)] for i in range(n)]
    partners = [[j for j in range(n) if adjacent[i][j]] for i in range(n)]

    found = set()
    # each undirected 5-cycle is collected once: v0 is the smallest index and
    # the traversal direction is fixed by v1 < v4
    for v0 in range(n):
        for v1 in partners[v0]:
            if v1 <= v0:
                continue
            for v2 in partners[v1]:
                if v2 <= v0 or v2 == v1 or adjacent[v0][v2]:
                    continue
                for v3 in partners[v2]:
                    if v3 <= v0 or v3 in (v1, v2) or adjacent[v0][v3] or adjacent[v1][v3]:
                        continue
                    for v4 in partners[v3]:
                        if (
                            v4 <= v1  # enforces v4 > v0 and direction v1 < v4
                            or v4 in (v2, v3)
                            or not adjacent[v4][v0]
                            or adjacent[v1][v4]
                            or adjacent[v2][v4]
                        ):
                            continue
                        found.add(_compact(tuple(events[v] for v in (v0, v1, v2, v3, v4))))

    classes = {}
    seen = set()
    for member_set in found:
        if member_set in seen:
            continue
        orbit = _orbit(member_set)
        canon = min(tuple(sorted(_event_key(e) for e in m)) for m in orbit)
        classes[canon] = member_set
        seen |= orbit

    representatives = []
    named = [named_inequality(k) for k in ("pentagon-1", "pentagon-2", "pentagon-3")]
    named_by_canon = {canonical_form(iq.terms): iq for iq in named}
    for canon in sorted(classes):
        if canon in named_by_canon:
            representatives.append(named_by_canon[canon])
        else:
            representatives.append(
                Inequality(tuple(_event_from_key(k) for k in canon), name="unnamed-pentagon")
            )
    representatives.sort(key=lambda iq: iq.name)
    return representatives


# ---------------------------------------------------------------------------
# Named scenarios and the scenario file format
# ---------------------------------------------------------------------------

SQRT2 = float(np.sqrt(2.0))

_NAMED_TERMS = {
    "pentagon-1": ("00|00", "11|01", "10|11", "00|10", "11|00"),
    "pentagon-2": ("00|00", "11|01", "10|11", "00|10", "_1|_0"),
    "pentagon-3": ("00|00", "11|01", "10|11", "00|10", "11|20"),
    "chsh-prob": ("00|00", "11|00", "00|01", "11|01", "00|10", "11|10", "01|11", "10|11"),
    "i3322": (
        "11|00", "11|01", "00|10", "10|11", "00|02",
        "00|20", "00|21", "10|22", "_1|_2", "1_|2_",
    ),
}

_NAMED_BOUNDS = {
    "pentagon-1": (2.0, 2.178),
    "pentagon-2": (2.0, (3.0 + SQRT2) / 2.0),
    "pentagon-3": (2.0, (3.0 + SQRT2) / 2.0),
    "chsh-prob": (3.0, 2.0 + SQRT2),
    "i3322": (4.0, None),
}

SCENARIO_NAMES = tuple(_NAMED_TERMS) + ("kcbs-graph",)


def named_inequality(name: str) -> Inequality:
    """Built-in inequality by name; see SCENARIO_NAMES."""
    if name not in _NAMED_TERMS:
        raise InvalidInputError(f"unknown scenario {name!r} (known: {', '.join(_NAMED_TERMS)})")
    lhv, quantum = _NAMED_BOUNDS[name]
    return Inequality(
        tuple(Event.parse(t) for t in _NAMED_TERMS[name]),
        name=name,
        lhv=lhv,
        quantum=quantum,
    )


def named_graph(name: str) -> Graph:
    """Built-in graph by name: the named inequalities' exclusivity graphs,
    plus "kcbs-graph" for the pentagon of the five KCBS events."""
    if name == "kcbs-graph":
        return cycle(5)
    return exclusivity_graph(named_inequality(name))[0]


def scenario_to_json(iq: Inequality) -> dict:
    return {
        "name": iq.name,
        "alice_settings": iq.alice_settings,
        "bob_settings": iq.bob_settings,
        "terms": [
            {
                "alice": None if t.alice is None else list(t.alice),
                "bob": None if t.bob is None else list(t.bob),
            }
            for t in iq.terms
        ],
    }


def scenario_from_json(data) -> Inequality:
    if not isinstance(data, dict) or "terms" not in data:
        raise InvalidInputError("scenario JSON must contain a 'terms' list")
    try:
        terms = tuple(
            Event(
                None if t.get("alice") is None else tuple(t["alice"]),
                None if t.get("bob") is None else tuple(t["bob"]),
            )
            for t in data["terms"]
        )
    except (TypeError, KeyError, IndexError) as exc:
        raise InvalidInputError(f"malformed scenario term: {exc}") from exc
    return Inequality(
        terms,
        name=str(data.get("name", "")),
        alice_settings=data.get("alice_settings"),
        bob_settings=data.get("bob_settings"),
    )


def load_scenario(path) -> Inequality:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{path}: not valid JSON ({exc})") from exc
    return scenario_from_json(data)


def save_scenario(iq: Inequality, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_json(iq), fh, indent=2)
        fh.write("\n")
