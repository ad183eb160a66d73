"""Small-graph combinatorics: constructors, exact independence number,
isomorphism, and induced-subgraph search.

Vertices are 0..n-1 and edges are unordered pairs.  All solvers are exact
branch-and-bound / backtracking routines sized for the tiny graphs this
package works with (capacity limits are enforced, not assumed).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .errors import CapacityError, InvalidInputError

ALPHA_MAX_VERTICES = 32
ISO_MAX_VERTICES = 12
INDUCED_MAX_VERTICES = 16


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph: vertex count plus a set of (i, j) pairs, i < j."""

    n: int
    edges: frozenset

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> list:
        d = [0] * self.n
        for i, j in self.edges:
            d[i] += 1
            d[j] += 1
        return d

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edges

    def adjacency_masks(self) -> list:
        """Neighbour bitmask per vertex."""
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks


def graph(n: int, edges: Iterable) -> Graph:
    """Build a validated Graph from any iterable of vertex pairs."""
    if n < 1:
        raise InvalidInputError("graph needs at least one vertex")
    seen = set()
    for pair in edges:
        i, j = int(pair[0]), int(pair[1])
        if i == j:
            raise InvalidInputError(f"self-loop at vertex {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise InvalidInputError(f"edge ({i},{j}) outside [0,{n})")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise InvalidInputError(f"duplicate edge {key}")
        seen.add(key)
    return Graph(n, frozenset(seen))


def cycle(n: int) -> Graph:
    """Cycle graph C_n."""
    if n < 3:
        raise InvalidInputError("a cycle needs at least 3 vertices")
    return graph(n, [(i, (i + 1) % n) for i in range(n)])


def circulant(n: int, offsets: Iterable) -> Graph:
    """Circulant graph: edges {i, i+k mod n} for every offset k."""
    if n < 1:
        raise InvalidInputError("graph needs at least one vertex")
    edges = set()
    for k in offsets:
        k = int(k)
        if k <= 0 or k >= n:
            raise InvalidInputError(f"offset {k} outside [1, {n})")
        for i in range(n):
            j = (i + k) % n
            edges.add((min(i, j), max(i, j)))
    return graph(n, edges)


def empty_graph(n: int) -> Graph:
    return graph(n, [])


def complete_graph(n: int) -> Graph:
    return graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complement(g: Graph) -> Graph:
    edges = [
        (i, j)
        for i in range(g.n)
        for j in range(i + 1, g.n)
        if not g.has_edge(i, j)
    ]
    return graph(g.n, edges)


def _clique_cover_bound(cand: int, adj: list) -> int:
    # Greedy partition of the candidate set into cliques; an independent set
    # takes at most one vertex from each clique.
    count = 0
    remaining = cand
    while remaining:
        v = (remaining & -remaining).bit_length() - 1
        clique_adj = adj[v]
        remaining &= remaining - 1
        pool = remaining & clique_adj
        while pool:
            u = (pool & -pool).bit_length() - 1
            clique_adj &= adj[u]
            remaining &= ~(1 << u)
            pool = remaining & clique_adj
        count += 1
    return count


def independence_number(g: Graph):
    """Exact maximum independent set size with a witness vertex tuple.

    Branch and bound with a greedy clique-cover upper bound; vertices are
    explored in descending-degree order (ties by lowest index).
    """
    if g.n > ALPHA_MAX_VERTICES:
        raise CapacityError(f"{g.n} vertices exceed the {ALPHA_MAX_VERTICES} envelope")
    deg = g.degrees()
    order = sorted(range(g.n), key=lambda v: (-deg[v], v))
    pos = {v: k for k, v in enumerate(order)}
    # relabel so vertex k is the k-th in branching order
    adj = [0] * g.n
    for i, j in g.edges:
        a, b = pos[i], pos[j]
        adj[a] |= 1 << b
        adj[b] |= 1 << a

    best_size = 0
    best_set = 0

    def expand(cand: int, chosen: int, size: int) -> None:
        nonlocal best_size, best_set
        if not cand:
            if size > best_size:
                best_size, best_set = size, chosen
            return
        if size + bin(cand).count("1") <= best_size:
            return
        if size + _clique_cover_bound(cand, adj) <= best_size:
            return
        v = (cand & -cand).bit_length() - 1
        bit = 1 << v
        expand(cand & ~bit & ~adj[v], chosen | bit, size + 1)
        expand(cand & ~bit, chosen, size)

    expand((1 << g.n) - 1, 0, 0)
    witness = tuple(sorted(order[k] for k in range(g.n) if best_set >> k & 1))
    return best_size, witness


def is_independent_set(g: Graph, vertices: Iterable) -> bool:
    vs = list(vertices)
    return all(not g.has_edge(vs[a], vs[b]) for a in range(len(vs)) for b in range(a + 1, len(vs)))


def is_isomorphic(g: Graph, h: Graph):
    """Edge-preserving bijection test; returns (found, permutation or None).

    The permutation maps vertex v of g to permutation[v] of h and is a
    verified witness when found.
    """
    if g.n > ISO_MAX_VERTICES or h.n > ISO_MAX_VERTICES:
        raise CapacityError(f"isomorphism limited to {ISO_MAX_VERTICES} vertices")
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False, None
    dg, dh = g.degrees(), h.degrees()
    if sorted(dg) != sorted(dh):
        return False, None

    g_adj = g.adjacency_masks()
    h_adj = h.adjacency_masks()
    order = sorted(range(g.n), key=lambda v: (-dg[v], v))
    mapping = [-1] * g.n
    used = [False] * h.n

    def backtrack(k: int) -> bool:
        if k == g.n:
            return True
        v = order[k]
        for w in range(h.n):
            if used[w] or dh[w] != dg[v]:
                continue
            ok = True
            for prev in order[:k]:
                if bool(g_adj[v] >> prev & 1) != bool(h_adj[w] >> mapping[prev] & 1):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if backtrack(k + 1):
                    return True
                used[w] = False
                mapping[v] = -1
        return False

    if backtrack(0):
        return True, list(mapping)
    return False, None


def find_induced(h: Graph, g: Graph):
    """Injective mapping of h onto an induced subgraph of g, or None.

    Induced: vertices u, u' of h are adjacent exactly when their images are
    adjacent in g (non-edges must be preserved too).
    """
    if g.n > INDUCED_MAX_VERTICES:
        raise CapacityError(f"induced search limited to {INDUCED_MAX_VERTICES} vertices")
    if h.n > g.n:
        raise CapacityError("pattern graph larger than host graph")
    h_adj = h.adjacency_masks()
    g_adj = g.adjacency_masks()
    dh, dg = h.degrees(), g.degrees()
    mapping = [-1] * h.n
    used = [False] * g.n

    def backtrack(u: int):
        if u == h.n:
            return list(mapping)
        for w in range(g.n):
            if used[w] or dg[w] < dh[u]:
                continue
            ok = True
            for prev in range(u):
                if bool(h_adj[u] >> prev & 1) != bool(g_adj[w] >> mapping[prev] & 1):
                    ok = False
                    break
            if ok:
                mapping[u] = w
                used[w] = True
                found = backtrack(u + 1)
                if found is not None:
                    return found
                used[w] = False
                mapping[u] = -1
        return None

    return backtrack(0)


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}


def graph_from_json(data) -> Graph:
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise InvalidInputError('graph JSON must be {"n": int, "edges": [[i,j],...]}')
    try:
        n = int(data["n"])
        edges = [(int(e[0]), int(e[1])) for e in data["edges"]]
    except (TypeError, ValueError, IndexError) as exc:
        raise InvalidInputError(f"malformed graph JSON: {exc}") from exc
    return graph(n, edges)


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"{path}: not valid JSON ({exc})") from exc
    return graph_from_json(data)


def save_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph_to_json(g), fh, indent=2)
        fh.write("\n")
