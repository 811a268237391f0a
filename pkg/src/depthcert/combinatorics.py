"""Hypergraphs of square-free ideals: cycle structure, covers, saturating sets.

Vertices are variable indices of a RingContext.  Derived views (restrictions
and vertex deletions) may legitimately contain empty or nested edges, so only
the primary constructors validate shape.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field

from .core import LinearSum, Monomial, MonomialIdeal, RingContext, same_ring
from .errors import PreconditionError, ResourceLimitError
from .oracle import MonomialPrime


class Hypergraph:
    """A finite hypergraph on a subset of ring variables."""

    __slots__ = ("ring", "vertices", "edges")

    def __init__(
        self,
        ring: RingContext,
        edges,
        vertices=None,
        strict: bool = True,
    ):
        self.ring = ring
        self.edges = frozenset(frozenset(e) for e in edges)
        if vertices is None:
            vertices = frozenset(range(ring.nvars))
        self.vertices = frozenset(vertices)
        for e in self.edges:
            if not e <= self.vertices:
                raise ValueError("edge uses a vertex outside the vertex set")
        if strict:
            for e in self.edges:
                if not e:
                    raise ValueError("empty edge in a strict hypergraph")
                if any(other < e for other in self.edges):
                    raise ValueError("nested edges in a strict hypergraph")

    def is_graph(self) -> bool:
        return all(len(e) == 2 for e in self.edges)

    def neighbors(self, v: int | str) -> frozenset[int]:
        i = v if isinstance(v, int) else self.ring.index(v)
        out = set()
        for e in self.edges:
            if i in e:
                out |= e - {i}
        return frozenset(out)

    def degree(self, v: int | str) -> int:
        i = v if isinstance(v, int) else self.ring.index(v)
        return sum(1 for e in self.edges if i in e)

    def restrict(self, keep) -> Hypergraph:
        """The view with vertex set keep and edges e cap keep."""
        keep = frozenset(
            v if isinstance(v, int) else self.ring.index(v) for v in keep
        )
        return Hypergraph(
            self.ring, (e & keep for e in self.edges), vertices=keep, strict=False
        )

    def delete(self, v: int | str) -> Hypergraph:
        """The view with v removed from the vertex set and from every edge."""
        i = v if isinstance(v, int) else self.ring.index(v)
        return Hypergraph(
            self.ring,
            (e - {i} for e in self.edges),
            vertices=self.vertices - {i},
            strict=False,
        )

    def sorted_edges(self) -> list[tuple[int, ...]]:
        return sorted((tuple(sorted(e)) for e in self.edges), key=lambda e: (len(e), e))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Hypergraph)
            and self.ring == other.ring
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.ring.names, self.vertices, self.edges))

    def __repr__(self) -> str:
        names = self.ring.names
        edges = ["{" + ",".join(names[i] for i in e) + "}" for e in self.sorted_edges()]
        return "Hypergraph(" + ", ".join(edges) + ")"


def to_hypergraph(I: MonomialIdeal) -> Hypergraph:
    """The hypergraph whose edges are the generator supports (square-free I)."""
    if not I.is_squarefree():
        raise PreconditionError("only square-free ideals have hypergraphs")
    if I.is_unit():
        raise PreconditionError("the unit ideal has no hypergraph")
    return Hypergraph(I.ring, (g.support() for g in I.gens))


def edge_ideal(H: Hypergraph) -> MonomialIdeal:
    """The square-free ideal generated by the edge products."""
    gens = []
    for e in H.edges:
        m = H.ring.one()
        for i in e:
            m = m * H.ring.variable(i)
        gens.append(m)
    return MonomialIdeal(H.ring, gens)


def star_form(H: Hypergraph, v: int | str) -> LinearSum:
    """v plus its neighbors in ascending order; the head is v itself."""
    i = v if isinstance(v, int) else H.ring.index(v)
    nbrs = H.neighbors(i)
    if not nbrs:
        raise PreconditionError(f"{H.ring.names[i]} has no neighbors")
    return LinearSum(H.ring, [i, *sorted(nbrs)])


def neighborhood_monomials(I: MonomialIdeal, x: int | str) -> frozenset[Monomial]:
    """N(x) = {g / x : g a minimal generator divisible by x}."""
    i = x if isinstance(x, int) else I.ring.index(x)
    var = I.ring.variable(i)
    return frozenset(g / var for g in I.gens if g.exps[i])


# ---------------------------------------------------------------------------
# cycle structure of graphs


@dataclass(frozen=True)
class GraphAnalysis:
    """Cycle census of a graph: bipartiteness, odd cycles, cycle distances.

    distances maps every vertex to its distance from the unique odd cycle;
    it is empty unless exactly one odd cycle exists.
    """

    bipartite: bool
    odd_cycles: tuple[tuple[int, ...], ...]
    distances: dict[int, int | float] = field(default_factory=dict)

    @property
    def unique_odd_cycle(self) -> tuple[int, ...] | None:
        return self.odd_cycles[0] if len(self.odd_cycles) == 1 else None

    @property
    def k(self) -> int | None:
        cycle = self.unique_odd_cycle
        return None if cycle is None else (len(cycle) - 1) // 2


def analyze_cycles(H: Hypergraph, max_vertices: int = 16) -> GraphAnalysis:
    """Enumerate every simple cycle by DFS and report the odd ones.

    Cycles are canonical: they start at their smallest vertex and run toward
    its smaller cycle-neighbor.  Bipartiteness is cross-checked against
    2-colorability.
    """
    if not H.is_graph():
        raise PreconditionError("cycle analysis needs a graph (all edges of size 2)")
    if len(H.vertices) > max_vertices:
        raise ResourceLimitError(f"more than {max_vertices} vertices")
    adj: dict[int, set[int]] = {v: set() for v in H.vertices}
    for e in H.edges:
        a, b = sorted(e)
        adj[a].add(b)
        adj[b].add(a)

    cycles: list[tuple[int, ...]] = []

    def grow(path: list[int], on_path: set[int]) -> None:
        last = path[-1]
        start = path[0]
        for nxt in sorted(adj[last]):
            if nxt == start and len(path) >= 3 and path[1] < last:
                cycles.append(tuple(path))
            elif nxt > start and nxt not in on_path:
                path.append(nxt)
                on_path.add(nxt)
                grow(path, on_path)
                on_path.remove(nxt)
                path.pop()

    for s in sorted(H.vertices):
        grow([s], {s})

    odd = tuple(c for c in cycles if len(c) % 2 == 1)

    color: dict[int, int] = {}
    bipartite = True
    for s in sorted(H.vertices):
        if s in color:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in color:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    bipartite = False
    assert bipartite == (not odd)
    distances: dict[int, int | float] = {}
    if len(odd) == 1:
        members = frozenset(odd[0])
        distances = {v: _distance_to_set(H, members, v) for v in sorted(H.vertices)}
    return GraphAnalysis(bipartite=bipartite, odd_cycles=odd, distances=distances)


def _distance_to_set(H: Hypergraph, targets: frozenset[int], v: int) -> int | float:
    if v in targets:
        return 0
    adj: dict[int, set[int]] = {u: set() for u in H.vertices}
    for e in H.edges:
        a, b = sorted(e)
        adj[a].add(b)
        adj[b].add(a)
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                if w in targets:
                    return dist[w]
                queue.append(w)
    return math.inf


def power_regularity_bound(H: Hypergraph, v: int | str) -> int | float:
    """Largest r (possibly infinite) with the star form of v certified regular
    on R/I^r for every power up to r.

    Bipartite graphs give infinity.  With a unique odd cycle of length 2k+1
    at distance l from v the bound is max(k, k + l - 1); more than one odd
    cycle is out of scope.
    """
    i = v if isinstance(v, int) else H.ring.index(v)
    if i not in H.vertices:
        raise PreconditionError("vertex outside the graph")
    analysis = analyze_cycles(H)
    if analysis.bipartite:
        return math.inf
    cycle = analysis.unique_odd_cycle
    if cycle is None:
        raise PreconditionError("more than one odd cycle is out of scope")
    k = (len(cycle) - 1) // 2
    ell = _distance_to_set(H, frozenset(cycle), i)
    return max(k, k + ell - 1)


# ---------------------------------------------------------------------------
# decomposability and 2-saturating sets


def is_decomposable(H: Hypergraph, U) -> bool:
    """Whether U splits as U1 + U2 with an edge inside each part.

    Equivalently: two disjoint edges (possibly both empty) lie inside U.
    """
    U = frozenset(u if isinstance(u, int) else H.ring.index(u) for u in U)
    inside = [e for e in H.edges if e <= U]
    for a, b in itertools.combinations_with_replacement(inside, 2):
        if not a & b:
            return True
    return False


def is_decomposable_by_partitions(H: Hypergraph, U, max_size: int = 20) -> bool:
    """Literal check over all 2-partitions of U; oracle for is_decomposable."""
    U = frozenset(u if isinstance(u, int) else H.ring.index(u) for u in U)
    if len(U) > max_size:
        raise ResourceLimitError(f"more than {max_size} vertices in U")
    elems = sorted(U)
    edges = list(H.edges)
    for bits in range(1 << len(elems)):
        u1 = frozenset(elems[j] for j in range(len(elems)) if bits >> j & 1)
        u2 = U - u1
        if any(e <= u1 for e in edges) and any(e <= u2 for e in edges):
            return True
    return False


def is_2_saturating(H: Hypergraph, U) -> bool:
    """U is indecomposable, yet removing any vertex i of H (from the graph and
    from U) leaves U decomposable in the deletion view."""
    U = frozenset(u if isinstance(u, int) else H.ring.index(u) for u in U)
    if not U <= H.vertices:
        raise PreconditionError("U must consist of vertices of H")
    if is_decomposable(H, U):
        return False
    return all(is_decomposable(H.delete(i), U - {i}) for i in H.vertices)


def has_2_saturating_set(
    H: Hypergraph, max_vertices: int = 20
) -> tuple[bool, frozenset[int] | None]:
    """First 2-saturating subset in (size, lexicographic) order, if any."""
    if len(H.vertices) > max_vertices:
        raise ResourceLimitError(f"more than {max_vertices} vertices")
    vs = sorted(H.vertices)
    for size in range(len(vs) + 1):
        for combo in itertools.combinations(vs, size):
            U = frozenset(combo)
            if is_2_saturating(H, U):
                return (True, U)
    return (False, None)


def minimal_vertex_covers(H: Hypergraph) -> list[frozenset[int]]:
    """Inclusion-minimal vertex sets meeting every edge, sorted by (size, set)."""
    if any(not e for e in H.edges):
        return []
    support = sorted(set().union(*H.edges)) if H.edges else []
    covers = []
    for bits in range(1 << len(support)):
        C = frozenset(support[j] for j in range(len(support)) if bits >> j & 1)
        if not all(e & C for e in H.edges):
            continue
        if all(any(e & C == {i} for e in H.edges) for i in C):
            covers.append(C)
    return sorted(covers, key=lambda c: (len(c), tuple(sorted(c))))


def _fast_two_saturating_exists(edge_masks: list[int], cover: int, bits: list[int]) -> bool:
    """Bitmask search for a 2-saturating set of the restriction to `cover`."""

    def pair_unions(edges: list[int]) -> list[int]:
        if 0 in edges:
            return [0]
        unions = set()
        for a, b in itertools.combinations(edges, 2):
            if not a & b:
                unions.add(a | b)
        return [u for u in unions if not any(v != u and v & ~u == 0 for v in unions)]

    restricted = sorted({e & cover for e in edge_masks})
    pairs = pair_unions(restricted)
    deleted: dict[int, list[int]] = {}
    for i in bits:
        view = sorted({e & ~(1 << i) for e in restricted})
        deleted[i] = pair_unions(view) if (0 not in view) else [0]
    U = cover
    while True:
        if not any(p & ~U == 0 for p in pairs):
            if all(
                any(p & ~(U & ~(1 << i)) == 0 for p in deleted[i]) for i in bits
            ):
                return True
        if U == 0:
            return False
        U = (U - 1) & cover


def tt_associated_primes_square(
    I: MonomialIdeal, max_variables: int = 12
) -> list[MonomialPrime]:
    """Associated primes of R/I^2 of a square-free ideal, combinatorially.

    A prime P_C is associated to the square exactly when the restriction of
    the hypergraph to C admits a 2-saturating set; that forces C to meet
    every edge, so only covers are scanned.  The minimal covers (the minimal
    primes of I) are included in the union up front.
    """
    if I.is_zero() or I.is_unit():
        raise PreconditionError("needs a nonzero proper ideal")
    if not I.is_squarefree():
        raise PreconditionError("only square-free ideals are supported")
    H = to_hypergraph(I)
    support = sorted(set().union(*(g.support() for g in I.gens)))
    if len(support) > max_variables:
        raise ResourceLimitError(f"more than {max_variables} variables in play")
    edge_masks = [sum(1 << i for i in e) for e in H.sorted_edges()]
    primes = {frozenset(c) for c in minimal_vertex_covers(H)}
    for selector in range(1 << len(support)):
        C = 0
        for j, v in enumerate(support):
            if selector >> j & 1:
                C |= 1 << v
        if not all(e & C for e in edge_masks):
            continue
        members = frozenset(v for v in support if C >> v & 1)
        if members in primes:
            continue
        if _fast_two_saturating_exists(edge_masks, C, sorted(members)):
            primes.add(members)
    return sorted(
        (MonomialPrime(I.ring, s) for s in primes), key=MonomialPrime.sort_key
    )


# ---------------------------------------------------------------------------
# leaf families


@dataclass(frozen=True)
class LeavesBound:
    """A depth bound from far-apart leaves, with the certifying star forms."""

    bound: int
    leaves: tuple[int, ...]
    forms: tuple[LinearSum, ...]


def leaves_bound(H: Hypergraph) -> LeavesBound:
    """Largest family of leaves with pairwise distance at least 4.

    Each chosen leaf contributes its star form (leaf plus unique neighbor);
    the family size is the certified depth bound.
    """
    if not H.is_graph():
        raise PreconditionError("leaf analysis needs a graph")
    touched = set().union(*H.edges) if H.edges else set()
    leaves = sorted(v for v in touched if H.degree(v) == 1)
    if not leaves:
        return LeavesBound(0, (), ())
    dist: dict[int, dict[int, int | float]] = {}
    adj: dict[int, set[int]] = {v: set() for v in H.vertices}
    for e in H.edges:
        a, b = sorted(e)
        adj[a].add(b)
        adj[b].add(a)
    for s in leaves:
        d = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in d:
                    d[w] = d[v] + 1
                    queue.append(w)
        dist[s] = d

    def far(u: int, v: int) -> bool:
        return dist[u].get(v, math.inf) >= 4

    best: list[int] = []

    def extend(chosen: list[int], remaining: list[int]) -> None:
        nonlocal best
        if len(chosen) + len(remaining) <= len(best):
            return
        if not remaining:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        v, rest = remaining[0], remaining[1:]
        extend(chosen + [v], [u for u in rest if far(v, u)])
        extend(chosen, rest)

    extend([], leaves)
    forms = tuple(star_form(H, v) for v in best)
    return LeavesBound(len(best), tuple(best), forms)


def to_dot(H: Hypergraph) -> str:
    """Graphviz source for a graph."""
    if not H.is_graph():
        raise PreconditionError("dot output needs a graph")
    names = H.ring.names
    lines = ["graph G {"]
    for v in sorted(H.vertices):
        lines.append(f"  {names[v]};")
    for a, b in H.sorted_edges():
        lines.append(f"  {names[a]} -- {names[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
