"""Exact graph-minor containment with certificates, an independent
closure oracle, and structural checks on minor-free graphs.

has_minor searches for a minor model directly: each H-vertex receives a
connected branch set of G, branch sets are pairwise disjoint, and every
H-edge must be realized by a G-edge between the corresponding sets.  The
search is exhaustive (correctness over speed at desk scale); the only
prunes are sound ones: leftover-vertex counting, the out-edge count of a
candidate branch set, reachability of still-untouched neighbor sets, and
a min-vertex ordering constraint between interchangeable (twin) H-vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .canonical import canonical_form
from .graphs import Graph, bits, friendship, mask_of, quadrangle_book

DEFAULT_NODE_CAP = 100_000_000
MAX_MINOR_ORDER = 12


class SearchLimitError(RuntimeError):
    """Minor search exceeded its node cap; deterministic and reproducible."""

    def __init__(self, cap: int):
        super().__init__(f"minor search exceeded {cap} nodes")
        self.cap = cap


@dataclass(frozen=True)
class MinorModel:
    """Branch sets indexed by H-vertex; a certificate of containment."""

    branch_sets: tuple[frozenset[int], ...]

    def to_json(self) -> dict[str, list[int]]:
        return {str(i): sorted(s) for i, s in enumerate(self.branch_sets)}


@dataclass(frozen=True)
class MinorVerdict:
    contains: bool
    model: MinorModel | None
    nodes_explored: int


def _embedding_order(h: Graph) -> list[int]:
    """Descending degree, ties broken by adjacency to already-ordered vertices."""
    degs = h.degrees()
    order: list[int] = []
    placed = 0
    for _ in range(h.n):
        best = None
        best_key = None
        for v in range(h.n):
            if placed >> v & 1:
                continue
            key = (degs[v], (h.rows[v] & placed).bit_count(), -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed |= 1 << best
    return order


def _automorphisms(h: Graph, cap: int = 10_000) -> list[list[int]]:
    """All automorphisms of h (as vertex permutations), up to a count cap.

    Backtracking over degree-compatible images; any subset of Aut(h) yields
    sound symmetry pruning, so hitting the cap only costs speed.
    """
    n = h.n
    degs = h.degrees()
    order = _embedding_order(h)
    found: list[list[int]] = []
    image = [-1] * n

    def extend(i: int, used: int) -> bool:
        if len(found) >= cap:
            return True
        if i == n:
            found.append(image.copy())
            return len(found) >= cap
        v = order[i]
        for w in range(n):
            if used >> w & 1 or degs[w] != degs[v]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if (h.rows[v] >> u & 1) != (h.rows[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                if extend(i + 1, used | 1 << w):
                    return True
                image[v] = -1
        return False

    extend(0, 0)
    return found


def _twin_classes(h: Graph) -> list[int]:
    """Union-find partition of H-vertices into interchangeable classes.

    Two vertices are twins when their neighborhoods agree outside the pair
    (either both adjacent to exactly the same vertices, or adjacent to each
    other plus the same vertices); swapping any twin pair is an
    automorphism, so branch sets within a class may be forced into
    ascending min-vertex order.
    """
    parent = list(range(h.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(h.n):
        for v in range(u + 1, h.n):
            same_open = h.rows[u] == h.rows[v]
            same_closed = (h.rows[u] | 1 << u) == (h.rows[v] | 1 << v)
            if same_open or same_closed:
                parent[find(u)] = find(v)
    return [find(v) for v in range(h.n)]


def has_minor(g: Graph, h: Graph, node_cap: int = DEFAULT_NODE_CAP) -> MinorVerdict:
    """Exact test whether h is a minor of g, with a validating certificate.

    H-vertices are assigned single-vertex branch sets (roots) in descending
    degree order; branch sets grow lazily, only when an H-edge between two
    assigned sets is not yet realized.  A missing edge is realized by a
    simple connector path through unused vertices, whose prefix joins one
    side and suffix the other, so total growth is bounded by the vertex
    slack |V(G)| - |V(H)|.
    """
    if h.n > MAX_MINOR_ORDER:
        raise ValueError(f"minor pattern order {h.n} exceeds limit {MAX_MINOR_ORDER}")
    if h.n == 0:
        return MinorVerdict(True, MinorModel(()), 0)
    if h.n > g.n or h.edge_count() > g.edge_count():
        return MinorVerdict(False, None, 0)

    k = h.n
    order = _embedding_order(h)
    pos_of = {v: i for i, v in enumerate(order)}
    earlier = [[pos_of[u] for u in bits(h.rows[v]) if pos_of[u] < i]
               for i, v in enumerate(order)]
    twin = _twin_classes(h)
    twin_earlier = [[j for j in range(i) if twin[order[j]] == twin[order[i]]]
                    for i in range(k)]

    # Aut(H) symmetry breaking: explore only assignments whose root tuple
    # is lex-minimal in its orbit.  A position permutation becomes
    # checkable once it stabilizes the assigned prefix.
    stabilizers: list[list[list[int]]] = [[] for _ in range(k)]
    for sigma in _automorphisms(h):
        tau = [pos_of[sigma[order[i]]] for i in range(k)]
        if tau == list(range(k)):
            continue
        top = -1
        for i in range(k):
            top = max(top, tau[i])
            if top == i:
                stabilizers[i].append(tau)

    rows = g.rows
    full = g.vertex_mask()
    branch = [0] * k
    nbr = [0] * k  # neighborhood mask of each branch set
    roots = [0] * k
    nodes = 0

    # Host-side symmetry: the first root only needs one representative per
    # discovered Aut(G) vertex orbit.  Worth the setup cost only when the
    # host is large enough for the search tree to dominate.
    first_root_mask = full
    if g.n >= 10:
        orbit = list(range(g.n))

        def orep(x):
            while orbit[x] != x:
                orbit[x] = orbit[orbit[x]]
                x = orbit[x]
            return x

        for sigma in _automorphisms(g, cap=3000):
            for v, w in enumerate(sigma):
                a, b = orep(v), orep(w)
                if a != b:
                    orbit[a] = b
        first_root_mask = 0
        for v in range(g.n):
            if orep(v) == v:
                first_root_mask |= 1 << v

    def bump() -> None:
        nonlocal nodes
        nodes += 1
        if nodes > node_cap:
            raise SearchLimitError(node_cap)

    def assign(i: int, used: int) -> bool:
        bump()
        if i == k:
            return True
        free = full & ~used
        if free.bit_count() < k - i:
            return False
        # roots must be able to reach every required earlier set within the
        # growth budget (free vertices not reserved for later roots)
        cand = free if i else free & first_root_mask
        if earlier[i]:
            budget = free.bit_count() - 1 - (k - i - 1)
            for j in earlier[i]:
                ball = nbr[j]
                for _ in range(budget):
                    grow = 0
                    for v in bits(ball & free):
                        grow |= rows[v]
                    if grow | ball == ball:
                        break
                    ball |= grow
                cand &= ball
                if not cand:
                    return False
        floor = -1
        for j in twin_earlier[i]:
            if roots[j] > floor:
                floor = roots[j]
        for r in bits(cand):
            if r <= floor:
                continue
            roots[i] = r
            skip = False
            for tau in stabilizers[i]:
                for j in range(i + 1):
                    a, b = roots[tau[j]], roots[j]
                    if a != b:
                        if a < b:
                            skip = True
                        break
                if skip:
                    break
            if skip:
                continue
            branch[i] = 1 << r
            nbr[i] = rows[r]
            if realize(i, 0, used | 1 << r):
                return True
        return False

    def realize(i: int, e: int, used: int) -> bool:
        bump()
        if e == len(earlier[i]):
            return assign(i + 1, used)
        j = earlier[i][e]
        if nbr[i] & branch[j]:
            return realize(i, e + 1, used)
        budget = (full & ~used).bit_count() - (k - i - 1)
        if budget <= 0:
            return False
        return connect(i, j, e, used, [], nbr[i], budget)

    def connect(i: int, j: int, e: int, used: int, path: list[int],
                tip_reach: int, budget: int) -> bool:
        """Extend a simple path from branch i toward branch j's neighborhood;
        on arrival, split the path between the two sides at every cut."""
        bump()
        for v in bits(tip_reach & full & ~used):
            path.append(v)
            used_v = used | 1 << v
            if nbr[j] >> v & 1:
                save = (branch[i], nbr[i], branch[j], nbr[j])
                for cut in range(len(path) + 1):
                    bi, nbi, bj, nbj = save
                    for p in path[:cut]:
                        bi |= 1 << p
                        nbi |= rows[p]
                    for p in path[cut:]:
                        bj |= 1 << p
                        nbj |= rows[p]
                    branch[i], nbr[i], branch[j], nbr[j] = bi, nbi, bj, nbj
                    if realize(i, e + 1, used_v):
                        return True
                branch[i], nbr[i], branch[j], nbr[j] = save
            if budget > 1 and connect(i, j, e, used_v, path, rows[v], budget - 1):
                return True
            path.pop()
        return False

    found = assign(0, 0)
    if not found:
        return MinorVerdict(False, None, nodes)
    sets = [frozenset()] * k
    for i, v in enumerate(order):
        sets[v] = frozenset(bits(branch[i]))
    return MinorVerdict(True, MinorModel(tuple(sets)), nodes)


def validate_model(g: Graph, h: Graph, model: MinorModel) -> bool:
    """Re-check a certificate against the three minor-model invariants."""
    sets = model.branch_sets
    if len(sets) != h.n:
        return False
    masks = []
    used = 0
    for s in sets:
        if not s:
            return False
        m = mask_of(s)
        if m >> g.n or m & used:
            return False
        used |= m
        masks.append(m)
    for m in masks:  # connectivity of each branch set
        start = m & -m
        seen = start
        while True:
            grow = 0
            for v in bits(seen):
                grow |= g.rows[v]
            grow = grow & m & ~seen
            if not grow:
                break
            seen |= grow
        if seen != m:
            return False
    for a, b in h.edges():
        touch = 0
        for v in bits(masks[a]):
            touch |= g.rows[v]
        if not touch & masks[b]:
            return False
    return True


# -- independent oracle -------------------------------------------------


def subgraph_contains(g: Graph, h: Graph) -> bool:
    """Whether g has a (not necessarily induced) subgraph isomorphic to h."""
    if h.n > g.n or h.edge_count() > g.edge_count():
        return False
    if h.n == 0:
        return True
    order = _embedding_order(h)
    pos_of = {v: i for i, v in enumerate(order)}
    earlier = [[pos_of[u] for u in bits(h.rows[v]) if pos_of[u] < i]
               for i, v in enumerate(order)]
    degs_h = [h.degree(v) for v in order]
    degs_g = g.degrees()
    image = [0] * h.n
    full = g.vertex_mask()

    def place(i: int, used: int) -> bool:
        if i == h.n:
            return True
        cands = full & ~used
        for j in earlier[i]:
            cands &= g.rows[image[j]]
        for v in bits(cands):
            if degs_g[v] < degs_h[i]:
                continue
            image[i] = v
            if place(i + 1, used | 1 << v):
                return True
        return False

    return place(0, 0)


@lru_cache(maxsize=512)
def _closure_members(g: Graph) -> tuple[Graph, ...]:
    """All graphs reachable from g by single edge deletions/contractions,
    one representative per isomorphism class."""
    seen = {canonical_form(g): g}
    queue = [g]
    while queue:
        cur = queue.pop()
        for u, v in cur.edges():
            for child in (cur.without_edge(u, v), cur.contract_edge(u, v)):
                key = canonical_form(child)
                if key not in seen:
                    seen[key] = child
                    queue.append(child)
    return tuple(seen.values())


def minor_closure_oracle(g: Graph, h: Graph) -> bool:
    """Reference minor test: close g under edge deletion/contraction and
    look for h as a subgraph.  Exponential; restricted to order <= 7."""
    if g.n > 7:
        raise ValueError(f"closure oracle limited to 7 vertices, got {g.n}")
    return any(subgraph_contains(member, h) for member in _closure_members(g))


# -- minor-free family predicates ----------------------------------------


def is_fs_minor_free(g: Graph, s: int, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    """No minor isomorphic to s triangles sharing a vertex."""
    return not has_minor(g, friendship(s), node_cap).contains


def is_qt_minor_free(g: Graph, t: int, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    """No minor isomorphic to t quadrangles sharing a vertex."""
    return not has_minor(g, quadrangle_book(t), node_cap).contains


# -- structural lemma checks ----------------------------------------------


@dataclass(frozen=True)
class StructureViolation:
    kind: str
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class StructureReport:
    ok: bool
    violations: tuple[StructureViolation, ...]


def _check_bipartite_config(g: Graph, a_set, b_set, a_size: int, b_min: int):
    a = sorted(set(a_set))
    b = sorted(set(b_set))
    a_mask = mask_of(a)
    b_mask = mask_of(b)
    if a_mask & b_mask:
        raise ValueError("A and B overlap")
    if (a_mask | b_mask) >> g.n:
        raise ValueError("A or B references missing vertices")
    if len(a) != a_size:
        raise ValueError(f"|A| must be {a_size}, got {len(a)}")
    if len(b) < b_min:
        raise ValueError(f"|B| must be at least {b_min}, got {len(b)}")
    for u in a:
        if g.rows[u] & b_mask != b_mask:
            raise ValueError(f"G[A,B] not complete bipartite: vertex {u} misses part of B")
    return a_mask, b_mask, b


def check_fs_structure(g: Graph, s: int, a_set, b_set) -> StructureReport:
    """For an F_s-minor-free graph with a complete bipartite K_{s,|B|}
    configuration (|B| >= 2s): B must be independent and every vertex
    outside A and B has at most one neighbor in B."""
    a_mask, b_mask, b = _check_bipartite_config(g, a_set, b_set, s, 2 * s)
    violations = []
    for u in b:
        inside = g.rows[u] & b_mask
        for v in bits(inside):
            if v > u:
                violations.append(StructureViolation("edge_inside_b", (u, v)))
    outside = g.vertex_mask() & ~a_mask & ~b_mask
    for v in bits(outside):
        d = (g.rows[v] & b_mask).bit_count()
        if d > 1:
            violations.append(StructureViolation("outside_degree_into_b", (v,)))
    return StructureReport(ok=not violations, violations=tuple(violations))


def check_qt_structure(g: Graph, t: int, a_set, b_set) -> StructureReport:
    """For a Q_t-minor-free graph with a complete bipartite K_{t,|B|}
    configuration (|B| >= 2t+1): G[B] has maximum degree 1 (disjoint edges
    plus isolated vertices) and every vertex outside A and B has at most
    two neighbors in B."""
    a_mask, b_mask, b = _check_bipartite_config(g, a_set, b_set, t, 2 * t + 1)
    violations = []
    for u in b:
        inside = g.rows[u] & b_mask
        if inside.bit_count() > 1:
            nbrs = tuple(bits(inside))
            violations.append(StructureViolation("path_center_inside_b", (u,) + nbrs[:2]))
    outside = g.vertex_mask() & ~a_mask & ~b_mask
    for v in bits(outside):
        d = (g.rows[v] & b_mask).bit_count()
        if d > 2:
            violations.append(StructureViolation("outside_degree_into_b", (v,)))
    return StructureReport(ok=not violations, violations=tuple(violations))
