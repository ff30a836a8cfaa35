"""Stallings core graphs for finitely generated subgroups of a free group.

A graph is *folded* when no vertex carries two outgoing or two incoming
edges with the same label; the folded basepointed graph of a generator
list recognizes exactly the subgroup they generate.  Forgetting the
basepoint and pruning degree-1 spurs yields the core graph, a complete
conjugacy invariant.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass

from . import words
from .errors import (
    InputError,
    PeripheralSubgroupError,
    ResourceLimitError,
    TrivialSubgroupError,
)

DEFAULT_INDEX_CAP = 8


class CoreGraph:
    """Labeled directed graph over a rank-n alphabet.

    ``edges`` is a tuple of ``(src, dst, label)`` with labels in ``[0, n)``.
    Immutable after construction; adjacency maps are built lazily.
    """

    __slots__ = ("vertex_count", "edges", "rank", "basepoint", "_out", "_in", "_key")

    def __init__(self, vertex_count, edges, rank, basepoint=None):
        self.vertex_count = vertex_count
        self.edges = tuple(edges)
        self.rank = rank
        self.basepoint = basepoint
        self._out = None
        self._in = None
        self._key = None

    def _adjacency(self):
        if self._out is None:
            out = [dict() for _ in range(self.rank)]
            inn = [dict() for _ in range(self.rank)]
            for eid, (u, v, lab) in enumerate(self.edges):
                out[lab][u] = (v, eid)
                inn[lab][v] = (u, eid)
            self._out, self._in = out, inn
        return self._out, self._in

    @property
    def out_nbr(self):
        return self._adjacency()[0]

    @property
    def in_nbr(self):
        return self._adjacency()[1]

    @property
    def edge_count(self):
        return len(self.edges)

    @property
    def cycle_rank(self):
        """E - V + 1, the rank of the represented subgroup."""
        return len(self.edges) - self.vertex_count + 1

    def degrees(self):
        deg = [0] * self.vertex_count
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def __repr__(self):
        return (f"CoreGraph(V={self.vertex_count}, E={len(self.edges)}, "
                f"rank={self.rank}, basepoint={self.basepoint})")


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def fold(generators, rank=None) -> CoreGraph:
    """Fold the wedge of generator loops into the basepointed graph of
    ``H = <generators>``.

    Identification of same-label edge pairs is processed through a
    union-find merge queue, so the cost is near-linear in total
    generator length.
    """
    ws = []
    for g in generators:
        w = words.reduce(g)
        if w:
            ws.append(w)
    if not ws:
        raise TrivialSubgroupError("all generators reduce to the identity")
    if rank is None:
        rank = max(max(abs(l) for l in w) for w in ws)
    else:
        for w in ws:
            words.check_rank(w, rank)

    # wedge of loops at vertex 0
    edge_list = []
    nv = 1
    for w in ws:
        prev = 0
        for j, l in enumerate(w):
            nxt = 0 if j == len(w) - 1 else nv
            if nxt:
                nv += 1
            if l > 0:
                edge_list.append((prev, nxt, l - 1))
            else:
                edge_list.append((nxt, prev, -l - 1))
            prev = nxt

    parent = list(range(nv))
    out_m = [dict() for _ in range(nv)]
    in_m = [dict() for _ in range(nv)]
    merges = []

    for u, v, lab in edge_list:
        u, v = _find(parent, u), _find(parent, v)
        t = out_m[u].get(lab)
        if t is not None:
            t = _find(parent, t)
            if t != v:
                merges.append((t, v))
        else:
            s = in_m[v].get(lab)
            if s is not None:
                s = _find(parent, s)
                if s != u:
                    merges.append((s, u))
            else:
                out_m[u][lab] = v
                in_m[v][lab] = u
        while merges:
            a, b = merges.pop()
            a, b = _find(parent, a), _find(parent, b)
            if a == b:
                continue
            if len(out_m[a]) + len(in_m[a]) < len(out_m[b]) + len(in_m[b]):
                a, b = b, a
            parent[b] = a
            bo, bi = out_m[b], in_m[b]
            out_m[b] = in_m[b] = None
            for lab2, t2 in bo.items():
                cur = out_m[a].get(lab2)
                if cur is None:
                    out_m[a][lab2] = t2
                else:
                    cur, t2 = _find(parent, cur), _find(parent, t2)
                    if cur != t2:
                        merges.append((cur, t2))
            for lab2, s2 in bi.items():
                cur = in_m[a].get(lab2)
                if cur is None:
                    in_m[a][lab2] = s2
                else:
                    cur, s2 = _find(parent, cur), _find(parent, s2)
                    if cur != s2:
                        merges.append((cur, s2))

    roots = [v for v in range(nv) if _find(parent, v) == v]
    number = {r: i for i, r in enumerate(roots)}
    edges = []
    for r in roots:
        for lab, t in out_m[r].items():
            edges.append((number[r], number[_find(parent, t)], lab))
    edges.sort()
    return CoreGraph(len(roots), edges, rank, basepoint=number[_find(parent, 0)])


def core(g: CoreGraph) -> CoreGraph:
    """Basepoint-free core: prune degree-1 spurs until min degree is 2."""
    nv, ne = g.vertex_count, len(g.edges)
    deg = [0] * nv
    incident = [[] for _ in range(nv)]
    for eid, (u, v, _) in enumerate(g.edges):
        deg[u] += 1
        deg[v] += 1
        incident[u].append(eid)
        incident[v].append(eid)
    dead_v = [False] * nv
    dead_e = [False] * ne
    stack = [v for v in range(nv) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if dead_v[v] or deg[v] > 1:
            continue
        dead_v[v] = True
        for eid in incident[v]:
            if dead_e[eid]:
                continue
            dead_e[eid] = True
            u, w, _ = g.edges[eid]
            other = w if u == v else u
            deg[v] -= 1
            deg[other] -= 1
            if not dead_v[other] and deg[other] <= 1:
                stack.append(other)
    keep = [v for v in range(nv) if not dead_v[v]]
    if not keep:
        raise TrivialSubgroupError("graph has no cycles; subgroup is trivial")
    number = {v: i for i, v in enumerate(keep)}
    edges = sorted(
        (number[u], number[v], lab)
        for eid, (u, v, lab) in enumerate(g.edges)
        if not dead_e[eid]
    )
    return CoreGraph(len(keep), edges, g.rank, basepoint=None)


def contains(g: CoreGraph, w) -> bool:
    """Membership: does ``w`` trace a closed path at the basepoint?"""
    w = words.reduce(w)
    words.check_rank(w, g.rank)
    out, inn = g._adjacency()
    base = g.basepoint if g.basepoint is not None else 0
    v = base
    for l in w:
        step = out[l - 1].get(v) if l > 0 else inn[-l - 1].get(v)
        if step is None:
            return False
        v = step[0]
    return v == base


def index(g: CoreGraph):
    """Covering index: vertex count for a complete cover, else None."""
    per_label = [0] * g.rank
    for _, _, lab in g.edges:
        per_label[lab] += 1
    if all(c == g.vertex_count for c in per_label):
        return g.vertex_count
    return None


def _vertex_profiles(g: CoreGraph):
    """Degree-first local invariant; ties broken by incident dart types."""
    prof = [[] for _ in range(g.vertex_count)]
    for u, v, lab in g.edges:
        prof[u].append(2 * lab)
        prof[v].append(2 * lab + 1)
    return [(len(p), tuple(sorted(p))) for p in prof]


def _encode_from(tables, start, width):
    # tables: flat per-(label, direction) neighbor dicts, v -> w
    order = {start: 0}
    verts = [start]
    enc = [-1] * width
    pos = 0
    for v in verts:
        for table in tables:
            w = table.get(v)
            if w is not None:
                j = order.get(w)
                if j is None:
                    j = len(verts)
                    order[w] = j
                    verts.append(w)
                enc[pos] = j
            pos += 1
    return enc


def canonical_key(g: CoreGraph) -> bytes:
    """Isomorphism-complete key of a connected folded graph.

    Minimum over distinguished start vertices of a deterministic BFS
    encoding; the encoding lists, per discovered vertex and (label,
    direction), the discovery index of the neighbor, which reconstructs
    the graph up to relabeling.
    """
    if g._key is not None:
        return g._key
    profiles = _vertex_profiles(g)
    best_profile = max(profiles)
    starts = [v for v, p in enumerate(profiles) if p == best_profile]
    out, inn = g._adjacency()
    tables = []
    for lab in range(g.rank):
        tables.append({v: step[0] for v, step in out[lab].items()})
        tables.append({v: step[0] for v, step in inn[lab].items()})
    width = 2 * g.rank * g.vertex_count
    enc = min(_encode_from(tables, s, width) for s in starts)
    key = b"%d;%d;" % (g.rank, g.vertex_count) + array("i", enc).tobytes()
    g._key = key
    return key


def spanning_generators(g: CoreGraph):
    """Free basis of the subgroup: one word per non-tree edge of a BFS tree."""
    base = g.basepoint if g.basepoint is not None else 0
    out, inn = g._adjacency()
    parent = {base: None}  # v -> (previous vertex, signed letter into v)
    order = [base]
    tree_eids = set()
    for v in order:
        for lab in range(g.rank):
            step = out[lab].get(v)
            if step is not None and step[0] not in parent:
                parent[step[0]] = (v, lab + 1)
                order.append(step[0])
                tree_eids.add(step[1])
            step = inn[lab].get(v)
            if step is not None and step[0] not in parent:
                parent[step[0]] = (v, -(lab + 1))
                order.append(step[0])
                tree_eids.add(step[1])

    def path_to(v):
        rev = []
        link = parent[v]
        while link is not None:
            rev.append(link[1])
            link = parent[link[0]]
        rev.reverse()
        return rev

    gens = []
    for eid, (u, v, lab) in enumerate(g.edges):
        if eid in tree_eids:
            continue
        gens.append(words.concat(path_to(u), (lab + 1,), words.inverse(path_to(v))))
    return gens


@dataclass(frozen=True, slots=True)
class SubgroupClass:
    """Conjugacy class of a finitely generated subgroup, keyed by the
    canonical form of its basepoint-free core graph."""

    graph: CoreGraph
    key: bytes

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        return isinstance(other, SubgroupClass) and self.key == other.key

    @property
    def rank(self):
        return self.graph.cycle_rank

    @property
    def euler_char(self):
        return self.graph.vertex_count - len(self.graph.edges)


def subgroup_class(source, surface=None, rank=None) -> SubgroupClass:
    """Build a SubgroupClass from generator words or a folded graph.

    With a surface given, rejects cyclic subgroups whose root is
    peripheral (their limit set is a single point).
    """
    if isinstance(source, CoreGraph):
        g = source
    else:
        if rank is None and surface is not None:
            rank = surface.rank
        g = fold(source, rank=rank)
    g = core(g)
    if surface is not None and g.cycle_rank == 1:
        cycle = spanning_generators(g)[0]
        peripheral, _ = words.is_peripheral(words.conj_class(cycle), surface)
        if peripheral:
            raise PeripheralSubgroupError(
                "cyclic subgroup with peripheral root is outside the subgroup universe"
            )
    return SubgroupClass(graph=g, key=canonical_key(g))


def bouquet(rank: int) -> CoreGraph:
    """The whole group: one vertex, one loop per generator."""
    return CoreGraph(1, [(0, 0, lab) for lab in range(rank)], rank, basepoint=0)


def subgroups_of_index(rank: int, k: int, cap: int = DEFAULT_INDEX_CAP):
    """All index-k subgroups of the rank-n free group, one per subgroup.

    Enumerated as transitive permutation actions on {0..k-1} with marked
    point 0, using first-appearance numbering of points so each subgroup
    appears exactly once.  Returned as complete basepointed cover graphs.
    """
    if rank < 1 or k < 1:
        raise InputError("rank and index must be positive")
    if k > cap:
        raise ResourceLimitError(f"index {k} above cap {cap}")
    tables = []
    table = [[None] * k for _ in range(rank)]
    used = [[False] * k for _ in range(rank)]

    def rec(slot, introduced):
        if slot == rank * k:
            tables.append([row[:] for row in table])
            return
        p, gidx = divmod(slot, rank)
        if p >= introduced:
            return
        for q in range(min(introduced + 1, k)):
            if used[gidx][q]:
                continue
            table[gidx][p] = q
            used[gidx][q] = True
            rec(slot + 1, introduced + 1 if q == introduced else introduced)
            used[gidx][q] = False
        table[gidx][p] = None

    rec(0, 1)
    graphs = []
    for tab in tables:
        edges = [(p, tab[gidx][p], gidx) for gidx in range(rank) for p in range(k)]
        edges.sort()
        graphs.append(CoreGraph(k, edges, rank, basepoint=0))
    return graphs


def finite_index_subgroups(h: SubgroupClass, k: int, cap: int = DEFAULT_INDEX_CAP):
    """All index-k subgroups of ``h``, as covers of its core graph.

    The monodromy of each non-tree edge runs over the index-k actions of
    the free group on the basis; tree edges lift sheet-by-sheet.  Every
    returned graph is a connected k-sheeted cover: V' = kV, E' = kE.
    """
    g = h.graph
    out, inn = g._adjacency()
    base = 0
    path = {base: True}
    order = [base]
    tree = set()
    for v in order:
        for lab in range(g.rank):
            step = out[lab].get(v)
            if step is not None and step[0] not in path:
                path[step[0]] = True
                order.append(step[0])
                tree.add((v, step[0], lab))
            step = inn[lab].get(v)
            if step is not None and step[0] not in path:
                path[step[0]] = True
                order.append(step[0])
                tree.add((step[0], v, lab))
    non_tree = [e for e in g.edges if e not in tree]
    m = len(non_tree)
    assert m == g.cycle_rank

    covers = []
    for action in subgroups_of_index(m, k, cap=cap):
        perms = [[None] * k for _ in range(m)]
        for p, q, lab in action.edges:
            perms[lab][p] = q
        edges = []
        for u, v, lab in g.edges:
            if (u, v, lab) in tree:
                for s in range(k):
                    edges.append((u * k + s, v * k + s, lab))
            else:
                perm = perms[non_tree.index((u, v, lab))]
                for s in range(k):
                    edges.append((u * k + s, v * k + perm[s], lab))
        edges.sort()
        cover = CoreGraph(g.vertex_count * k, edges, g.rank, basepoint=None)
        covers.append(SubgroupClass(graph=cover, key=canonical_key(cover)))
    return covers
