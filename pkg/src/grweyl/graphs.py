"""Finite directed multigraphs, finite paths, and decidable graph criteria.

Vertices and edges keep their declaration order; every breadth-first search
below walks frontiers in that order, so witnesses are reproducible.
"""

import re
from collections import deque

from .errors import GraphFormatError, PreconditionError

_ID = re.compile(r"[A-Za-z0-9_]+\Z")


class Graph:
    """A finite directed multigraph (V, E, o, t) with ordered vertices/edges."""

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        self.edges = tuple((e, o, t) for e, o, t in edges)
        vset = set()
        for v in self.vertices:
            if v in vset:
                raise GraphFormatError(f"duplicate vertex identifier {v!r}")
            vset.add(v)
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self.edge_index = {}
        self.origin = {}
        self.target = {}
        for i, (e, o, t) in enumerate(self.edges):
            if e in self.edge_index:
                raise GraphFormatError(f"duplicate edge identifier {e!r}")
            if o not in self.vertex_index:
                raise GraphFormatError(f"edge {e!r} references undeclared vertex {o!r}")
            if t not in self.vertex_index:
                raise GraphFormatError(f"edge {e!r} references undeclared vertex {t!r}")
            self.edge_index[e] = i
            self.origin[e] = o
            self.target[e] = t
        self.out_edges = {v: tuple(e for e, o, _ in self.edges if o == v) for v in self.vertices}
        self.in_edges = {v: tuple(e for e, _, t in self.edges if t == v) for v in self.vertices}
        self._path_cache = {}

    @property
    def edge_ids(self):
        return tuple(e for e, _, _ in self.edges)

    def has_sinks(self):
        return any(not self.out_edges[v] for v in self.vertices)

    def empty_path(self, v):
        return FinitePath(self, v, ())

    def edge_path(self, *edge_ids):
        if not edge_ids:
            raise ValueError("edge_path needs at least one edge; use empty_path")
        return FinitePath(self, self.origin[edge_ids[0]], tuple(edge_ids))

    def paths_of_length(self, length, origin=None):
        """All paths of the given length, in declaration (DFS) order."""
        key = (length, origin)
        if key in self._path_cache:
            return self._path_cache[key]
        starts = [origin] if origin is not None else list(self.vertices)
        out = []
        for v in starts:
            results = []

            def extend(base, edges):
                if len(edges) == length:
                    results.append(FinitePath._make(self, base, edges))
                    return
                at = self.target[edges[-1]] if edges else base
                for e in self.out_edges[at]:
                    extend(base, edges + (e,))

            extend(v, ())
            out.extend(results)
        self._path_cache[key] = out
        return out

    def __eq__(self, other):
        return isinstance(other, Graph) and self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"


class FinitePath:
    """A finite path: a base vertex plus a composable edge sequence.

    The empty path at v has o = t = v.  Paths are immutable and hashable;
    the sort key orders first by length, then by edge declaration indices.
    """

    __slots__ = ("graph", "base", "edges")

    def __init__(self, graph, base, edges):
        if base not in graph.vertex_index:
            raise ValueError(f"unknown base vertex {base!r}")
        edges = tuple(edges)
        at = base
        for e in edges:
            if e not in graph.edge_index:
                raise ValueError(f"unknown edge {e!r}")
            if graph.origin[e] != at:
                raise ValueError(f"edges do not compose at {e!r}: expected origin {at!r}")
            at = graph.target[e]
        self.graph = graph
        self.base = base
        self.edges = edges

    @classmethod
    def _make(cls, graph, base, edges):
        """Unchecked constructor for edge sequences already known valid."""
        p = object.__new__(cls)
        p.graph = graph
        p.base = base
        p.edges = edges
        return p

    def __len__(self):
        return len(self.edges)

    @property
    def o(self):
        return self.base

    @property
    def t(self):
        return self.graph.target[self.edges[-1]] if self.edges else self.base

    def concat(self, other):
        if other.o != self.t:
            raise ValueError("paths do not compose")
        return FinitePath._make(self.graph, self.base, self.edges + other.edges)

    def append(self, edge):
        if self.graph.origin[edge] != self.t:
            raise ValueError(f"edge {edge!r} does not extend the path")
        return FinitePath._make(self.graph, self.base, self.edges + (edge,))

    def slice(self, i, j):
        """Subpath covering edge positions [i, j)."""
        if not (0 <= i <= j <= len(self.edges)):
            raise ValueError("bad slice bounds")
        base = self.graph.origin[self.edges[i]] if i < len(self.edges) else self.t
        return FinitePath._make(self.graph, base, self.edges[i:j])

    def is_prefix_of(self, other):
        if self.base != other.base:
            return False
        return other.edges[: len(self.edges)] == self.edges

    def sort_key(self):
        g = self.graph
        return (len(self.edges), tuple(g.edge_index[e] for e in self.edges), g.vertex_index[self.base])

    def __eq__(self, other):
        return (isinstance(other, FinitePath) and self.graph == other.graph
                and self.base == other.base and self.edges == other.edges)

    def __hash__(self):
        return hash((self.base, self.edges))

    def __repr__(self):
        return f"FinitePath({self.base!r}; {' '.join(self.edges) or 'empty'})"

    def text(self):
        return " ".join(self.edges) if self.edges else f"(empty@{self.base})"


def prefix_comparable(p, q):
    """True iff one path is an initial segment of the other (cylinders meet)."""
    if p.o != q.o:
        return False
    n = min(len(p), len(q))
    return p.edges[:n] == q.edges[:n]


def parse_graph(text):
    """Parse the line-oriented graph file format into a Graph.

    Format: '# comment' lines, one 'vertices: id id ...' declaration
    (repeatable), and 'edge <edgeid> <origin> <target>' lines.
    """
    vertices = []
    edges = []
    seen_v = set()
    seen_e = set()
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("vertices:"):
            for tok in line[len("vertices:"):].split():
                if not _ID.match(tok):
                    raise GraphFormatError(f"bad vertex identifier {tok!r}", line=ln)
                if tok in seen_v:
                    raise GraphFormatError(f"duplicate vertex identifier {tok!r}", line=ln)
                seen_v.add(tok)
                vertices.append(tok)
            continue
        if line.startswith("edge "):
            parts = line.split()
            if len(parts) != 4:
                raise GraphFormatError("expected 'edge <id> <origin> <target>'", line=ln)
            _, e, o, t = parts
            for tok in (e, o, t):
                if not _ID.match(tok):
                    raise GraphFormatError(f"bad identifier {tok!r}", line=ln)
            if e in seen_e:
                raise GraphFormatError(f"duplicate edge identifier {e!r}", line=ln)
            if o not in seen_v:
                raise GraphFormatError(f"dangling reference to undeclared vertex {o!r}", line=ln)
            if t not in seen_v:
                raise GraphFormatError(f"dangling reference to undeclared vertex {t!r}", line=ln)
            seen_e.add(e)
            edges.append((e, o, t))
            continue
        raise GraphFormatError(f"unrecognized line {line!r}", line=ln)
    return Graph(vertices, edges)


# -- decidable criteria -------------------------------------------------------

def check_no_sinks(g):
    """True iff every vertex emits an edge; otherwise the list of sinks."""
    sinks = [v for v in g.vertices if not g.out_edges[v]]
    return (not sinks, sinks)


def check_no_sources(g):
    sources = [v for v in g.vertices if not g.in_edges[v]]
    return (not sources, sources)


def check_condition_L(g):
    """Every cycle has an exit?

    Failure happens exactly when the out-degree-one subgraph contains a
    cycle; that cycle (which has no exit) is returned as the witness.
    """
    deg1 = {v for v in g.vertices if len(g.out_edges[v]) == 1}
    visited = set()
    for start in g.vertices:
        if start not in deg1 or start in visited:
            continue
        trail = []
        pos = {}
        v = start
        while v in deg1 and v not in visited:
            if v in pos:
                cycle_edges = [g.out_edges[u][0] for u in trail[pos[v]:]]
                witness = FinitePath(g, v, tuple(cycle_edges))
                return (False, witness)
            pos[v] = len(trail)
            trail.append(v)
            v = g.target[g.out_edges[v][0]]
        visited.update(trail)
    return (True, None)


def _sync_pair_reach_diagonal(g):
    """Pairs (v, w) from which synchronized walks can meet at a common vertex.

    Backward BFS from the diagonal of the synchronous product V x V, where
    one transition advances both coordinates by one edge each.
    """
    good = set()
    queue = deque()
    for v in g.vertices:
        good.add((v, v))
        queue.append((v, v))
    # reverse transitions: (o(e), o(f)) -> (t(e), t(f))
    preds = {}
    for e, oe, te in g.edges:
        for f, of, tf in g.edges:
            preds.setdefault((te, tf), []).append((oe, of))
    while queue:
        state = queue.popleft()
        for prev in preds.get(state, ()):
            if prev not in good:
                good.add(prev)
                queue.append(prev)
    return good


def check_pair_sync(g):
    """For every (v, w): equal-length paths from v and w with common target?"""
    good = _sync_pair_reach_diagonal(g)
    for v in g.vertices:
        for w in g.vertices:
            if (v, w) not in good:
                return (False, (v, w))
    return (True, None)


def check_topological_transitivity(g):
    """For every (v, w): paths from v and w (any lengths) with common target.

    Asynchronous pair-graph BFS; rejects graphs with sinks.
    """
    ok, sinks = check_no_sinks(g)
    if not ok:
        raise PreconditionError(f"graph has sinks: {sinks}", hypothesis="no-sinks")
    good = set()
    queue = deque()
    for v in g.vertices:
        good.add((v, v))
        queue.append((v, v))
    while queue:
        (a, b) = queue.popleft()
        for e in g.edges:
            eid, o, t = e
            if t == a and (o, b) not in good:
                good.add((o, b))
                queue.append((o, b))
            if t == b and (a, o) not in good:
                good.add((a, o))
                queue.append((a, o))
    return all((v, w) in good for v in g.vertices for w in g.vertices)


def tilde_classes(g):
    """Classes of the transitive-symmetric closure of pair-synchronization.

    The base relation puts v ~ w when equal-length paths from v and w reach
    a common target.  When more than one class exists, also returns the
    central-candidate projection: the sum of vertex projections over the
    class of the first declared vertex.
    """
    good = _sync_pair_reach_diagonal(g)
    # union-find over the base relation's symmetric pairs
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            # keep the earlier-declared representative
            if g.vertex_index[ra] < g.vertex_index[rb]:
                parent[rb] = ra
            else:
                parent[ra] = rb

    for (v, w) in good:
        union(v, w)
    classes = {}
    for v in g.vertices:
        classes.setdefault(find(v), []).append(v)
    ordered = [tuple(classes[r]) for r in sorted(classes, key=lambda u: g.vertex_index[u])]
    if len(ordered) <= 1:
        return (ordered, None)
    from .algebra import AlgebraElement  # deferred: algebra builds on this module
    first_class = ordered[0]
    proj = AlgebraElement.zero(g)
    for v in first_class:
        proj = proj + AlgebraElement.vertex_projection(g, v)
    return (ordered, proj)
