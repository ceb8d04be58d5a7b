"""Eventually periodic infinite paths, the shift, and the path-pair groupoid.

Points of the infinite path space are restricted to eventually periodic
paths (prefix plus repeating primitive cycle).  These are dense, closed
under the shift and under every sliding-block map used here, and have
decidable equality, so all identities between the continuous maps in scope
can be checked on them exactly.
"""

from math import gcd

from .errors import BisectionError, NotComposableError, PreconditionError
from .graphs import FinitePath, check_no_sinks, check_no_sources, prefix_comparable


def _primitive_root(edges):
    """Shortest word whose power equals the given nonempty word."""
    n = len(edges)
    for d in range(1, n + 1):
        if n % d == 0 and edges[: d] * (n // d) == edges:
            return edges[:d]
    return edges


class EvPeriodicPath:
    """Canonical form of an eventually periodic one-sided infinite path.

    Stored as (prefix, cycle) with the cycle primitive and the prefix as
    short as possible (the last prefix edge never equals the last cycle
    edge); two values represent the same infinite path iff their canonical
    forms are equal.
    """

    __slots__ = ("graph", "prefix", "cycle")

    def __init__(self, prefix, cycle):
        if len(cycle) == 0:
            raise ValueError("cycle part must be nonempty")
        if cycle.o != cycle.t:
            raise ValueError("cycle part is not a cycle")
        if prefix.t != cycle.o:
            raise ValueError("prefix does not feed into the cycle")
        g = prefix.graph
        pe = list(prefix.edges)
        ce = list(_primitive_root(tuple(cycle.edges)))
        # absorb prefix edges that merely replay the cycle's end
        while pe and pe[-1] == ce[-1]:
            pe.pop()
            ce = [ce[-1]] + ce[:-1]
        base = g.origin[pe[0]] if pe else g.origin[ce[0]]
        self.graph = g
        self.prefix = FinitePath(g, base, tuple(pe))
        self.cycle = FinitePath(g, g.origin[ce[0]], tuple(ce))

    @staticmethod
    def from_words(graph, prefix_edges, cycle_edges, base=None):
        cyc = graph.edge_path(*cycle_edges)
        if prefix_edges:
            pre = graph.edge_path(*prefix_edges)
        else:
            pre = graph.empty_path(base if base is not None else cyc.o)
        return EvPeriodicPath(pre, cyc)

    @staticmethod
    def periodic(graph, cycle_edges):
        return EvPeriodicPath.from_words(graph, (), cycle_edges)

    @property
    def o(self):
        return self.prefix.o

    def edge_at(self, i):
        p = len(self.prefix)
        if i < p:
            return self.prefix.edges[i]
        return self.cycle.edges[(i - p) % len(self.cycle)]

    def vertex_at(self, i):
        if i == 0:
            return self.o
        return self.graph.target[self.edge_at(i - 1)]

    def word(self, i, j):
        """The finite path covering positions [i, j) of this infinite path."""
        edges = tuple(self.edge_at(k) for k in range(i, j))
        return FinitePath._make(self.graph, self.vertex_at(i), edges)

    def raw_word(self, i, j):
        return tuple(self.edge_at(k) for k in range(i, j))

    def shift(self):
        p = len(self.prefix)
        if p:
            return EvPeriodicPath(self.prefix.slice(1, p), self.cycle)
        c = self.cycle.edges
        rotated = c[1:] + c[:1]
        g = self.graph
        head = g.empty_path(g.origin[rotated[0]])
        return EvPeriodicPath(head, FinitePath(g, g.origin[rotated[0]], rotated))

    def shift_n(self, n):
        if n < 0:
            raise ValueError("cannot shift backwards")
        p = len(self.prefix)
        if n <= p:
            return EvPeriodicPath(self.prefix.slice(n, p), self.cycle)
        c = self.cycle.edges
        k = (n - p) % len(c)
        rotated = c[k:] + c[:k]
        g = self.graph
        head = g.empty_path(g.origin[rotated[0]])
        return EvPeriodicPath(head, FinitePath(g, g.origin[rotated[0]], rotated))

    def starts_with(self, path):
        if path.o != self.o:
            return False
        return all(self.edge_at(i) == path.edges[i] for i in range(len(path)))

    def __eq__(self, other):
        return (isinstance(other, EvPeriodicPath)
                and self.prefix == other.prefix and self.cycle == other.cycle)

    def __hash__(self):
        return hash((self.prefix, self.cycle))

    def sort_key(self):
        return (self.prefix.sort_key(), self.cycle.sort_key())

    def __repr__(self):
        return f"EvPeriodicPath({self.text()})"

    def text(self):
        pre = " ".join(self.prefix.edges)
        cyc = " ".join(self.cycle.edges)
        return f"{pre} | {cyc}" if pre else f"| {cyc}"


def greedy_point(graph, vertex):
    """A deterministic point of C(vertex): follow first declared out-edges.

    Walks until a vertex repeats, yielding a stem plus a cycle.
    """
    trail = []
    seen = {vertex: 0}
    at = vertex
    while True:
        out = graph.out_edges[at]
        if not out:
            raise PreconditionError(f"vertex {at!r} is a sink; no infinite path", hypothesis="no-sinks")
        e = out[0]
        trail.append(e)
        at = graph.target[e]
        if at in seen:
            k = seen[at]
            return EvPeriodicPath.from_words(graph, tuple(trail[:k]), tuple(trail[k:]), base=vertex)
        seen[at] = len(trail)


def point_through(path):
    """A deterministic point of the cylinder C(path)."""
    tail = greedy_point(path.graph, path.t)
    if len(path) == 0:
        return tail
    return EvPeriodicPath.from_words(
        path.graph, path.edges + tail.prefix.edges, tail.cycle.edges, base=path.o)


def ell_tilde(y, n, x):
    """Minimal p >= max(0, n) with T^p(y) = T^(p-n)(x), or None.

    If no equalization happens before both sides are deep in their cycles
    plus one full common period, none exists.
    """
    start = max(0, n)
    settle = max(start, len(y.prefix), len(x.prefix) + n)
    period = lcm_cycles(y, x)
    for p in range(start, settle + period):
        if y.shift_n(p) == x.shift_n(p - n):
            return p
    return None


def lcm_cycles(y, x):
    a, b = len(y.cycle), len(x.cycle)
    return a // gcd(a, b) * b


class GroupoidElement:
    """A triple (target, degree, source) with its minimal shift witness.

    The witness pair (p, q) satisfies p - q = degree and
    T^p(target) = T^q(source), with p minimal.
    """

    __slots__ = ("y", "k", "x", "p", "q")

    def __init__(self, target, degree, source):
        p = ell_tilde(target, degree, source)
        if p is None:
            raise NotComposableError(
                f"({target.text()}, {degree}, {source.text()}) is not a groupoid element")
        self.y = target
        self.k = degree
        self.x = source
        self.p = p
        self.q = p - degree

    @staticmethod
    def unit(x):
        return GroupoidElement(x, 0, x)

    @property
    def target(self):
        return self.y

    @property
    def source(self):
        return self.x

    @property
    def degree(self):
        return self.k

    def is_unit(self):
        return self.k == 0 and self.y == self.x

    def inverse(self):
        return GroupoidElement(self.x, -self.k, self.y)

    def __eq__(self, other):
        return (isinstance(other, GroupoidElement)
                and self.y == other.y and self.k == other.k and self.x == other.x)

    def __hash__(self):
        return hash((self.y, self.k, self.x))

    def __repr__(self):
        return f"GroupoidElement({self.y.text()}, {self.k}, {self.x.text()})"


def compose(alpha, beta):
    """(z, n, y) . (y, m, x) = (z, n + m, x); witnesses are recomputed."""
    if alpha.x != beta.y:
        raise NotComposableError("source of the left factor differs from target of the right")
    return GroupoidElement(alpha.y, alpha.k + beta.k, beta.x)


class BasicBisection:
    """Z(mu, nu): the arrows (mu z, |mu|-|nu|, nu z) over tails z from t(mu)."""

    __slots__ = ("mu", "nu")

    def __init__(self, mu, nu):
        if mu.t != nu.t:
            raise ValueError("paths of a basic bisection must share their target")
        self.mu = mu
        self.nu = nu

    @property
    def degree(self):
        return len(self.mu) - len(self.nu)

    def star(self):
        return BasicBisection(self.nu, self.mu)

    def extend(self, path):
        """Z(mu c, nu c) for a common tail c from t(mu)."""
        return BasicBisection(self.mu.concat(path), self.nu.concat(path))

    def sample_point(self):
        """A deterministic element of this bisection."""
        tail = greedy_point(self.mu.graph, self.mu.t)
        y = EvPeriodicPath.from_words(self.mu.graph, self.mu.edges + tail.prefix.edges,
                                      tail.cycle.edges, base=self.mu.o)
        x = EvPeriodicPath.from_words(self.nu.graph, self.nu.edges + tail.prefix.edges,
                                      tail.cycle.edges, base=self.nu.o)
        return GroupoidElement(y, self.degree, x)

    def sort_key(self):
        return (self.mu.sort_key(), self.nu.sort_key())

    def __eq__(self, other):
        return isinstance(other, BasicBisection) and self.mu == other.mu and self.nu == other.nu

    def __hash__(self):
        return hash((self.mu, self.nu))

    def __repr__(self):
        return f"Z({self.mu.text()}; {self.nu.text()})"


def bisection_contains(b, alpha):
    """Membership of a groupoid element in Z(mu, nu)."""
    if alpha.k != b.degree:
        return False
    if not alpha.y.starts_with(b.mu):
        return False
    if not alpha.x.starts_with(b.nu):
        return False
    return alpha.y.shift_n(len(b.mu)) == alpha.x.shift_n(len(b.nu))


def _extends(small, big):
    """True iff big = (small.mu c, small.nu c) for some common tail c."""
    d = len(big.mu) - len(small.mu)
    if d < 0 or len(big.nu) - len(small.nu) != d:
        return False
    if not small.mu.is_prefix_of(big.mu) or not small.nu.is_prefix_of(big.nu):
        return False
    return big.mu.edges[len(small.mu):] == big.nu.edges[len(small.nu):]


def normalize_bisection_family(pieces):
    """Drop pieces compatibly contained in others; reject genuine overlaps."""
    pieces = sorted(set(pieces), key=lambda b: b.sort_key())
    kept = []
    for b in pieces:
        absorbed = False
        for other in pieces:
            if other is not b and other != b and _extends(other, b):
                absorbed = True
                break
        if not absorbed:
            kept.append(b)
    for i, a in enumerate(kept):
        for b in kept[i + 1:]:
            if prefix_comparable(a.nu, b.nu) or prefix_comparable(a.mu, b.mu):
                raise BisectionError(
                    f"pieces {a!r} and {b!r} overlap on sources or ranges")
    return kept


def bisection_multiply(family_a, family_b):
    """Product of two bisections given as compatible unions of Z(mu, nu).

    Piecewise prefix rule: Z(mu,nu) . Z(al,be) = Z(mu c, be) if al = nu c,
    Z(mu, be c) if nu = al c, and empty otherwise.
    """
    a_pieces = normalize_bisection_family(family_a)
    b_pieces = normalize_bisection_family(family_b)
    out = []
    for pa in a_pieces:
        for pb in b_pieces:
            piece = _piece_product(pa, pb)
            if piece is not None:
                out.append(piece)
    return normalize_bisection_family(out)


def _piece_product(pa, pb):
    nu, al = pa.nu, pb.mu
    if nu.is_prefix_of(al):
        gam = al.slice(len(nu), len(al))
        return BasicBisection(pa.mu.concat(gam), pb.nu)
    if al.is_prefix_of(nu):
        gam = nu.slice(len(al), len(nu))
        return BasicBisection(pa.mu, pb.nu.concat(gam))
    return None


class CylinderUnion:
    """A finite union of cylinders, stored with nested cylinders removed."""

    __slots__ = ("graph", "paths")

    def __init__(self, graph, paths):
        paths = sorted(set(paths), key=lambda p: p.sort_key())
        kept = []
        for p in paths:
            if not any(q.is_prefix_of(p) for q in paths if q != p and len(q) < len(p)):
                kept.append(p)
        self.graph = graph
        self.paths = tuple(kept)

    def contains_point(self, x):
        return any(x.starts_with(p) for p in self.paths)

    def covers_all(self):
        """Does the union equal the whole infinite path space?"""
        return all(self._covers_cylinder(self.graph.empty_path(v), self.paths)
                   for v in self.graph.vertices)

    def _covers_cylinder(self, base, paths):
        rel = [p for p in paths if prefix_comparable(p, base)]
        if any(len(p) <= len(base) for p in rel):
            return True
        if not rel:
            return False
        g = self.graph
        out = g.out_edges[base.t]
        if not out:
            return True  # empty cylinder at a sink is vacuously covered
        return all(self._covers_cylinder(base.append(e), rel) for e in out)

    def is_proper(self):
        return not self.covers_all()

    def shift_image(self):
        """T(U) as a CylinderUnion; requires every piece nonempty-depth."""
        imgs = []
        for p in self.paths:
            if len(p) == 0:
                raise ValueError("shift image of a depth-0 cylinder is not a cylinder union")
            imgs.append(p.slice(1, len(p)))
        return CylinderUnion(self.graph, imgs)

    def shift_injective(self):
        """Is the shift injective on this union?

        After normalization this fails exactly when two pieces with distinct
        first edges have prefix-comparable shifts.
        """
        ps = self.paths
        if any(len(p) == 0 for p in ps):
            # a depth-0 cylinder contains distinct points with equal shifts
            # whenever its vertex has in-degree >= 2 within the union
            raise ValueError("injectivity test requires pieces of depth >= 1")
        for i, p in enumerate(ps):
            for q in ps[i + 1:]:
                if p.edges[0] != q.edges[0] and prefix_comparable(
                        p.slice(1, len(p)), q.slice(1, len(q))):
                    return False
        return True

    def __eq__(self, other):
        return isinstance(other, CylinderUnion) and self.paths == other.paths

    def __hash__(self):
        return hash(self.paths)

    def __repr__(self):
        return "CylinderUnion(" + ", ".join(p.text() for p in self.paths) + ")"


def _depth_cuts(graph, vertex, max_depth):
    """All complete prefix-free cylinder covers of C(vertex), depth-bounded.

    A cut is a tuple of paths from the vertex; the trivial cut is the empty
    path itself.  Ordered coarsest-first.
    """
    base = graph.empty_path(vertex)
    cuts = [(base,)]
    if max_depth <= 0:
        return cuts
    out = graph.out_edges[vertex]
    if not out:
        return cuts
    per_edge = []
    for e in out:
        sub = _depth_cuts(graph, graph.target[e], max_depth - 1)
        per_edge.append([tuple(graph.edge_path(e).concat(p) if len(p) else graph.edge_path(e)
                               for p in cut) for cut in sub])
    combos = [()]
    for options in per_edge:
        combos = [acc + opt for acc in combos for opt in options]
    cuts.extend(combos)
    return cuts


def flip_obstruction_search(g, max_cylinder_length=1):
    """Search for a proper cylinder union U with T(U) = X and T injective on U.

    For length bound 1 this is the incoming-edge-choice construction: pick
    one incoming edge per vertex; the union is proper iff some vertex has at
    least two incoming edges.  Returns the first hit in deterministic order,
    or None.
    """
    ok, sinks = check_no_sinks(g)
    if not ok:
        raise PreconditionError(f"graph has sinks: {sinks}", hypothesis="no-sinks")
    ok, sources = check_no_sources(g)
    if not ok:
        raise PreconditionError(f"graph has sources: {sources}", hypothesis="no-sources")
    # enumerate image-side cuts per vertex, coarsest first, then preimage choices
    per_vertex_cuts = [_depth_cuts(g, v, max_cylinder_length - 1) for v in g.vertices]
    combos = [()]
    for cuts in per_vertex_cuts:
        combos = [acc + (cut,) for acc in combos for cut in cuts]
    for combo in combos:
        image_pieces = [p for cut in combo for p in cut]
        choice_sets = [g.in_edges[p.o] for p in image_pieces]
        if any(not c for c in choice_sets):
            continue
        total = 1
        for c in choice_sets:
            total *= len(c)
        for idx in range(total):
            pick = []
            r = idx
            for c in choice_sets:
                pick.append(c[r % len(c)])
                r //= len(c)
            pieces = [g.edge_path(e).concat(p) if len(p) else g.edge_path(e)
                      for e, p in zip(pick, image_pieces)]
            u = CylinderUnion(g, pieces)
            if len(u.paths) != len(pieces):
                continue  # normalization merged pieces: overlapping preimages
            if u.is_proper() and u.shift_injective():
                return u
    return None


def generating_bisections(g):
    """The finite expansivity witness: one-edge bisections plus unit cylinders."""
    out = []
    for e, _, t in g.edges:
        out.append(BasicBisection(g.edge_path(e), g.empty_path(t)))
    for v in g.vertices:
        out.append(BasicBisection(g.empty_path(v), g.empty_path(v)))
    return out
