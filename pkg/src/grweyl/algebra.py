"""The exact convolution *-algebra spanned by path-pair monomials S_mu S_nu*.

Elements are finite linear combinations of monomials (mu, nu) with
t(mu) = t(nu), over cyclotomic-rational scalars, kept in a canonical normal
form.  Within a fixed degree |mu| - |nu| two monomials are either disjoint
(as bisections) or one compatibly extends the other, so a unique normal
form exists: supports are split until pairwise disjoint and then complete
sibling families with equal coefficients are merged back.  The merge step
is exactly the relation P_v = sum_e S_e S_e* over edges leaving v, which is
why the underlying graph must have no sinks here.

Two independent routes compute products: the monomial prefix rule (used by
multiply) and the pointwise convolution sum over factorizations (the test
oracle).  Their agreement on random triples is the central correctness
property of this module.
"""

from .errors import InconsistencyError, PreconditionError, SearchExhaustedError
from .graphs import FinitePath, check_no_sinks
from .pathspace import BasicBisection, GroupoidElement, bisection_contains, point_through
from .scalars import Cyclotomic, ONE

from collections import deque


def _as_scalar(c):
    if isinstance(c, Cyclotomic):
        return c
    return Cyclotomic.from_rational(c)


def _strip_last(graph, mu, nu):
    """Parent monomial under the nesting order, or None.

    (mu, nu) = (mu0 e, nu0 e) for a common last edge e.
    """
    if len(mu) == 0 or len(nu) == 0:
        return None
    if mu.edges[-1] != nu.edges[-1]:
        return None
    return (mu.slice(0, len(mu) - 1), nu.slice(0, len(nu) - 1))


def _children(graph, mu, nu):
    v = mu.t
    return [(mu.append(e), nu.append(e)) for e in graph.out_edges[v]]


def _compatible_extension(small, big):
    """Is big = (small mu + gamma, small nu + gamma) with gamma nonempty?"""
    smu, snu = small
    bmu, bnu = big
    d = len(bmu) - len(smu)
    if d <= 0 or len(bnu) - len(snu) != d:
        return False
    if not smu.is_prefix_of(bmu) or not snu.is_prefix_of(bnu):
        return False
    return bmu.edges[len(smu):] == bnu.edges[len(snu):]


def normalize_terms(graph, terms):
    """Canonical normal form of a monomial-coefficient dictionary."""
    by_degree = {}
    for (mu, nu), c in terms.items():
        c = _as_scalar(c)
        if c.is_zero():
            continue
        k = len(mu) - len(nu)
        bucket = by_degree.setdefault(k, {})
        if (mu, nu) in bucket:
            s = bucket[(mu, nu)] + c
            if s.is_zero():
                del bucket[(mu, nu)]
            else:
                bucket[(mu, nu)] = s
        else:
            bucket[(mu, nu)] = c
    out = {}
    for k, bucket in by_degree.items():
        bucket = _split_until_disjoint(graph, bucket)
        bucket = _merge_complete_families(graph, bucket)
        out.update(bucket)
    return out


def _split_until_disjoint(graph, bucket):
    changed = True
    while changed:
        changed = False
        keys = sorted(bucket, key=lambda mn: (len(mn[0]), mn[0].sort_key(), mn[1].sort_key()))
        ancestors = {}
        for key in keys:
            mu, nu = key
            walk = _strip_last(graph, mu, nu)
            while walk is not None:
                if walk in bucket and walk != key:
                    ancestors[walk] = True
                walk = _strip_last(graph, *walk)
        if not ancestors:
            break
        # split the shallowest offending ancestor one level down
        target = min(ancestors, key=lambda mn: (len(mn[0]), mn[0].sort_key(), mn[1].sort_key()))
        coeff = bucket.pop(target)
        for child in _children(graph, *target):
            if child in bucket:
                s = bucket[child] + coeff
                if s.is_zero():
                    del bucket[child]
                else:
                    bucket[child] = s
            else:
                bucket[child] = coeff
        changed = True
    return bucket


def _merge_complete_families(graph, bucket):
    queue = deque(bucket.keys())
    while queue:
        key = queue.popleft()
        if key not in bucket:
            continue
        parent = _strip_last(graph, *key)
        if parent is None:
            continue
        family = _children(graph, *parent)
        coeff = bucket[key]
        if not all(child in bucket and bucket[child] == coeff for child in family):
            continue
        for child in family:
            del bucket[child]
        if parent in bucket:
            s = bucket[parent] + coeff
            if s.is_zero():
                del bucket[parent]
            else:
                bucket[parent] = s
        else:
            bucket[parent] = coeff
        queue.append(parent)
    return bucket


class AlgebraElement:
    """A normal-form element of the dense path-pair algebra of a graph."""

    __slots__ = ("graph", "terms")

    def __init__(self, graph, terms, normalized=False):
        ok, sinks = check_no_sinks(graph)
        if not ok:
            raise PreconditionError(
                f"the path-pair algebra needs a sink-free graph; sinks: {sinks}",
                hypothesis="no-sinks")
        for (mu, nu) in terms:
            if mu.t != nu.t:
                raise ValueError(f"monomial paths must share a target: {mu!r}, {nu!r}")
        self.graph = graph
        self.terms = terms if normalized else normalize_terms(graph, terms)

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(graph):
        return AlgebraElement(graph, {}, normalized=True)

    @staticmethod
    def monomial(graph, mu, nu, coeff=1):
        return AlgebraElement(graph, {(mu, nu): _as_scalar(coeff)})

    @staticmethod
    def vertex_projection(graph, v):
        p = graph.empty_path(v)
        return AlgebraElement.monomial(graph, p, p)

    @staticmethod
    def edge_isometry(graph, e):
        mu = graph.edge_path(e)
        return AlgebraElement.monomial(graph, mu, graph.empty_path(mu.t))

    @staticmethod
    def path_isometry(graph, path):
        return AlgebraElement.monomial(graph, path, graph.empty_path(path.t))

    @staticmethod
    def unit(graph):
        out = AlgebraElement.zero(graph)
        for v in graph.vertices:
            out = out + AlgebraElement.vertex_projection(graph, v)
        return out

    # -- ring structure -------------------------------------------------------

    def __add__(self, other):
        self._same_graph(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms[key] + c if key in terms else c
        return AlgebraElement(self.graph, terms)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def scale(self, c):
        c = _as_scalar(c)
        return AlgebraElement(self.graph,
                              {key: c * v for key, v in self.terms.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if isinstance(other, (int,)) or isinstance(other, Cyclotomic):
            return self.scale(other)
        return multiply(self, other)

    def involute(self):
        return AlgebraElement(self.graph,
                              {(nu, mu): c.conjugate() for (mu, nu), c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def degrees(self):
        return sorted({len(mu) - len(nu) for (mu, nu) in self.terms})

    def max_depth(self):
        return max((max(len(mu), len(nu)) for (mu, nu) in self.terms), default=0)

    def coefficient(self, mu, nu):
        probe = normalize_terms(self.graph, {(mu, nu): ONE})
        # probe is a single monomial unless (mu, nu) got merged upward; it can't
        for key in probe:
            return self.terms.get(key)
        return None

    def sorted_terms(self):
        return sorted(self.terms.items(),
                      key=lambda kv: (len(kv[0][0]) + len(kv[0][1]),
                                      kv[0][0].sort_key(), kv[0][1].sort_key()))

    def _same_graph(self, other):
        if self.graph != other.graph:
            raise PreconditionError("elements live over different graphs",
                                    hypothesis="same-graph")

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if self.graph != other.graph or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    __hash__ = None

    def __repr__(self):
        return f"AlgebraElement({self.text()})"

    def text(self):
        if not self.terms:
            return "0"
        parts = []
        for (mu, nu), c in self.sorted_terms():
            if len(mu) == 0 and len(nu) == 0:
                mono = f"P({mu.base})"
            elif len(nu) == 0:
                mono = f"S({' '.join(mu.edges)})"
            elif len(mu) == 0:
                mono = f"S({' '.join(nu.edges)})^*"
            else:
                mono = f"S({' '.join(mu.edges)})S({' '.join(nu.edges)})^*"
            if c.is_one():
                parts.append(mono)
            else:
                parts.append(f"({c.text()})*{mono}")
        return " + ".join(parts)

    def to_json(self):
        out = []
        for (mu, nu), c in self.sorted_terms():
            out.append({"mu": list(mu.edges), "mu_base": mu.base,
                        "nu": list(nu.edges), "nu_base": nu.base,
                        "coeff": c.to_json()})
        return out


def multiply(a, b):
    """Normal-form product via the monomial prefix rule, extended bilinearly.

    (S_mu S_nu*)(S_al S_be*) is S_(mu c) S_be* if al = nu c, S_mu S_(be c)*
    if nu = al c, and zero otherwise.
    """
    a._same_graph(b)
    terms = {}
    for (mu, nu), ca in a.terms.items():
        for (al, be), cb in b.terms.items():
            if nu.is_prefix_of(al):
                gam = al.slice(len(nu), len(al))
                key = (mu.concat(gam), be)
            elif al.is_prefix_of(nu):
                gam = nu.slice(len(al), len(nu))
                key = (mu, be.concat(gam))
            else:
                continue
            c = ca * cb
            terms[key] = terms[key] + c if key in terms else c
    return AlgebraElement(a.graph, terms)


def involute(a):
    return a.involute()


def evaluate(a, alpha):
    """The value of a, viewed as a function on the groupoid, at an arrow."""
    total = Cyclotomic.from_rational(0)
    for (mu, nu), c in a.terms.items():
        if bisection_contains(BasicBisection(mu, nu), alpha):
            total = total + c
    return total


def convolve_pointwise_oracle(a, b, gamma):
    """Pointwise convolution sum over factorizations gamma = alpha beta.

    Enumerates the (at most one per monomial of a) arrows alpha in the
    support of a with the same range as gamma, sets beta = alpha^{-1} gamma,
    and sums the products of values.  Independent of multiply(); serves as
    the correctness oracle for the normal-form product.
    """
    a._same_graph(b)
    y = gamma.y
    candidates = {}
    for (mu, nu), _ in a.terms.items():
        if not y.starts_with(mu):
            continue
        tail = y.shift_n(len(mu))
        x_alpha = _prepend(nu, tail)
        alpha = GroupoidElement(y, len(mu) - len(nu), x_alpha)
        candidates[(alpha.y, alpha.k, alpha.x)] = alpha
    total = Cyclotomic.from_rational(0)
    for alpha in candidates.values():
        beta = GroupoidElement(alpha.x, gamma.k - alpha.k, gamma.x)
        total = total + evaluate(a, alpha) * evaluate(b, beta)
    return total


def _prepend(path, tail):
    from .pathspace import EvPeriodicPath
    if len(path) == 0:
        return tail
    return EvPeriodicPath.from_words(
        path.graph, path.edges + tail.prefix.edges, tail.cycle.edges, base=path.o)


def expectation_diagonal(a):
    """Restriction to the unit space: keeps exactly the mu = nu monomials."""
    terms = {key: c for key, c in a.terms.items() if key[0] == key[1]}
    return AlgebraElement(a.graph, terms)


def expectation_kernel(a, labeling):
    """Restriction to the kernel subgroupoid of a labeling-induced cocycle.

    Keeps the monomials whose constant cocycle value theta(mu) theta(nu)^-1
    is the identity; for the length labeling this is the gauge-fixed part.
    """
    if labeling.graph != a.graph:
        raise PreconditionError("labeling is over a different graph", hypothesis="same-graph")
    terms = {}
    for (mu, nu), c in a.terms.items():
        if labeling.is_kernel_pair(mu, nu):
            terms[(mu, nu)] = c
    return AlgebraElement(a.graph, terms)


def group_act(a, character, labeling):
    """The induced dual-group action: scale each monomial by chi(sigma).

    chi is a character table (element -> RootOfUnity) on the labeling's
    group, which must be abelian; the gauge action is the special case of a
    length labeling modulo N with a primitive character.
    """
    if labeling.graph != a.graph:
        raise PreconditionError("labeling is over a different graph", hypothesis="same-graph")
    if not labeling.is_abelian():
        raise PreconditionError("induced actions need an abelian value group",
                                hypothesis="abelian-group")
    terms = {}
    for (mu, nu), c in a.terms.items():
        val = labeling.pair_value(mu, nu)
        root = character[val] if not labeling.is_integer_valued() else character ** val
        terms[(mu, nu)] = c * root.to_scalar()
    return AlgebraElement(a.graph, terms)


def quasi_basis(g, labeling, max_depth=None):
    """A quasi-basis for the expectation onto the labeling's kernel algebra.

    For each group element s, one monomial u = S_mu S_nu* per vertex piece:
    mu is the empty path at the vertex, and nu is a shortest path into that
    vertex whose label is s^-1, found by reverse breadth-first search over
    (vertex, accumulated label) states.  The range cylinders of the pieces
    partition the path space by construction, so sum_i u_i u_i* = 1 holds
    per s exactly.
    """
    ok, sinks = check_no_sinks(g)
    if not ok:
        raise PreconditionError(f"graph has sinks: {sinks}", hypothesis="no-sinks")
    if labeling.is_integer_valued():
        raise PreconditionError("quasi-basis construction needs a finite group",
                                hypothesis="finite-group")
    group = labeling.group
    if max_depth is None:
        max_depth = len(g.vertices) * group.order() + 1
    pairs = []
    for s in group.elements:
        want = group.inv(s)
        for v in g.vertices:
            nu = _reverse_label_search(g, labeling, v, want, max_depth)
            if nu is None:
                raise SearchExhaustedError(
                    f"no path into {v!r} with label {group.element_text(want)} "
                    f"within depth {max_depth}",
                    detail={"s": s, "vertex": v})
            u = AlgebraElement.monomial(g, g.empty_path(v), nu)
            pairs.append((u, u.involute()))
    return pairs


def _reverse_label_search(g, labeling, vertex, want, max_depth):
    """Shortest path nu with t(nu) = vertex and theta(nu) = want."""
    group = labeling.group
    start = (vertex, group.identity)
    if group.identity == want:
        return g.empty_path(vertex)
    seen = {start: None}
    frontier = [start]
    depth = 0
    while frontier and depth < max_depth:
        depth += 1
        nxt = []
        for (v, gamma) in frontier:
            for e in g.in_edges[v]:
                state = (g.origin[e], group.mul(labeling.label[e], gamma))
                if state not in seen:
                    seen[state] = ((v, gamma), e)
                    if state[1] == want:
                        return _rebuild_path(g, seen, state)
                    nxt.append(state)
        frontier = nxt
    for (v, gamma) in seen:
        if gamma == want:
            return _rebuild_path(g, seen, (v, gamma))
    return None


def _rebuild_path(g, seen, state):
    edges = []
    while seen[state] is not None:
        prev, e = seen[state]
        edges.append(e)
        state = prev
    return g.edge_path(*edges) if edges else g.empty_path(state[0])


def watatani_index(qb, labeling, samples=32, rng=None):
    """Sum u_i v_i after exactly verifying the quasi-basis identity.

    The identity x = sum_i u_i F(v_i x) is checked on random elements (and
    on the generators); failure returns the counterexample in the raised
    error.  For kernel expectations of surjective finite-group labelings
    the result is |Gamma| times the unit.
    """
    if not qb:
        raise ValueError("empty quasi-basis")
    g = qb[0][0].graph
    probes = [AlgebraElement.unit(g)]
    for e in g.edge_ids:
        probes.append(AlgebraElement.edge_isometry(g, e))
        probes.append(AlgebraElement.edge_isometry(g, e).involute())
    if rng is not None:
        probes.extend(random_element(g, rng) for _ in range(samples))
    for x in probes:
        recon = AlgebraElement.zero(g)
        for u, v in qb:
            recon = recon + multiply(u, expectation_kernel(multiply(v, x), labeling))
        if recon != x:
            raise InconsistencyError("quasi-basis identity fails",
                                     witness={"x": x, "reconstruction": recon})
    total = AlgebraElement.zero(g)
    for u, v in qb:
        total = total + multiply(u, v)
    return total


def check_cuntz_relations(g):
    """Exact verification of both relation families in normal form."""
    ok, sinks = check_no_sinks(g)
    if not ok:
        raise PreconditionError(f"graph has sinks: {sinks}", hypothesis="no-sinks")
    one = AlgebraElement.unit(g)
    for e in g.edge_ids:
        s = AlgebraElement.edge_isometry(g, e)
        if multiply(s.involute(), s) != AlgebraElement.vertex_projection(g, g.target[e]):
            return False
    for v in g.vertices:
        acc = AlgebraElement.zero(g)
        for e in g.out_edges[v]:
            s = AlgebraElement.edge_isometry(g, e)
            acc = acc + multiply(s, s.involute())
        if acc != AlgebraElement.vertex_projection(g, v):
            return False
    for v in g.vertices:
        for w in g.vertices:
            pv = AlgebraElement.vertex_projection(g, v)
            pw = AlgebraElement.vertex_projection(g, w)
            expected = pv if v == w else AlgebraElement.zero(g)
            if multiply(pv, pw) != expected:
                return False
    total = AlgebraElement.zero(g)
    for v in g.vertices:
        total = total + AlgebraElement.vertex_projection(g, v)
    return total == one


# -- random data for oracle checks -------------------------------------------

def random_path(g, rng, max_len=4, origin=None):
    length = rng.randrange(0, max_len + 1)
    v = origin if origin is not None else rng.choice(g.vertices)
    edges = []
    at = v
    for _ in range(length):
        out = g.out_edges[at]
        if not out:
            break
        e = rng.choice(out)
        edges.append(e)
        at = g.target[e]
    return FinitePath(g, v, tuple(edges))


def random_monomial(g, rng, max_len=4):
    mu = random_path(g, rng, max_len)
    # walk nu backwards from t(mu) so the targets agree
    length = rng.randrange(0, max_len + 1)
    edges = []
    at = mu.t
    for _ in range(length):
        inc = g.in_edges[at]
        if not inc:
            break
        e = rng.choice(inc)
        edges.append(e)
        at = g.origin[e]
    nu = FinitePath(g, at, tuple(reversed(edges)))
    return (mu, nu)


_COEFF_POOL = None


def _coeff_pool():
    global _COEFF_POOL
    if _COEFF_POOL is None:
        from fractions import Fraction
        i = Cyclotomic.zeta(4)
        _COEFF_POOL = [
            Cyclotomic.from_rational(1), Cyclotomic.from_rational(-1),
            Cyclotomic.from_rational(2), Cyclotomic.from_rational(Fraction(1, 2)),
            i, -1 * i, i + 1, Cyclotomic.from_rational(Fraction(-3, 2)) + i,
        ]
    return _COEFF_POOL


def random_element(g, rng, max_terms=3, max_len=4):
    terms = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        mu, nu = random_monomial(g, rng, max_len)
        c = rng.choice(_coeff_pool())
        terms[(mu, nu)] = terms[(mu, nu)] + c if (mu, nu) in terms else c
    return AlgebraElement(g, terms)


def random_groupoid_element(g, rng, max_len=4):
    mu, nu = random_monomial(g, rng, max_len)
    tail_stem = random_path(g, rng, max_len, origin=mu.t)
    tail = point_through(tail_stem)
    y = _prepend(mu, tail)
    x = _prepend(nu, tail)
    return GroupoidElement(y, len(mu) - len(nu), x)


def random_graph(rng, max_vertices=4, max_edges=6):
    """A random sink-free graph: every vertex gets an out-edge first."""
    nv = rng.randrange(1, max_vertices + 1)
    vertices = [f"v{i}" for i in range(nv)]
    ne = rng.randrange(nv, max_edges + 1)
    edges = []
    for i in range(ne):
        o = vertices[i] if i < nv else rng.choice(vertices)
        t = rng.choice(vertices)
        edges.append((f"e{i}", o, t))
    from .graphs import Graph
    return Graph(vertices, edges)
