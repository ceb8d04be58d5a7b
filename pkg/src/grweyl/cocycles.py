"""Evaluable cocycles on graph groupoids and their decision procedures.

A cocycle here is one of: a coboundary of a locally constant window
function, a group-valued cocycle induced by an edge labeling, a Birkhoff
sum of a window function, a pointwise product, or a pullback along a
groupoid automorphism.  Evaluation is exact; circle values are roots of
unity in Q/Z and convert to cyclotomic scalars on demand.
"""

from collections import deque

from .errors import InconsistencyError, PreconditionError, SearchExhaustedError
from .graphs import check_no_sinks, check_pair_sync
from .pathspace import EvPeriodicPath, GroupoidElement, greedy_point, point_through
from .scalars import RootOfUnity


class ZGroup:
    """Marker for the infinite cyclic group of integer edge labels."""

    def __repr__(self):
        return "Z"

    def __eq__(self, other):
        return isinstance(other, ZGroup)

    def __hash__(self):
        return hash("ZGroup")


Z = ZGroup()


class EdgeLabeling:
    """A total map from edges into a group, extended to paths by products."""

    def __init__(self, graph, group, label):
        missing = [e for e in graph.edge_ids if e not in label]
        if missing:
            raise ValueError(f"labeling misses edges: {missing}")
        if isinstance(group, ZGroup):
            for e, x in label.items():
                if not isinstance(x, int):
                    raise ValueError("integer labels required for the Z labeling")
        else:
            for e, x in label.items():
                if x not in group.index:
                    raise ValueError(f"label of {e!r} is not a group element")
        self.graph = graph
        self.group = group
        self.label = {e: label[e] for e in graph.edge_ids}

    @staticmethod
    def length(graph):
        """The canonical degree labeling: every edge maps to 1 in Z."""
        return EdgeLabeling(graph, Z, {e: 1 for e in graph.edge_ids})

    @staticmethod
    def length_mod(graph, n):
        from .groups import cyclic_group
        return EdgeLabeling(graph, cyclic_group(n), {e: 1 % n for e in graph.edge_ids})

    def is_integer_valued(self):
        return isinstance(self.group, ZGroup)

    def is_abelian(self):
        return self.is_integer_valued() or self.group.is_abelian()

    def path_value(self, path):
        if self.is_integer_valued():
            return sum(self.label[e] for e in path.edges)
        return self.group.product(self.label[e] for e in path.edges)

    def pair_value(self, mu, nu):
        """theta(mu) theta(nu)^-1, the constant cocycle value on Z(mu, nu)."""
        if self.is_integer_valued():
            return self.path_value(mu) - self.path_value(nu)
        g = self.group
        return g.mul(self.path_value(mu), g.inv(self.path_value(nu)))

    def is_kernel_pair(self, mu, nu):
        v = self.pair_value(mu, nu)
        return v == 0 if self.is_integer_valued() else v == self.group.identity

    def value_text(self, v):
        return str(v) if self.is_integer_valued() else self.group.element_text(v)


class WindowFunction:
    """A locally constant function on the path space, read off a fixed window."""

    def __init__(self, graph, window, values):
        keys = set(graph.paths_of_length(window))
        if set(values) != keys:
            raise ValueError(f"window function must be total on length-{window} paths")
        self.graph = graph
        self.window = window
        self.values = dict(values)

    @staticmethod
    def constant(graph, value):
        return WindowFunction(graph, 0, {graph.empty_path(v): value for v in graph.vertices})

    @staticmethod
    def indicator(path, on_value, off_value):
        """on_value inside C(path), off_value elsewhere."""
        g = path.graph
        table = {}
        for w in g.paths_of_length(len(path)):
            table[w] = on_value if w == path else off_value
        return WindowFunction(g, len(path), table)

    def value_at(self, x):
        return self.values[x.word(0, self.window)]

    def pointwise_product(self, other):
        w = max(self.window, other.window)
        table = {}
        for word in self.graph.paths_of_length(w):
            table[word] = (self.values[word.slice(0, self.window)]
                           * other.values[word.slice(0, other.window)])
        return WindowFunction(self.graph, w, table)


class Cocycle:
    circle_valued = False

    def eval(self, alpha):
        raise NotImplementedError

    def eval_scalar(self, alpha):
        if not self.circle_valued:
            raise ValueError("cocycle is not circle-valued")
        return self.eval(alpha).to_scalar()

    def gamma_depth(self, len_mu, len_nu):
        """Common-extension depth making the value constant on Z(mu c, nu c)."""
        raise NotImplementedError


class CoboundaryCocycle(Cocycle):
    """del f: alpha -> f(r(alpha)) * conj(f(d(alpha))), circle-valued."""

    circle_valued = True

    def __init__(self, f):
        for v in f.values.values():
            if not isinstance(v, RootOfUnity):
                raise ValueError("coboundaries need root-of-unity window values")
        self.f = f

    def eval(self, alpha):
        return self.f.value_at(alpha.y) * self.f.value_at(alpha.x).inverse()

    def gamma_depth(self, len_mu, len_nu):
        return max(0, self.f.window - len_mu, self.f.window - len_nu)


class LabeledCocycle(Cocycle):
    """The labeling-induced cocycle, optionally composed with a character.

    Without a character the value is the group element theta(mu) theta(nu)^-1
    (an integer for Z).  With a character (a table on the group for finite
    groups, a single root of unity generating the image for Z) the value is
    a root of unity.
    """

    def __init__(self, labeling, character=None):
        self.labeling = labeling
        self.character = character
        self.circle_valued = character is not None

    def eval(self, alpha):
        mu = alpha.y.word(0, alpha.p)
        nu = alpha.x.word(0, alpha.q)
        val = self.labeling.pair_value(mu, nu)
        if self.character is None:
            return val
        if self.labeling.is_integer_valued():
            return self.character ** val
        return self.character[val]

    def gamma_depth(self, len_mu, len_nu):
        return 0


class BirkhoffCocycle(Cocycle):
    """sigma_f: the witnessed Birkhoff sum of a window function.

    Values may be integers (the degree cocycle is f = 1), elements of an
    abelian finite group, or roots of unity; the value at (y, n-m, x) with
    witness (p, q) is sum_{i<p} f(T^i y) - sum_{j<q} f(T^j x), with the
    sums taken in the value group.
    """

    def __init__(self, f, group=None):
        self.f = f
        self.group = group  # None for integers / roots of unity
        sample = next(iter(f.values.values()))
        self.circle_valued = isinstance(sample, RootOfUnity)

    @staticmethod
    def degree(graph):
        return BirkhoffCocycle(WindowFunction.constant(graph, 1))

    @staticmethod
    def constant(graph, value, group=None):
        return BirkhoffCocycle(WindowFunction.constant(graph, value), group=group)

    def eval(self, alpha):
        return self.eval_with_witness(alpha, alpha.p, alpha.q)

    def eval_with_witness(self, alpha, p, q):
        if p - q != alpha.k:
            raise ValueError("witness does not match the degree")
        pos = [self.f.value_at(alpha.y.shift_n(i)) for i in range(p)]
        neg = [self.f.value_at(alpha.x.shift_n(j)) for j in range(q)]
        if self.group is not None:
            acc = self.group.identity
            for v in pos:
                acc = self.group.mul(acc, v)
            for v in neg:
                acc = self.group.mul(acc, self.group.inv(v))
            return acc
        if self.circle_valued:
            acc = RootOfUnity.one()
            for v in pos:
                acc = acc * v
            for v in neg:
                acc = acc * v.inverse()
            return acc
        return sum(pos) - sum(neg)

    def gamma_depth(self, len_mu, len_nu):
        return max(0, self.f.window - 1)


class ProductCocycle(Cocycle):
    circle_valued = True

    def __init__(self, factors):
        if not all(c.circle_valued for c in factors):
            raise ValueError("only circle-valued cocycles multiply")
        self.factors = list(factors)

    def eval(self, alpha):
        acc = RootOfUnity.one()
        for c in self.factors:
            acc = acc * c.eval(alpha)
        return acc

    def gamma_depth(self, len_mu, len_nu):
        return max((c.gamma_depth(len_mu, len_nu) for c in self.factors), default=0)


class TransportedCocycle(Cocycle):
    """alpha -> c(Phi(alpha)): the pullback along a groupoid automorphism.

    Construct through transported(), which pushes pullbacks inside products
    and collapses nested pullbacks, so the exact refinement depths below
    apply to everything reachable from coboundaries and labeled cocycles.
    """

    def __init__(self, c, phi):
        if not c.circle_valued:
            raise ValueError("transport is implemented for circle-valued cocycles")
        self.c = c
        self.phi = phi
        self.circle_valued = True

    def eval(self, alpha):
        return self.c.eval(self.phi.apply_arrow(alpha))

    def gamma_depth(self, len_mu, len_nu):
        h = self.phi.h
        if isinstance(self.c, CoboundaryCocycle):
            # the pullback is the coboundary of the window function f o h
            w = h.input_window(self.c.f.window)
            return max(0, w - len_mu, w - len_nu)
        if isinstance(self.c, LabeledCocycle):
            # witness words of the image share their last wg-1 edges, which
            # cancel in theta(A) theta(B)^-1; the rest reads the head window
            w = h.m + h.wh
            return max(0, w - len_mu, w - len_nu, h.wg - 1)
        pad = h.m + h.wh + h.wg
        return self.c.gamma_depth(0, 0) + pad


def transported(c, phi):
    """The pullback cocycle in a normal shape (products stay products)."""
    if isinstance(c, ProductCocycle):
        return ProductCocycle([transported(f, phi) for f in c.factors])
    if isinstance(c, TransportedCocycle):
        return transported(c.c, c.phi.compose(phi))
    return TransportedCocycle(c, phi)


def eval_cocycle(c, alpha):
    """Scalar for circle-valued cocycles, raw group value otherwise."""
    if c.circle_valued:
        return c.eval_scalar(alpha)
    return c.eval(alpha)


# -- label reachability machinery ---------------------------------------------

def _labels_into(g, labeling, vertex, cap=None):
    """Labels of paths ending at the vertex, with shortest witness paths.

    Reverse BFS over (origin vertex, accumulated label); for finite groups
    this is complete.  Returns {label: witness path}, labels in discovery
    order.
    """
    group = labeling.group
    finite = not labeling.is_integer_valued()
    if cap is None:
        cap = len(g.vertices) * (group.order() if finite else 1) + 1
    ident = group.identity if finite else 0
    start = (vertex, ident)
    parents = {start: None}
    first_state = {ident: start}
    order = [ident]
    frontier = [start]
    for _ in range(cap):
        nxt = []
        for (v, gamma) in frontier:
            for e in g.in_edges[v]:
                lab = labeling.label[e]
                new = group.mul(lab, gamma) if finite else lab + gamma
                state = (g.origin[e], new)
                if state in parents:
                    continue
                parents[state] = ((v, gamma), e)
                if new not in first_state:
                    first_state[new] = state
                    order.append(new)
                nxt.append(state)
        frontier = nxt
    return {lab: _rebuild_witness(g, parents, first_state[lab]) for lab in order}


def _rebuild_witness(g, parents, state):
    edges = []
    while parents[state] is not None:
        prev, e = parents[state]
        edges.append(e)
        state = prev
    return g.edge_path(*edges) if edges else g.empty_path(state[0])


def image_subgroup(g, labeling):
    """The subgroup generated by all cocycle values.

    Finite groups: the element list of the generated subgroup, in group
    order.  Z: the nonnegative generator d of the subgroup dZ (1 = full).
    """
    if labeling.is_integer_valued():
        return _image_subgroup_z(g, labeling)
    group = labeling.group
    values = set()
    for u in g.vertices:
        labels = list(_labels_into(g, labeling, u))
        for a in labels:
            for b in labels:
                values.add(group.mul(a, group.inv(b)))
    return group.subgroup_closure(sorted(values, key=lambda x: group.index[x]))


def _image_subgroup_z(g, labeling):
    from math import gcd
    d = 0
    for u in g.vertices:
        reps = {}  # vertex -> representative label of a path from that origin into u
        # BFS over (origin, label) folding label discrepancies into the gcd
        start = (u, 0)
        seen = {u: 0}
        frontier = [start]
        guard = 0
        while frontier and guard <= 2 * len(g.vertices) * (len(g.edges) + 1):
            guard += 1
            nxt = []
            for (v, gamma) in frontier:
                for e in g.in_edges[v]:
                    o = g.origin[e]
                    val = labeling.label[e] + gamma
                    if o in seen:
                        d = gcd(d, abs(val - seen[o]))
                    else:
                        seen[o] = val
                        nxt.append((o, val))
            frontier = nxt
        for o1, v1 in seen.items():
            for o2, v2 in seen.items():
                d = gcd(d, abs(v1 - v2))
    return d


def is_surjective(g, labeling):
    img = image_subgroup(g, labeling)
    if labeling.is_integer_valued():
        return img == 1
    return len(img) == labeling.group.order()


def _diagonal_coreachable(g, labeling):
    """States (x, y, delta) of the pair-label machine that reach (u, u, e).

    Forward moves extend the first path by e (delta -> theta(e)^-1 delta) or
    the second by f (delta -> delta theta(f)); this is the backward closure.
    """
    group = labeling.group
    ident = group.identity
    good = set()
    queue = deque()
    for u in g.vertices:
        s = (u, u, ident)
        good.add(s)
        queue.append(s)
    while queue:
        (x, y, delta) = queue.popleft()
        for e in g.in_edges[x]:
            pred = (g.origin[e], y, group.mul(labeling.label[e], delta))
            if pred not in good:
                good.add(pred)
                queue.append(pred)
        for f in g.in_edges[y]:
            pred = (x, g.origin[f], group.mul(delta, group.inv(labeling.label[f])))
            if pred not in good:
                good.add(pred)
                queue.append(pred)
    return good


def kernel_transitivity(g, labeling):
    """Is the kernel subgroupoid topologically transitive?  Decided exactly.

    A kernel arrow between cylinders C(mu), C(nu) amounts to forward paths
    A, B from t(mu), t(nu) with a common target and theta(mu A) = theta(nu B),
    i.e. the pair machine started at (t(mu), t(nu), theta(mu)^-1 theta(nu))
    reaching the diagonal at the identity.  All achievable start offsets are
    explored, not just the identity, so the verdict matches the definition
    on every graph; the witness is a failing cylinder pair.
    """
    ok, sinks = check_no_sinks(g)
    if not ok:
        raise PreconditionError(f"graph has sinks: {sinks}", hypothesis="no-sinks")
    if labeling.is_integer_valued():
        if any(labeling.label[e] != 1 for e in g.edge_ids):
            raise PreconditionError(
                "Z-valued case is decided for the length labeling only",
                hypothesis="finite-group")
        ok, pair = check_pair_sync(g)
        if ok:
            return (True, None)
        v, w = pair
        return (False, (g.empty_path(v), g.empty_path(w)))
    group = labeling.group
    good = _diagonal_coreachable(g, labeling)
    witnesses = {v: _labels_into(g, labeling, v) for v in g.vertices}
    for v in g.vertices:
        for w in g.vertices:
            for a, mu in witnesses[v].items():
                for b, nu in witnesses[w].items():
                    delta0 = group.mul(group.inv(a), b)
                    if (v, w, delta0) not in good:
                        return (False, (mu, nu))
    return (True, None)


def kernel_minimality_sufficient(g, labeling):
    """Label-transitivity: every group element is a path label between every
    ordered vertex pair.  Sufficient for minimality of the kernel."""
    ok, sinks = check_no_sinks(g)
    if not ok:
        raise PreconditionError(f"graph has sinks: {sinks}", hypothesis="no-sinks")
    if labeling.is_integer_valued():
        raise PreconditionError("criterion applies to finite groups",
                                hypothesis="finite-group")
    group = labeling.group
    want = {(w, gamma) for w in g.vertices for gamma in group.elements}
    for u in g.vertices:
        seen = {(u, group.identity)}
        frontier = [(u, group.identity)]
        while frontier:
            nxt = []
            for (v, gamma) in frontier:
                for e in g.out_edges[v]:
                    state = (g.target[e], group.mul(gamma, labeling.label[e]))
                    if state not in seen:
                        seen.add(state)
                        nxt.append(state)
            frontier = nxt
        if not want <= seen:
            return False
    return True


def arrow_with_label(g, labeling, gamma, variant=0):
    """A groupoid element alpha with sigma(alpha) = gamma, deterministic.

    Built from path pairs (mu, nu) into a common vertex with
    theta(mu) theta(nu)^-1 = gamma, completed with an eventually periodic
    tail; variants change the tail and the chosen pair.
    """
    group = labeling.group
    hits = []
    for u in g.vertices:
        wit = _labels_into(g, labeling, u)
        for a, mu in wit.items():
            b = group.mul(group.inv(gamma), a)
            if b in wit:
                hits.append((mu, wit[b]))
        if len(hits) > variant:
            break
    if not hits:
        raise SearchExhaustedError(
            f"no arrow with label {labeling.value_text(gamma)} found",
            detail={"gamma": gamma})
    mu, nu = hits[min(variant, len(hits) - 1)]
    tails = _tail_variants(g, mu.t)
    tail = tails[variant % len(tails)]
    y = _extend(mu, tail)
    x = _extend(nu, tail)
    return GroupoidElement(y, len(mu) - len(nu), x)


def _tail_variants(g, vertex):
    tails = [greedy_point(g, vertex)]
    for e in g.out_edges[vertex][1:]:
        stem = g.edge_path(e)
        tails.append(point_through(stem))
    return tails


def _extend(path, tail):
    if len(path) == 0:
        return tail
    return EvPeriodicPath.from_words(path.graph, path.edges + tail.prefix.edges,
                                     tail.cycle.edges, base=path.o)


def random_kernel_arrow(g, labeling, rng, max_len=4):
    """A random arrow in the kernel of the labeling cocycle."""
    from .algebra import random_path
    for _ in range(200):
        mu = random_path(g, rng, max_len)
        nu = random_path(g, rng, max_len)
        if mu.t != nu.t:
            continue
        if not labeling.is_kernel_pair(mu, nu):
            continue
        tail = point_through(random_path(g, rng, 2, origin=mu.t))
        return GroupoidElement(_extend(mu, tail), len(mu) - len(nu), _extend(nu, tail))
    # the identity arrow always exists
    x = greedy_point(g, g.vertices[0])
    return GroupoidElement.unit(x)


def factor_through_abelianization(c, labeling, rng=None, kernel_samples=20, resamples=3):
    """Factor a kernel-vanishing circle cocycle through the abelianization.

    Requires kernel transitivity and a surjective labeling; verifies that c
    is 1 on sampled kernel arrows, that the induced value is independent of
    the chosen arrow per group element, and that the result is a character
    of the abelianized group.  Returns (ab_group, q, table) with scalar
    values on the coset tokens.
    """
    g = labeling.graph
    if labeling.is_integer_valued():
        raise PreconditionError("abelianization factoring is for finite groups",
                                hypothesis="finite-group")
    if not c.circle_valued:
        raise PreconditionError("only circle-valued cocycles factor through characters",
                                hypothesis="circle-valued")
    ok, pair = kernel_transitivity(g, labeling)
    if not ok:
        raise PreconditionError(
            f"kernel is not topologically transitive; witness cylinders {pair}",
            hypothesis="kernel-transitivity")
    if not is_surjective(g, labeling):
        raise PreconditionError("labeling cocycle is not surjective",
                                hypothesis="surjective-cocycle")
    group = labeling.group
    # kernel vanishing
    probes = [arrow_with_label(g, labeling, group.identity, variant=v) for v in range(resamples)]
    if rng is not None:
        probes.extend(random_kernel_arrow(g, labeling, rng) for _ in range(kernel_samples))
    for alpha in probes:
        if not c.eval(alpha).is_one():
            raise InconsistencyError("cocycle does not vanish on the kernel",
                                     witness=alpha)
    ab, q = group.abelianization()
    table = {}
    for gamma in group.elements:
        vals = []
        for v in range(resamples):
            alpha = arrow_with_label(g, labeling, gamma, variant=v)
            vals.append(c.eval(alpha))
        if any(val != vals[0] for val in vals[1:]):
            raise InconsistencyError(
                "cocycle value depends on the representing arrow",
                witness=gamma)
        coset = q[gamma]
        if coset in table:
            if table[coset] != vals[0]:
                raise InconsistencyError(
                    "cocycle does not factor through the abelianization",
                    witness=gamma)
        else:
            table[coset] = vals[0]
    for c1 in ab.elements:
        for c2 in ab.elements:
            if table[ab.mul(c1, c2)] != table[c1] * table[c2]:
                raise InconsistencyError("induced map is not a character",
                                         witness=(c1, c2))
    return ab, q, {k: v.to_scalar() for k, v in table.items()}


def match_character(ab, scalar_table):
    """Index of a scalar-valued character table among ab.characters()."""
    for i, chi in enumerate(ab.characters()):
        if all(scalar_table[g] == chi[g].to_scalar() for g in ab.elements):
            return i
    return None


def labeled_with_character(labeling, ab, q, chi):
    """The circle-valued cocycle chi o q o sigma for a character of ab."""
    lifted = {gamma: chi[q[gamma]] for gamma in labeling.group.elements}
    return LabeledCocycle(labeling, character=lifted)


def induced_group_hom(phi, lab1, lab2, rng=None, resamples=3, depth_samples=3):
    """The group homomorphism tau with tau o sigma_1 = sigma_2 o Phi.

    Verifies on samples that Phi maps kernel arrows of lab1 into the kernel
    of lab2, derives tau per group element from chosen arrows, and certifies
    the homomorphism property exhaustively (finite groups) or on integer
    windows (Z).  Returns a dict for finite groups or the integer tau(1).
    """
    g1, g2 = lab1.graph, lab2.graph
    sigma2 = LabeledCocycle(lab2)
    if lab1.is_integer_valued():
        if not lab2.is_integer_valued():
            raise PreconditionError("mixed value groups are not supported",
                                    hypothesis="matching-groups")
        ok, pair = check_pair_sync(g1)
        if not ok:
            raise PreconditionError(f"kernel is not transitive; pair {pair}",
                                    hypothesis="kernel-transitivity")
        t = None
        for k in [1, -1, 2, -2, 3, -3]:
            alphas = [_z_arrow(g1, k, variant=v) for v in range(resamples)]
            vals = [sigma2.eval(phi.apply_arrow(a)) for a in alphas]
            if any(v != vals[0] for v in vals[1:]):
                raise InconsistencyError("induced value depends on the arrow",
                                         witness=k)
            if t is None and k == 1:
                t = vals[0]
            if vals[0] != k * t:
                raise InconsistencyError("induced map on Z is not multiplication",
                                         witness=(k, vals[0]))
        # kernel preservation on samples
        if rng is not None:
            for _ in range(depth_samples):
                alpha = random_kernel_arrow(g1, lab1, rng)
                if sigma2.eval(phi.apply_arrow(alpha)) != 0:
                    raise InconsistencyError("kernel is not preserved", witness=alpha)
        return t
    ok, pair = kernel_transitivity(g1, lab1)
    if not ok:
        raise PreconditionError(f"kernel not transitive; witness {pair}",
                                hypothesis="kernel-transitivity")
    if not is_surjective(g1, lab1):
        raise PreconditionError("first labeling is not surjective",
                                hypothesis="surjective-cocycle")
    if rng is not None:
        for _ in range(depth_samples):
            alpha = random_kernel_arrow(g1, lab1, rng)
            img = sigma2.eval(phi.apply_arrow(alpha))
            if img != lab2.group.identity:
                raise InconsistencyError("kernel is not preserved", witness=alpha)
    group1 = lab1.group
    tau = {}
    for gamma in group1.elements:
        vals = []
        for v in range(resamples):
            alpha = arrow_with_label(g1, lab1, gamma, variant=v)
            vals.append(sigma2.eval(phi.apply_arrow(alpha)))
        if any(v != vals[0] for v in vals[1:]):
            raise InconsistencyError("induced value depends on the arrow",
                                     witness=gamma)
        tau[gamma] = vals[0]
    group2 = lab2.group
    for a in group1.elements:
        for b in group1.elements:
            if tau[group1.mul(a, b)] != group2.mul(tau[a], tau[b]):
                raise InconsistencyError("induced map is not a homomorphism",
                                         witness=(a, b))
            for cc in group1.elements:
                lhs = tau[group1.mul(group1.mul(a, b), cc)]
                rhs = group2.mul(group2.mul(tau[a], tau[b]), tau[cc])
                if lhs != rhs:
                    raise InconsistencyError("induced map fails on a triple",
                                             witness=(a, b, cc))
    return tau


def _z_arrow(g, k, variant=0):
    """An arrow of degree k built from a deterministic tail point."""
    v = g.vertices[variant % len(g.vertices)]
    tails = _tail_variants(g, v)
    tail = tails[variant % len(tails)]
    if k >= 0:
        return GroupoidElement(tail, k, tail.shift_n(k))
    return GroupoidElement(tail.shift_n(-k), k, tail)


def find_separating_coboundary(mu, nu, g, max_stem=None):
    """A coboundary and an arrow of Z(mu, nu) on which it is not 1.

    Needs condition (L) (and no sinks): then some tail z makes mu z and
    nu z distinct points, and the indicator window function that is -1 on a
    deep enough cylinder around nu z separates them, giving del f = -1 at
    the witness arrow.
    """
    from .graphs import check_condition_L
    if mu == nu:
        raise PreconditionError("paths coincide; nothing to separate",
                                hypothesis="distinct-paths")
    if mu.t != nu.t:
        raise ValueError("monomial paths must share a target")
    ok, sinks = check_no_sinks(g)
    if not ok:
        raise PreconditionError(f"graph has sinks: {sinks}", hypothesis="no-sinks")
    okl, cyc = check_condition_L(g)
    if not okl:
        raise PreconditionError(f"condition (L) fails; cycle {cyc!r} has no exit",
                                hypothesis="condition-L")
    if max_stem is None:
        max_stem = len(g.vertices) + 2
    for depth in range(0, max_stem + 1):
        for stem in g.paths_of_length(depth, origin=mu.t):
            tail = point_through(stem)
            y = _extend(mu, tail)
            x = _extend(nu, tail)
            if y == x:
                continue
            window = _first_difference(y, x)
            if window == 0:
                word = g.empty_path(x.o)
            else:
                word = x.word(0, window)
            f = WindowFunction.indicator(word, RootOfUnity.minus_one(), RootOfUnity.one())
            cob = CoboundaryCocycle(f)
            alpha = GroupoidElement(y, len(mu) - len(nu), x)
            value = cob.eval(alpha)
            if not value.is_one():
                return cob, alpha
    raise SearchExhaustedError("no separating tail found within the stem bound",
                               detail={"mu": mu, "nu": nu})


def _first_difference(y, x):
    """1 + index of the first differing edge, or 0 if the origins differ."""
    if y.o != x.o:
        return 0
    bound = len(y.prefix) + len(x.prefix) + len(y.cycle) * len(x.cycle) + 1
    for i in range(bound):
        if y.edge_at(i) != x.edge_at(i):
            return i + 1
    raise ValueError("paths do not differ")
