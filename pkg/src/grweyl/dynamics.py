"""Eventual automorphisms of path spaces and bounded conjugacy search.

An eventual automorphism is presented as (m, head, block): the image of a
point is a length-m head read from a bounded window, followed by the output
of a sliding block code.  This is exactly the shape forced by the lag
identity T^(m+1) h = T^m h T, which makes equality of the relevant
map compositions a finite, exhaustive check on words.

All searches are bounded and deterministic; an absent result means "none
within the bounds", never a proof of non-existence.
"""

from .errors import NotComposableError, PreconditionError
from .graphs import FinitePath, check_no_sinks
from .pathspace import (EvPeriodicPath, GroupoidElement, flip_obstruction_search,
                        greedy_point, point_through)


class EventualAutomorphism:
    """(m, head, block) presentation of a lag-m eventually shift-commuting map."""

    def __init__(self, src, dst, m, wh, wg, head, block, inverse=None):
        if m < 0 or wh < 0 or wg < 1:
            raise ValueError("bad window parameters")
        self.src = src
        self.dst = dst
        self.m = m
        self.wh = wh
        self.wg = wg
        self.head = dict(head)
        self.block = dict(block)
        self.inverse = inverse
        self._validate()
        # raw lookup tables keyed by edge tuples (or the base vertex for the
        # empty word); hot loops avoid building path objects
        keylen = self.m + self.wh
        self._head_raw = {(u.edges if keylen else u.base): v for u, v in self.head.items()}
        self._block_raw = {u.edges: e for u, e in self.block.items()}

    def _validate(self):
        src, dst = self.src, self.dst
        keylen = self.m + self.wh
        keys = src.paths_of_length(keylen)
        if set(self.head) != set(keys):
            raise ValueError("head table is not total on its window")
        for u, val in self.head.items():
            if len(val) != self.m:
                raise ValueError("head outputs must have length m")
        bkeys = src.paths_of_length(self.wg)
        if set(self.block) != set(bkeys):
            raise ValueError("block table is not total on its window")
        for u, e in self.block.items():
            if e not in dst.edge_index:
                raise ValueError(f"block output {e!r} is not an edge")
        # consecutive block outputs must compose
        for u in src.paths_of_length(self.wg + 1):
            left = self.block[u.slice(0, self.wg)]
            right = self.block[u.slice(1, self.wg + 1)]
            if dst.target[left] != dst.origin[right]:
                raise ValueError("block outputs do not chain")
        # the head must feed into the first block output
        for u in src.paths_of_length(max(keylen, self.wg)):
            hv = self.head[u.slice(0, keylen)]
            first = self.block[u.slice(0, self.wg)]
            if hv.t != dst.origin[first]:
                raise ValueError("head output does not feed the block code")

    # -- windows ---------------------------------------------------------------

    def head_window(self):
        return self.m + self.wh

    def block_window(self):
        return self.wg

    def input_window(self, out_len):
        """Input length determining the first out_len output edges."""
        need = self.m + self.wh
        if out_len > self.m:
            need = max(need, out_len - self.m + self.wg - 1)
        return need

    # -- evaluation --------------------------------------------------------------

    def coord(self, u, j):
        """h(x)_j for any x in C(u); u must be long enough."""
        if j < self.m:
            return self.head[u.slice(0, self.m + self.wh)].edges[j]
        i = j - self.m
        return self.block[u.slice(i, i + self.wg)]

    def coords_raw(self, base, edges, upto):
        """The first upto output edges for x in the cylinder (base, edges)."""
        keylen = self.m + self.wh
        hk = edges[:keylen] if keylen else base
        out = list(self._head_raw[hk].edges[:upto])
        for i in range(max(0, upto - self.m)):
            out.append(self._block_raw[edges[i:i + self.wg]])
        return out

    def prefix_image(self, u, out_len):
        """The first out_len edges of h(x) for x in C(u), as a FinitePath."""
        if len(u) < self.input_window(out_len):
            raise ValueError("input word too short to determine the requested prefix")
        hv = self.head[u.slice(0, self.m + self.wh)]
        if out_len <= self.m:
            return hv.slice(0, out_len)
        edges = list(hv.edges)
        for i in range(out_len - self.m):
            edges.append(self.block[u.slice(i, i + self.wg)])
        return FinitePath(self.dst, hv.o, tuple(edges))

    def apply(self, x):
        """Image of an eventually periodic point, exactly."""
        keylen = self.m + self.wh
        hv = self._head_raw[x.raw_word(0, keylen) if keylen else x.o]
        p, c = len(x.prefix), len(x.cycle)
        pre = [self._block_raw[x.raw_word(i, i + self.wg)] for i in range(p)]
        cyc = [self._block_raw[x.raw_word(i, i + self.wg)] for i in range(p, p + c)]
        return EvPeriodicPath.from_words(self.dst, tuple(hv.edges) + tuple(pre),
                                         tuple(cyc), base=hv.o)

    # -- canonical form ----------------------------------------------------------

    def canonicalize(self):
        h = self._trim_windows()
        while h.m > 0 and orbit_identity_holds(h, h.m, h.m - 1)[0]:
            h = h._reduce_m()._trim_windows()
        return h

    def _trim_windows(self):
        h = self
        while h.wg > 1:
            grouped = {}
            ok = True
            for u, e in h.block.items():
                k = u.slice(0, h.wg - 1)
                if grouped.setdefault(k, e) != e:
                    ok = False
                    break
            if not ok:
                break
            h = EventualAutomorphism(h.src, h.dst, h.m, h.wh, h.wg - 1,
                                     h.head, grouped, inverse=h.inverse)
        while h.wh > 0:
            grouped = {}
            ok = True
            for u, val in h.head.items():
                k = u.slice(0, h.m + h.wh - 1)
                if grouped.setdefault(k, val) != val:
                    ok = False
                    break
            if not ok:
                break
            h = EventualAutomorphism(h.src, h.dst, h.m, h.wh - 1, h.wg,
                                     grouped, h.block, inverse=h.inverse)
        return h

    def _reduce_m(self):
        # valid once T^m h = T^(m-1) h T holds: T^(m-1) h is itself sliding,
        # determined by the last head edge on the head window
        keylen = self.m + self.wh
        new_block = {u: val.edges[self.m - 1] for u, val in self.head.items()}
        new_head = {u: val.slice(0, self.m - 1) for u, val in self.head.items()}
        return EventualAutomorphism(self.src, self.dst, self.m - 1, self.wh + 1,
                                    keylen, new_head, new_block, inverse=self.inverse)

    # -- identity / equality -------------------------------------------------------

    def is_identity(self):
        return self == identity_automorphism(self.src) and self.src == self.dst

    def table_key(self):
        hk = tuple(sorted(((u.base, u.edges, v.base, v.edges) for u, v in self.head.items())))
        bk = tuple(sorted(((u.base, u.edges, e) for u, e in self.block.items())))
        return (self.m, self.wh, self.wg, hk, bk)

    def __eq__(self, other):
        return (isinstance(other, EventualAutomorphism)
                and self.src == other.src and self.dst == other.dst
                and self.table_key() == other.table_key())

    def __hash__(self):
        return hash(self.table_key())

    def __repr__(self):
        return (f"EventualAutomorphism(m={self.m}, wh={self.wh}, wg={self.wg}, "
                f"{len(self.head)} head keys)")

    def to_json(self):
        def path_json(p):
            return {"base": p.base, "edges": list(p.edges)}
        head = [[path_json(u), path_json(v)]
                for u, v in sorted(self.head.items(), key=lambda kv: kv[0].sort_key())]
        block = [[path_json(u), e]
                 for u, e in sorted(self.block.items(), key=lambda kv: kv[0].sort_key())]
        return {"m": self.m, "wh": self.wh, "wg": self.wg,
                "head": head, "block": block}

    @staticmethod
    def from_json(src, dst, data, inverse=None):
        def path(d):
            return FinitePath(src, d["base"], tuple(d["edges"]))

        def dpath(d):
            return FinitePath(dst, d["base"], tuple(d["edges"]))
        head = {path(u): dpath(v) for u, v in data["head"]}
        block = {path(u): e for u, e in data["block"]}
        return EventualAutomorphism(src, dst, data["m"], data["wh"], data["wg"],
                                    head, block, inverse=inverse)


def identity_automorphism(g):
    head = {g.empty_path(v): g.empty_path(v) for v in g.vertices}
    block = {g.edge_path(e): e for e in g.edge_ids}
    h = EventualAutomorphism(g, g, 0, 0, 1, head, block)
    h.inverse = h
    return h


def _cycle_reachable(g):
    """Vertices reachable from some cycle (can occur at arbitrary depth)."""
    on_cycle = set()
    for v in g.vertices:
        frontier = {g.target[e] for e in g.out_edges[v]}
        seen = set(frontier)
        while frontier:
            if v in seen:
                on_cycle.add(v)
                break
            frontier = {g.target[e] for u in frontier for e in g.out_edges[u]} - seen
            seen |= frontier
        if v in seen:
            on_cycle.add(v)
    reach = set(on_cycle)
    frontier = list(on_cycle)
    while frontier:
        nxt = []
        for u in frontier:
            for e in g.out_edges[u]:
                t = g.target[e]
                if t not in reach:
                    reach.add(t)
                    nxt.append(t)
        frontier = nxt
    return reach


def orbit_identity_holds(h, l, k):
    """Does T^l h = T^k h T hold as maps?  Exhaustive symbolic check.

    Coordinates that read the head are compared over all words of a
    sufficient length; deeper coordinates reduce to comparing the block
    rule against itself shifted by (k + 1 - l), which is checked once over
    words whose origin can occur arbitrarily deep.
    Returns (holds, log) with the word lengths exhausted.
    """
    src = h.src
    m, wg = h.m, h.wg
    d = (k + 1) - l
    head_region = max(m - l, m - k, 0)
    explicit = head_region + len(src.vertices) + wg + abs(d) + 1
    needs = [h.input_window(l + explicit) + 1, h.input_window(k + explicit) + 2]
    wlen = max(needs)
    log = {"name": f"T^{l} h = T^{k} h T", "word_length": wlen,
           "explicit_coords": explicit, "tail_offset": d}
    for u in src.paths_of_length(wlen):
        lhs = h.coords_raw(u.base, u.edges, l + explicit)
        tbase = src.target[u.edges[0]]
        rhs = h.coords_raw(tbase, u.edges[1:], k + explicit)
        if lhs[l:l + explicit] != rhs[k:k + explicit]:
            return (False, {**log, "counterexample": {"word": u.edges}})
    if d != 0:
        deep = _cycle_reachable(src)
        for u in src.paths_of_length(wg + abs(d)):
            if u.o not in deep:
                continue
            if h._block_raw[u.edges[:wg]] != h._block_raw[u.edges[abs(d):abs(d) + wg]]:
                return (False, {**log, "counterexample": {"word": u.edges, "coord": "tail"}})
    return (True, log)


def check_property_P(h, lag=None):
    """T^(lag+1) h = T^lag h T, with lag defaulting to the presented m."""
    if lag is None:
        lag = h.m
    return orbit_identity_holds(h, lag + 1, lag)[0]


def compose_autos(outer, inner, certify=True):
    """The composite outer(inner(x)), re-canonicalized.

    The lag adds, the block code is the composite of the block codes, and
    the head is read off by evaluating the pair on a long enough window.
    """
    if inner.dst != outer.src:
        raise NotComposableError("codomain of the inner map must feed the outer map")
    m = outer.m + inner.m
    wg = inner.wg + outer.wg - 1
    block = {}
    for u in inner.src.paths_of_length(wg):
        mid_edges = [inner.block[u.slice(i, i + inner.wg)] for i in range(outer.wg)]
        mid = FinitePath(inner.dst, outer.src.origin[mid_edges[0]], tuple(mid_edges))
        block[u] = outer.block[mid]
    ly = max(outer.m + outer.wh, inner.m + outer.wg - 1)
    lx = max(inner.m + inner.wh, ly - inner.m + inner.wg - 1, m)
    wh = lx - m
    head = {}
    for u in inner.src.paths_of_length(lx):
        ypre = inner.prefix_image(u, ly)
        head[u] = outer.prefix_image(ypre, m)
    h = EventualAutomorphism(inner.src, outer.dst, m, wh, wg, head, block).canonicalize()
    if certify and outer.inverse is not None and inner.inverse is not None:
        inv = compose_autos(inner.inverse, outer.inverse, certify=False)
        h.inverse = inv
        inv.inverse = h
    return h


# -- enumeration ----------------------------------------------------------------

def _all_blocks(src, dst, wg):
    """Every chain-consistent block table, in deterministic order."""
    keys = sorted(src.paths_of_length(wg), key=lambda p: p.sort_key())
    links = []  # (i, j) pairs that overlap in some (wg+1)-word
    index = {k: i for i, k in enumerate(keys)}
    for u in src.paths_of_length(wg + 1):
        links.append((index[u.slice(0, wg)], index[u.slice(1, wg + 1)]))
    out = []
    assign = [None] * len(keys)

    def backtrack(i):
        if i == len(keys):
            out.append({keys[j]: assign[j] for j in range(len(keys))})
            return
        for e in dst.edge_ids:
            assign[i] = e
            ok = True
            for (a, b) in links:
                if assign[a] is None or assign[b] is None:
                    continue
                if dst.target[assign[a]] != dst.origin[assign[b]]:
                    ok = False
                    break
            if ok:
                backtrack(i + 1)
        assign[i] = None

    backtrack(0)
    return out


def _head_requirements(src, dst, block, wg, keylen):
    """Forced origin vertex of the block code per head key, or None."""
    req = {}
    for u in src.paths_of_length(max(keylen, wg)):
        key = u.slice(0, keylen)
        v = dst.origin[block[u.slice(0, wg)]]
        if req.setdefault(key, v) != v:
            return None
    return req


def _all_heads(src, dst, block, wg, m, wh):
    keylen = m + wh
    req = _head_requirements(src, dst, block, wg, keylen)
    if req is None:
        return
    keys = sorted(src.paths_of_length(keylen), key=lambda p: p.sort_key())
    if m == 0:
        yield {k: dst.empty_path(req[k]) for k in keys}
        return
    options = []
    for k in keys:
        opts = [p for p in dst.paths_of_length(m) if p.t == req[k]]
        if not opts:
            return
        options.append(opts)
    counters = [0] * len(keys)
    while True:
        yield {keys[i]: options[i][counters[i]] for i in range(len(keys))}
        i = len(keys) - 1
        while i >= 0:
            counters[i] += 1
            if counters[i] < len(options[i]):
                break
            counters[i] = 0
            i -= 1
        if i < 0:
            return


def enumerate_presentations(src, dst, w, mmax, reversed_identity=False):
    """All canonical presentations with lookahead <= w and lag <= mmax.

    w bounds how far a rule may read beyond the symbol it determines: head
    windows are m + wh with wh <= w, block windows are wg <= w + 1.  With
    reversed_identity the degree-reversing lag identity T^m h = T^(m+1) h T
    is required instead of the automatic property (P).
    """
    seen = set()
    for m in range(0, mmax + 1):
        for wg in range(1, w + 2):
            for block in _all_blocks(src, dst, wg):
                for wh in range(0, w + 1):
                    for head in _all_heads(src, dst, block, wg, m, wh):
                        try:
                            h = EventualAutomorphism(src, dst, m, wh, wg, head, block)
                        except ValueError:
                            continue
                        hc = h.canonicalize()
                        if hc.table_key() in seen:
                            continue
                        seen.add(hc.table_key())
                        if reversed_identity and not orbit_identity_holds(hc, hc.m, hc.m + 1)[0]:
                            continue
                        yield hc


def _sample_points(g, depth=3):
    pts = []
    for stem in g.paths_of_length(depth):
        pts.append(point_through(stem))
    for v in g.vertices:
        pts.append(greedy_point(g, v))
    return pts


def pair_inverses(forward, backward):
    """Attach certified inverses by exhaustive composition tests.

    Returns the sublist of forward maps that found a two-sided inverse in
    the backward list; each kept map carries its inverse.  Candidates are
    prefiltered by their action on a fixed sample of points.
    """
    kept = []
    src_pts = dst_pts = None
    fwd_images = {}
    for h in forward:
        if src_pts is None:
            src_pts = _sample_points(h.src)
            dst_pts = _sample_points(h.dst)
        images = [h.apply(x) for x in src_pts]
        if len(set(images)) != len(set(src_pts)) and len(set(src_pts)) == len(src_pts):
            continue  # collides on sample points: not injective
        fwd_images[h.table_key()] = images
    bwd_images = {}
    for h2 in backward:
        bwd_images[h2.table_key()] = [h2.apply(y) for y in dst_pts] if dst_pts else []
    for h in forward:
        if h.table_key() not in fwd_images:
            continue
        images = fwd_images[h.table_key()]
        match = None
        for h2 in backward:
            if any(h2.apply(y) != x for x, y in zip(src_pts, images)):
                continue
            if any(h.apply(x2) != y2 for y2, x2 in zip(dst_pts, bwd_images[h2.table_key()])):
                continue
            left = compose_autos(h2, h, certify=False)
            if not left.is_identity():
                continue
            right = compose_autos(h, h2, certify=False)
            if not right.is_identity():
                continue
            match = h2
            break
        if match is not None:
            h.inverse = match
            match.inverse = h
            kept.append(h)
    return kept


class GroupoidAutomorphism:
    """Phi(y, k, x) = (h(y), sign*k, h(x)) for a certified-invertible h.

    sign = -1 needs the degree-reversing lag identity for h and is refused
    whenever the cylinder-union obstruction exists on the graph.
    """

    def __init__(self, h, sign=1, obstruction_depth=1):
        if h.src != h.dst:
            raise ValueError("groupoid automorphisms need src == dst")
        if h.inverse is None:
            raise PreconditionError("h must carry a certified inverse",
                                    hypothesis="certified-inverse")
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if sign == -1:
            u = flip_obstruction_search(h.src, obstruction_depth)
            if u is not None:
                raise PreconditionError(
                    f"degree-reversing automorphisms are obstructed by {u!r}",
                    hypothesis="no-flip-obstruction")
            ok, log = orbit_identity_holds(h, h.m, h.m + 1)
            if not ok:
                raise PreconditionError(
                    "h does not satisfy the degree-reversing lag identity",
                    hypothesis="reversed-identity")
        self.h = h
        self.sign = sign

    @staticmethod
    def identity(g):
        return GroupoidAutomorphism(identity_automorphism(g))

    def apply_arrow(self, alpha):
        return GroupoidElement(self.h.apply(alpha.y), self.sign * alpha.k,
                               self.h.apply(alpha.x))

    def apply_point(self, x):
        return self.h.apply(x)

    def inverse(self):
        return GroupoidAutomorphism(self.h.inverse, self.sign)

    def compose(self, other):
        return GroupoidAutomorphism(compose_autos(self.h, other.h),
                                    self.sign * other.sign)

    def is_identity(self):
        return self.sign == 1 and self.h.is_identity()

    def __eq__(self, other):
        return (isinstance(other, GroupoidAutomorphism)
                and self.sign == other.sign and self.h == other.h)

    def __hash__(self):
        return hash((self.sign, self.h))

    def __repr__(self):
        return f"GroupoidAutomorphism(sign={self.sign}, {self.h!r})"


class OrbitGroupoidHom:
    """The groupoid homomorphism induced by a constant-(l, k) orbit map."""

    def __init__(self, l, k, h):
        ok, log = orbit_identity_holds(h, l, k)
        if not ok:
            raise PreconditionError(
                f"orbit identity T^{l} h = T^{k} h T fails: {log.get('counterexample')}",
                hypothesis="orbit-identity")
        self.l = l
        self.k = k
        self.h = h
        self.log = log

    def __call__(self, alpha):
        d = (self.l - self.k) * alpha.k
        return GroupoidElement(self.h.apply(alpha.y), d, self.h.apply(alpha.x))


def orbit_map_to_groupoid_hom(l, k, h):
    return OrbitGroupoidHom(l, k, h)


# -- finiteness of the path space -------------------------------------------------

def path_space_size(g):
    """Number of infinite paths, or None when uncountable.

    The space is finite iff every vertex reachable from a cycle has
    out-degree one; in that case all points are eventually periodic and can
    be counted directly.
    """
    deep = _cycle_reachable(g)
    if any(len(g.out_edges[v]) != 1 for v in deep):
        return None
    # points = paths through the out-degree-1 funnel; count distinct greedy fates
    points = set()
    for v in g.vertices:
        # enumerate all maximal branching prefixes then deterministic tails
        def walk(at, edges, fuel):
            if at in deep:
                tail = greedy_point(g, at)
                pre = edges
                points.add(EvPeriodicPath.from_words(g, pre + tail.prefix.edges,
                                                     tail.cycle.edges, base=v))
                return
            if fuel == 0:
                return
            for e in g.out_edges[at]:
                walk(g.target[e], edges + (e,), fuel - 1)

        walk(v, (), len(g.vertices) + 1)
    return len(points)


# -- conjugacy search -------------------------------------------------------------

class ConjugacySearchReport:
    def __init__(self):
        self.prunes = []
        self.hit = None   # (h, sign)
        self.certificate = None

    def to_json(self):
        out = {"schema": 1, "prunes": self.prunes, "found": self.hit is not None}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def eventual_conjugacy_search(g1, g2, w, mmax, allow_flip=False):
    """Bounded exhaustive search for a (flip) eventual conjugacy g1 -> g2.

    Returns a ConjugacySearchReport whose hit, when present, carries a
    replayable certificate: the rule tables of the map and its inverse, the
    verified identities with their exhausted word lengths, and the prune
    log.  An empty hit only means no conjugacy exists within the bounds.
    """
    report = ConjugacySearchReport()
    for g, tag in ((g1, "left"), (g2, "right")):
        ok, sinks = check_no_sinks(g)
        if not ok:
            raise PreconditionError(f"{tag} graph has sinks: {sinks}", hypothesis="no-sinks")
    n1, n2 = path_space_size(g1), path_space_size(g2)
    if (n1 is None) != (n2 is None) or (n1 is not None and n1 != n2):
        report.prunes.append({
            "rule": "path-space-cardinality",
            "left": "uncountable" if n1 is None else n1,
            "right": "uncountable" if n2 is None else n2})
        return report
    signs = [1]
    if allow_flip:
        pruned = False
        for g, tag in ((g1, "left"), (g2, "right")):
            u = flip_obstruction_search(g, 1)
            if u is not None:
                report.prunes.append({
                    "rule": "flip-obstruction", "side": tag,
                    "cylinders": [p.edges for p in u.paths]})
                pruned = True
        if not pruned:
            signs.append(-1)
    for sign in signs:
        reversed_id = (sign == -1)
        hit = _first_certified(g1, g2, w, mmax, reversed_id)
        if hit is not None:
            report.hit = (hit, sign)
            report.certificate = _certificate_for(hit, sign)
            return report
    return report


def _first_certified(g1, g2, w, mmax, reversed_id):
    """First forward candidate (in enumeration order) with a two-sided inverse.

    Streams both candidate enumerations so the common case (an early hit
    such as the identity) never materializes the full search space.
    """
    src_pts = _sample_points(g1)
    dst_pts = _sample_points(g2)
    backward_seen = []
    backward_gen = enumerate_presentations(g2, g1, w, mmax, reversed_identity=reversed_id)
    exhausted = False
    for h in enumerate_presentations(g1, g2, w, mmax, reversed_identity=reversed_id):
        images = [h.apply(x) for x in src_pts]
        if len(set(images)) != len(set(src_pts)):
            continue
        idx = 0
        while True:
            if idx == len(backward_seen):
                if exhausted:
                    break
                nxt = next(backward_gen, None)
                if nxt is None:
                    exhausted = True
                    continue
                backward_seen.append((nxt, [nxt.apply(y) for y in dst_pts]))
            h2, back_images = backward_seen[idx]
            idx += 1
            if any(h2.apply(y) != x for x, y in zip(src_pts, images)):
                continue
            if any(h.apply(x2) != y2 for y2, x2 in zip(dst_pts, back_images)):
                continue
            if not compose_autos(h2, h, certify=False).is_identity():
                continue
            if not compose_autos(h, h2, certify=False).is_identity():
                continue
            h.inverse = h2
            h2.inverse = h
            return h
    return None


def _certificate_for(h, sign):
    if sign == 1:
        log = orbit_identity_holds(h, h.m + 1, h.m)[1]
        inv_log = orbit_identity_holds(h.inverse, h.inverse.m + 1, h.inverse.m)[1]
    else:
        log = orbit_identity_holds(h, h.m, h.m + 1)[1]
        inv_log = orbit_identity_holds(h.inverse, h.inverse.m, h.inverse.m + 1)[1]
    return {"schema": 1, "sign": sign,
            "map": h.to_json(), "inverse": h.inverse.to_json(),
            "identities": [log, inv_log]}


def replay_certificate(g1, g2, certificate):
    """Re-run every check a conjugacy certificate claims; True iff all pass."""
    sign = certificate["sign"]
    h = EventualAutomorphism.from_json(g1, g2, certificate["map"])
    hinv = EventualAutomorphism.from_json(g2, g1, certificate["inverse"])
    h.inverse = hinv
    hinv.inverse = h
    if not compose_autos(hinv, h, certify=False).is_identity():
        return False
    if not compose_autos(h, hinv, certify=False).is_identity():
        return False
    if sign == 1:
        if not check_property_P(h) or not check_property_P(hinv):
            return False
        hom = orbit_map_to_groupoid_hom(h.m + 1, h.m, h)
        x = greedy_point(g1, g1.vertices[0])
        alpha = GroupoidElement(x, 0, x)
        image = hom(alpha)
        if image.k != 0:
            return False
    else:
        if not orbit_identity_holds(h, h.m, h.m + 1)[0]:
            return False
        if not orbit_identity_holds(hinv, hinv.m, hinv.m + 1)[0]:
            return False
    return True


def enumerate_eventual_automorphisms(g, w, mmax):
    """Certified-invertible eventual automorphisms of one graph, deduplicated."""
    candidates = list(enumerate_presentations(g, g, w, mmax))
    return pair_inverses(candidates, candidates)
