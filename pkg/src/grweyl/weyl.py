"""Weyl-group machinery: automorphisms of the algebra from groupoid data.

A pair (Phi, c) of a groupoid automorphism and a circle-valued cocycle acts
on the path-pair algebra basis-wise: an indicator of a basic bisection is
refined until c is constant on each piece, every piece is pushed through
Phi exactly, and the results are re-normalized.  The semidirect-product law
for composing such pairs is verified pointwise against independently
computed compositions.
"""

from .algebra import AlgebraElement, normalize_terms
from .cocycles import ProductCocycle, _extend, transported
from .dynamics import compose_autos, enumerate_eventual_automorphisms, path_space_size
from .errors import InconsistencyError, PreconditionError, SearchExhaustedError
from .graphs import (check_condition_L, check_no_sinks, check_no_sources,
                     check_pair_sync)
from .pathspace import (BasicBisection, GroupoidElement, bisection_contains,
                        point_through)


def _anticipation(h):
    """Lookahead excess of the tail code over the lag."""
    return h.wg - 1 - h.m


def _partner_prefix(phi, mu, nu, kappa, ell):
    """First ell edges of h(nu . T^{|mu|} h^{-1}(y)) for y in C(kappa)."""
    h, hinv = phi.h, phi.h.inverse
    need_v = max(h.input_window(ell), len(nu))
    n_len = len(mu) + max(0, need_v - len(nu))
    upre = hinv.prefix_image(kappa, n_len)
    v = nu.concat(upre.slice(len(mu), n_len))
    return h.prefix_image(v, ell)


def image_of_bisection(phi, b):
    """Phi(Z(mu, nu)) as a normalized finite union of basic bisections.

    Pieces are indexed by deep range-side cylinders; per piece the source
    side is computed exactly through the inverse presentation, and the
    resulting family is merged back to a canonical union.  Requires rules
    whose tail codes read at most one edge ahead per output edge (true of
    every certified automorphism produced by the enumerations here); wider
    anticipation raises an error rather than returning an approximation.
    """
    if phi.sign == -1:
        return _image_pointwise(phi, b)
    h, hinv = phi.h, phi.h.inverse
    if _anticipation(h) > 0 or _anticipation(hinv) > 0:
        raise SearchExhaustedError(
            "bisection images need tail codes with lookahead at most the lag",
            detail={"anticipation": (_anticipation(h), _anticipation(hinv))})
    mu, nu = b.mu, b.nu
    k = len(mu) - len(nu)
    d = max(hinv.input_window(len(mu)), k + hinv.input_window(len(nu)),
            h.m + len(mu), len(mu), 1)
    for _ in range(64):
        ell = d - k
        need_v = max(h.input_window(ell), len(nu))
        n_len = len(mu) + max(0, need_v - len(nu))
        need = hinv.input_window(n_len)
        if need <= d:
            break
        d = need
    else:
        raise SearchExhaustedError("piece depth for the bisection image did not settle")
    dst = h.dst
    pieces = {}
    for kappa in dst.paths_of_length(d):
        if hinv.prefix_image(kappa, len(mu)) != mu:
            continue
        partner = _partner_prefix(phi, mu, nu, kappa, d - k)
        pieces[(kappa, partner)] = 1
    merged = normalize_terms(dst, {key: 1 for key in pieces})
    return [BasicBisection(a, bb) for (a, bb) in sorted(
        merged, key=lambda mn: (mn[0].sort_key(), mn[1].sort_key()))]


def _space_points(g):
    """All points of a finite path space."""
    if path_space_size(g) is None:
        raise PreconditionError("pointwise images need a finite path space",
                                hypothesis="finite-path-space")
    points = []
    seen = set()
    for v in g.vertices:
        def walk(at, edges, fuel):
            if len(g.out_edges[at]) == 1 or fuel == 0:
                pt = point_through(g.edge_path(*edges) if edges else g.empty_path(v))
                if pt not in seen:
                    seen.add(pt)
                    points.append(pt)
                return
            for e in g.out_edges[at]:
                walk(g.target[e], edges + (e,), fuel - 1)
        walk(v, (), len(g.vertices) + 1)
    return points


def _image_pointwise(phi, b):
    """Sign -1 images on finite path spaces: isolate each arrow separately."""
    g = phi.h.src
    points = _space_points(g)
    arrows = []
    for z in points:
        if z.o != b.mu.t:
            continue
        alpha = GroupoidElement(_extend(b.mu, z), b.degree, _extend(b.nu, z))
        arrows.append(phi.apply_arrow(alpha))
    out = []
    for alpha in sorted(set(arrows), key=lambda a: (a.y.sort_key(), a.k, a.x.sort_key())):
        out.append(_isolate_arrow(g, alpha, points))
    merged = normalize_terms(phi.h.dst, {(p.mu, p.nu): 1 for p in out})
    return [BasicBisection(a, bb) for (a, bb) in sorted(
        merged, key=lambda mn: (mn[0].sort_key(), mn[1].sort_key()))]


def _isolate_arrow(g, alpha, points):
    for length in range(0, 4 * (len(g.vertices) + len(g.edges)) + 4):
        la = length + max(alpha.k, 0)
        lb = la - alpha.k
        cand = BasicBisection(alpha.y.word(0, la), alpha.x.word(0, lb))
        members = []
        for z in points:
            if z.o != cand.mu.t:
                continue
            try:
                beta = GroupoidElement(_extend(cand.mu, z), cand.degree,
                                       _extend(cand.nu, z))
            except Exception:
                continue
            if bisection_contains(cand, beta):
                members.append(beta)
        if members == [alpha]:
            return cand
    raise SearchExhaustedError("could not isolate an arrow as a basic bisection")


_IMAGE_CACHE = {}


class AlgebraAutomorphism:
    """The automorphism f -> (c o Phi^{-1}) . (f o Phi^{-1}) in normal form."""

    def __init__(self, phi, cocycle):
        if not cocycle.circle_valued:
            raise PreconditionError("the cocycle part must be circle-valued",
                                    hypothesis="circle-valued")
        self.phi = phi
        self.cocycle = cocycle

    def _piece_image(self, piece):
        key = (self.phi.h.table_key(), self.phi.sign, piece.mu, piece.nu)
        if key not in _IMAGE_CACHE:
            _IMAGE_CACHE[key] = image_of_bisection(self.phi, piece)
        return _IMAGE_CACHE[key]

    def apply(self, a, max_refine=32):
        g = a.graph
        terms = {}
        for (mu, nu), coeff in a.terms.items():
            depth = self.cocycle.gamma_depth(len(mu), len(nu))
            if depth > max_refine:
                raise SearchExhaustedError(
                    f"cocycle needs refinement depth {depth} > bound {max_refine}")
            base = BasicBisection(mu, nu)
            for gamma in g.paths_of_length(depth, origin=mu.t):
                piece = base.extend(gamma)
                val = self._constant_value(piece)
                scalar = coeff * val.to_scalar()
                for img in self._piece_image(piece):
                    key = (img.mu, img.nu)
                    if key in terms:
                        terms[key] = terms[key] + scalar
                    else:
                        terms[key] = scalar
        return AlgebraElement(self.phi.h.dst, terms)

    def _constant_value(self, piece):
        # the refinement depth guarantees constancy; sample twice as a guard
        samples = [piece.sample_point()]
        out_edges = piece.mu.graph.out_edges[piece.mu.t]
        if len(out_edges) > 1:
            alt = piece.extend(piece.mu.graph.edge_path(out_edges[1]))
            samples.append(alt.sample_point())
        vals = [self.cocycle.eval(s) for s in samples]
        if any(v != vals[0] for v in vals[1:]):
            raise InconsistencyError("cocycle not constant on a refined piece",
                                     witness=piece)
        return vals[0]

    def compose(self, other):
        """The semidirect-product composition (pointwise-derived cocycle)."""
        phi = self.phi.compose(other.phi)
        d = ProductCocycle([transported(self.cocycle, other.phi), other.cocycle])
        return AlgebraAutomorphism(phi, d)


def apply_automorphism(auto, a, max_refine=32):
    return auto.apply(a, max_refine=max_refine)


def check_fixes_diagonal(auto, sample_depth=3):
    """Does the automorphism fix every diagonal monomial up to the depth?"""
    g = auto.phi.h.src
    for depth in range(0, sample_depth + 1):
        for mu in g.paths_of_length(depth):
            mono = AlgebraElement.monomial(g, mu, mu)
            if auto.apply(mono) != mono:
                return False
    return True


def check_semidirect_law(pairs, depth=2, max_refine=32):
    """phi_(F,c) o phi_(F',c') = phi_(FF', (c o F') . c') on monomials.

    Exact comparison on every path-pair monomial up to the given depth;
    returns (True, None) or (False, counterexample).
    """
    if not pairs:
        return (True, None)
    g = pairs[0].phi.h.src
    monos = []
    for dm in range(0, depth + 1):
        for dn in range(0, depth + 1):
            for mu in g.paths_of_length(dm):
                for nu in g.paths_of_length(dn):
                    if mu.t == nu.t:
                        monos.append(AlgebraElement.monomial(g, mu, nu))
    for a1 in pairs:
        for a2 in pairs:
            composed = a1.compose(a2)
            for mono in monos:
                lhs = a1.apply(a2.apply(mono, max_refine), max_refine)
                rhs = composed.apply(mono, max_refine)
                if lhs != rhs:
                    return (False, {"pair": (a1, a2), "monomial": mono})
    return (True, None)


WEYL_HYPOTHESES = ("no-sinks", "no-sources", "condition-L", "pair-sync")


def check_weyl_hypotheses(g):
    """The gate for the restricted Weyl enumeration; returns a transcript."""
    transcript = []
    ok, sinks = check_no_sinks(g)
    transcript.append(("no-sinks", ok, sinks))
    ok2, sources = check_no_sources(g)
    transcript.append(("no-sources", ok2, sources))
    ok3, cyc = check_condition_L(g)
    transcript.append(("condition-L", ok3, None if cyc is None else cyc.text()))
    ok4, pair = check_pair_sync(g)
    transcript.append(("pair-sync", ok4, pair))
    return transcript


def enumerate_restricted_weyl(g, w, mmax):
    """Certified eventual automorphisms plus their bounded composition table.

    Raises naming the first failed hypothesis.  Table entries are indices
    into the list, or the string 'out-of-bound' when the canonical
    composite exceeds the window bounds.
    """
    transcript = check_weyl_hypotheses(g)
    for name, ok, witness in transcript:
        if not ok:
            raise PreconditionError(
                f"restricted Weyl enumeration hypothesis failed: {name} ({witness})",
                hypothesis=name)
    autos = enumerate_eventual_automorphisms(g, w, mmax)
    index = {h.table_key(): i for i, h in enumerate(autos)}
    table = {}
    for i, hi in enumerate(autos):
        for j, hj in enumerate(autos):
            comp = compose_autos(hi, hj, certify=False)
            table[(i, j)] = index.get(comp.table_key(), "out-of-bound")
    return autos, table, transcript
