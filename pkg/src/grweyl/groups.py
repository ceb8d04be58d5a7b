"""Finite groups by table, permutation groups, abelianization, characters.

The infinite cyclic group is handled symbolically elsewhere (integer labels);
everything in this module is a finite group with a fixed element order, so
all downstream enumeration is deterministic.
"""

from fractions import Fraction

from .scalars import RootOfUnity


def perm_mul(p, q):
    """Composition of permutation tuples: (p q)(i) = p(q(i))."""
    return tuple(p[q[i]] for i in range(len(p)))


def perm_inv(p):
    out = [0] * len(p)
    for i, pi in enumerate(p):
        out[pi] = i
    return tuple(out)


def perm_from_cycles(n, cycles):
    """Permutation of {0..n-1} from 1-based cycle notation."""
    img = list(range(n))
    for cyc in cycles:
        for i, a in enumerate(cyc):
            b = cyc[(i + 1) % len(cyc)]
            img[a - 1] = b - 1
    return tuple(img)


def perm_to_cycles(p):
    """1-based disjoint cycle notation, fixed points omitted."""
    seen = [False] * len(p)
    cycles = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j + 1)
            j = p[j]
        cycles.append(tuple(cyc))
    return cycles


class FiniteGroup:
    """A finite group over hashable element tokens, identity listed first."""

    def __init__(self, elements, mul, inv=None, name=None, check=True):
        self.elements = tuple(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate group elements")
        self.identity = self.elements[0]
        self._mul = dict(mul)
        self.name = name or f"group<{len(self.elements)}>"
        if inv is None:
            inv = {}
            for a in self.elements:
                for b in self.elements:
                    if self._mul[(a, b)] == self.identity:
                        inv[a] = b
                        break
                else:
                    raise ValueError(f"element {a!r} has no inverse")
        self._inv = dict(inv)
        if check:
            self._verify()

    def _verify(self):
        els = self.elements
        e = self.identity
        for a in els:
            if self.mul(e, a) != a or self.mul(a, e) != a:
                raise ValueError("identity law fails")
            if self.mul(a, self.inv(a)) != e or self.mul(self.inv(a), a) != e:
                raise ValueError("inverse law fails")
        for a in els:
            for b in els:
                if self.mul(a, b) not in self.index:
                    raise ValueError("multiplication leaves the element set")
        for a in els:
            for b in els:
                for c in els:
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise ValueError("associativity fails")

    def mul(self, a, b):
        return self._mul[(a, b)]

    def inv(self, a):
        return self._inv[a]

    def product(self, seq):
        acc = self.identity
        for a in seq:
            acc = self.mul(acc, a)
        return acc

    def order(self):
        return len(self.elements)

    def element_order(self, a):
        n = 1
        b = a
        while b != self.identity:
            b = self.mul(b, a)
            n += 1
        return n

    def is_abelian(self):
        return all(self.mul(a, b) == self.mul(b, a)
                   for a in self.elements for b in self.elements)

    def subgroup_closure(self, gens):
        """Elements of the subgroup generated by gens, in group order."""
        seen = {self.identity}
        frontier = [self.identity]
        gens = [g for g in gens] + [self.inv(g) for g in gens]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return [g for g in self.elements if g in seen]

    def commutator_subgroup(self):
        comms = []
        for a in self.elements:
            for b in self.elements:
                c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
                comms.append(c)
        return self.subgroup_closure(comms)

    def abelianization(self):
        """The quotient by the commutator subgroup, plus the quotient map.

        Returns (ab_group, q) where q maps an element to its coset token.
        Coset tokens are frozensets ordered by their smallest member index.
        """
        n_sub = set(self.commutator_subgroup())
        cosets = {}
        for g in self.elements:
            coset = frozenset(self.mul(g, h) for h in n_sub)
            cosets[g] = coset
        token_of = {}
        ordered = []
        for g in self.elements:  # declaration order fixes coset order
            c = cosets[g]
            if c not in token_of:
                token_of[c] = c
                ordered.append(c)
        mul = {}
        rep = {c: min(c, key=lambda x: self.index[x]) for c in ordered}
        for c1 in ordered:
            for c2 in ordered:
                prod = self.mul(rep[c1], rep[c2])
                mul[(c1, c2)] = cosets[prod]
        ab = FiniteGroup(ordered, mul, name=self.name + "^ab", check=False)
        q = {g: cosets[g] for g in self.elements}
        return ab, q

    def characters(self):
        """All homomorphisms into roots of unity; requires an abelian group.

        Built by extending along a generator chain: if g has order m modulo
        the subgroup covered so far, a character value at g must be an m-th
        root of the value already fixed at g^m.  Sorted by value tuples, so
        the trivial character comes first.
        """
        if not self.is_abelian():
            raise ValueError("characters are enumerated for abelian groups only")

        def mod1(fr):
            return fr - (fr.numerator // fr.denominator)

        chars = [{self.identity: Fraction(0)}]
        covered = [self.identity]
        covered_set = {self.identity}
        for g in self.elements:
            if g in covered_set:
                continue
            m = 1
            p = g
            while p not in covered_set:
                p = self.mul(p, g)
                m += 1
            new_chars = []
            for chi in chars:
                anchor = chi[p]  # value at g^m, already defined
                for j in range(m):
                    t = mod1((anchor + j) / m)
                    ext = dict(chi)
                    power = self.identity
                    for i in range(1, m):
                        power = self.mul(power, g)
                        for h in covered:
                            ext[self.mul(h, power)] = mod1(chi[h] + i * t)
                    new_chars.append(ext)
            chars = new_chars
            power = self.identity
            for _ in range(1, m):
                power = self.mul(power, g)
                for h in list(covered):
                    el = self.mul(h, power)
                    if el not in covered_set:
                        covered_set.add(el)
                        covered.append(el)
            covered.sort(key=lambda x: self.index[x])
        out = []
        for chi in chars:
            out.append({g: RootOfUnity(chi[g]) for g in self.elements})
        out.sort(key=lambda c: tuple(c[g].t for g in self.elements))
        return out

    def __eq__(self, other):
        return (isinstance(other, FiniteGroup)
                and self.elements == other.elements and self._mul == other._mul)

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order {len(self.elements)})"

    def element_text(self, g):
        if isinstance(g, tuple) and all(isinstance(x, int) for x in g):
            cycles = perm_to_cycles(g)
            if not cycles:
                return "e"
            return "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles)
        if isinstance(g, frozenset):
            try:
                rep = min(g)
            except TypeError:
                rep = min(g, key=str)
            if isinstance(rep, tuple):
                cycles = perm_to_cycles(rep)
                body = "".join("(" + " ".join(str(x) for x in c) + ")" for c in cycles) or "e"
                return f"[{body}]"
            return f"[{rep}]"
        return str(g)


def symmetric_group(n):
    """The symmetric group on {1..n} as permutation tuples, identity first."""
    import itertools
    els = sorted(itertools.permutations(range(n)))
    ident = tuple(range(n))
    els.remove(ident)
    els = [ident] + els
    mul = {(a, b): perm_mul(a, b) for a in els for b in els}
    return FiniteGroup(els, mul, inv={a: perm_inv(a) for a in els},
                       name=f"S{n}", check=(n <= 4))


def cyclic_group(n):
    els = list(range(n))
    mul = {(a, b): (a + b) % n for a in els for b in els}
    return FiniteGroup(els, mul, inv={a: (-a) % n for a in els},
                       name=f"Z/{n}", check=(n <= 24))


def trivial_group():
    return FiniteGroup(("e",), {("e", "e"): "e"}, name="1")
