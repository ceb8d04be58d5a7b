"""Parsers for algebra expressions, path literals, and labeling files."""

import re
from fractions import Fraction

from .algebra import AlgebraElement, multiply
from .cocycles import Z, EdgeLabeling
from .errors import GraphFormatError
from .graphs import FinitePath
from .groups import FiniteGroup, cyclic_group, perm_from_cycles, symmetric_group, trivial_group
from .scalars import Cyclotomic

_TOKEN = re.compile(r"\s*(\^\*|[()+\-*/^]|[A-Za-z_][A-Za-z0-9_]*|\d+)")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise GraphFormatError(f"bad character at offset {pos}: {text[pos]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _ExprParser:
    """Recursive descent for: expr := term (('+'|'-') term)*,
    term := [scalar '*'] factor ('*' factor)*, factor := S(...)[^*] | P(v) | (expr)."""

    def __init__(self, graph, tokens):
        self.g = graph
        self.toks = tokens
        self.i = 0

    def peek(self, ahead=0):
        j = self.i + ahead
        return self.toks[j] if j < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise GraphFormatError("unexpected end of expression")
        if expected is not None and tok != expected:
            raise GraphFormatError(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.peek() is not None:
            raise GraphFormatError(f"trailing input at token {self.peek()!r}")
        return value

    def expr(self):
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        value = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.take()
            term = self.term()
            value = value + (term if op == "+" else term.scale(-1))
        return value

    def term(self):
        coeff = None
        if self._scalar_starts():
            coeff = self.scalar()
            self.take("*")
        elif self.peek() == "(":
            # possibly a parenthesized scalar coefficient, as emitted by the
            # normal-form renderer; backtrack if it turns out to be a factor
            saved = self.i
            try:
                self.take("(")
                coeff = self.scalar_expr()
                self.take(")")
                self.take("*")
            except GraphFormatError:
                coeff = None
                self.i = saved
        value = self.factor()
        while True:
            if self.peek() == "*":
                self.take()
                value = multiply(value, self.factor())
            elif self.peek() in ("S", "P", "("):
                # juxtaposition, matching the normal-form text rendering
                value = multiply(value, self.factor())
            else:
                break
        if coeff is not None:
            value = value.scale(coeff)
        return value

    def _scalar_starts(self, ahead=0):
        tok = self.peek(ahead)
        return tok is not None and (tok.isdigit() or tok == "zeta")

    def scalar(self):
        value = self.scalar_atom()
        while self.peek() == "*" and self._scalar_starts(1):
            self.take()
            value = value * self.scalar_atom()
        return value

    def scalar_atom(self):
        tok = self.take()
        if tok.isdigit():
            num = int(tok)
            if self.peek() == "/":
                self.take()
                den = self.take()
                if not den.isdigit():
                    raise GraphFormatError(f"bad rational denominator {den!r}")
                return Cyclotomic.from_rational(Fraction(num, int(den)))
            return Cyclotomic.from_rational(num)
        if tok == "zeta":
            self.take("(")
            n = self.take()
            if not n.isdigit():
                raise GraphFormatError(f"bad root order {n!r}")
            self.take(")")
            k = 1
            if self.peek() == "^":
                self.take()
                neg = False
                if self.peek() == "-":
                    self.take()
                    neg = True
                ktok = self.take()
                if not ktok.isdigit():
                    raise GraphFormatError(f"bad exponent {ktok!r}")
                k = -int(ktok) if neg else int(ktok)
            return Cyclotomic.zeta(int(n), k)
        raise GraphFormatError(f"expected a scalar, found {tok!r}")

    def factor(self):
        tok = self.take()
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        if tok == "S":
            self.take("(")
            edges = []
            while self.peek() != ")":
                edges.append(self.take())
            self.take(")")
            if not edges:
                raise GraphFormatError("S(...) needs at least one edge")
            for e in edges:
                if e not in self.g.edge_index:
                    raise GraphFormatError(f"unknown edge {e!r}")
            path = self.g.edge_path(*edges)
            value = AlgebraElement.path_isometry(self.g, path)
            if self.peek() == "^*":
                self.take()
                value = value.involute()
            return value
        if tok == "P":
            self.take("(")
            v = self.take()
            self.take(")")
            if v not in self.g.vertex_index:
                raise GraphFormatError(f"unknown vertex {v!r}")
            value = AlgebraElement.vertex_projection(self.g, v)
            if self.peek() == "^*":
                self.take()
            return value
        raise GraphFormatError(f"expected a factor, found {tok!r}")


def parse_expression(graph, text):
    """An AlgebraElement from the expression grammar, in normal form."""
    return _ExprParser(graph, _tokenize(text)).parse()


def parse_path_literal(graph, text):
    """'path v; a b c' or 'a b c' (base vertex deduced from the first edge)."""
    text = text.strip()
    if text.startswith("path"):
        headpart, _, rest = text.partition(";")
        v = headpart.split()[1]
        if v not in graph.vertex_index:
            raise GraphFormatError(f"unknown vertex {v!r}")
        edges = rest.split()
        if not edges:
            return graph.empty_path(v)
        path = graph.edge_path(*edges)
        if path.o != v:
            raise GraphFormatError("declared base vertex does not match the first edge")
        return path
    edges = text.split()
    if not edges:
        raise GraphFormatError("empty path literal needs the 'path v;' form")
    return graph.edge_path(*edges)


def parse_ev_path_literal(graph, text):
    """'a b | c d': prefix 'a b', repeating cycle 'c d'."""
    from .pathspace import EvPeriodicPath
    if "|" not in text:
        raise GraphFormatError("eventually periodic literal needs 'prefix | cycle'")
    pre, _, cyc = text.partition("|")
    pre_edges = tuple(pre.split())
    cyc_edges = tuple(cyc.split())
    if not cyc_edges:
        raise GraphFormatError("cycle part must be nonempty")
    return EvPeriodicPath.from_words(graph, pre_edges, cyc_edges)


_CYCLES = re.compile(r"\(([^()]*)\)")


def _parse_perm(token_str, n):
    s = token_str.strip()
    if s in ("e", "id", "()"):
        return tuple(range(n))
    if s.startswith("perm"):
        imgs = [int(t) for t in s.split()[1:]]
        if sorted(imgs) != list(range(1, n + 1)):
            raise GraphFormatError(f"bad one-line permutation {s!r}")
        return tuple(i - 1 for i in imgs)
    cycles = []
    rest = s.replace(" ", "")
    matched = "".join("(" + m + ")" for m in _CYCLES.findall(s))
    if rest != matched.replace(" ", ""):
        raise GraphFormatError(f"bad permutation literal {s!r}")
    for m in _CYCLES.findall(s):
        entries = [int(t) for t in m.replace(",", " ").split()]
        if any(not (1 <= t <= n) for t in entries):
            raise GraphFormatError(f"cycle entry out of range in {s!r}")
        cycles.append(entries)
    return perm_from_cycles(n, cycles)


def parse_labeling(graph, text):
    """The labeling file format: a 'group:' line, then 'label <edge> <element>'."""
    group = None
    kind = None
    labels = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("group:"):
            spec = line[len("group:"):].strip()
            if spec == "Z":
                group, kind = Z, "z"
            elif spec.startswith("Z/"):
                group, kind = cyclic_group(int(spec[2:])), "zn"
            elif spec.startswith("perm"):
                group, kind = symmetric_group(int(spec.split()[1])), "perm"
            elif spec in ("trivial", "1"):
                group, kind = trivial_group(), "trivial"
            else:
                raise GraphFormatError(f"unknown group spec {spec!r}", line=ln)
            continue
        if line.startswith("label "):
            if group is None:
                raise GraphFormatError("label before group declaration", line=ln)
            parts = line.split(None, 2)
            if len(parts) < 3:
                raise GraphFormatError("expected 'label <edge> <element>'", line=ln)
            _, edge, elem = parts
            if edge not in graph.edge_index:
                raise GraphFormatError(f"unknown edge {edge!r}", line=ln)
            if kind == "z":
                labels[edge] = int(elem)
            elif kind == "zn":
                labels[edge] = int(elem) % group.order()
            elif kind == "trivial":
                labels[edge] = "e"
            else:
                n = len(group.identity)
                labels[edge] = _parse_perm(elem, n)
            continue
        raise GraphFormatError(f"unrecognized line {line!r}", line=ln)
    if group is None:
        raise GraphFormatError("labeling file misses the group declaration")
    return EdgeLabeling(graph, group, labels)
