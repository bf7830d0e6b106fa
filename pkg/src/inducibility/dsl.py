"""Construction expressions.

A small text language for graphs and step models: named leaves (K3, C5,
loopK1, paley(9), cayley2(10; 1,2,5), fixed 4-vertex names, bull), the
operators complement, blowup, compose, tensor and union, and the random
models bernoulli(p) and bipartite(p).  Numbers are exact rationals; pass
approx=True at evaluation to push every numeric weight to float.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import (
    LabeledGraph,
    blow_up,
    build_named,
    complement,
    compose,
    graph6_decode,
    tensor,
)
from .models import (
    StepModel,
    bernoulli,
    bipartite_random,
    from_graph,
    model_complement,
    model_tensor,
    model_union,
)
from .profiles import QuantumGraph, iso_table, MIN_ORDER, MAX_ORDER

MAX_VERTICES = 65536

_FIXED_LEAVES = ("K4", "A4", "T4", "S4", "M4", "C4", "Q4", "V4", "D4", "E4", "P4", "bull")
_FAMILY_RE = re.compile(r"^(loopK|K|A|C|P)([0-9]+)$")


class ExprError(ValueError):
    """Parse or evaluation error with a source position."""

    def __init__(self, message: str, pos: int | None = None):
        if pos is not None:
            message = f"{message} (at column {pos + 1})"
        super().__init__(message)
        self.pos = pos


def _span() -> tuple:
    return field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Named:
    name: str
    params: tuple = ()
    span: tuple = _span()


@dataclass(frozen=True)
class Complement:
    inner: object
    span: tuple = _span()


@dataclass(frozen=True)
class BlowUp:
    inner: object
    m: int = 1
    span: tuple = _span()


@dataclass(frozen=True)
class Compose:
    left: object
    right: object
    span: tuple = _span()


@dataclass(frozen=True)
class Tensor:
    factors: tuple = ()
    span: tuple = _span()


@dataclass(frozen=True)
class Union:
    parts: tuple = ()
    span: tuple = _span()


@dataclass(frozen=True)
class Bernoulli:
    p: Fraction = Fraction(0)
    span: tuple = _span()


@dataclass(frozen=True)
class BipartiteRandom:
    p: Fraction = Fraction(0)
    span: tuple = _span()


@dataclass(frozen=True)
class Load:
    path: str = ""
    span: tuple = _span()


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>[0-9]+(?:\.[0-9]+)?)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)"
    r'|(?P<str>"[^"]*")|(?P<sym>[(),:;/]))'
)


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise ExprError(f"unexpected character {stripped[0]!r}", len(text) - len(stripped))
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("ident") is not None:
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        elif m.group("str") is not None:
            tokens.append(("str", m.group("str")[1:-1], m.start("str")))
        else:
            tokens.append(("sym", m.group("sym"), m.start("sym")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, value: str | None = None):
        tok = self.next()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            raise ExprError(f"expected {want!r}, found {tok[1]!r}", tok[2])
        return tok

    def at_symbol(self, value: str) -> bool:
        tok = self.peek()
        return tok[0] == "sym" and tok[1] == value

    def parse_number(self) -> Fraction:
        tok = self.expect("num")
        value = Fraction(tok[1])
        if self.at_symbol("/"):
            self.next()
            den = self.expect("num")
            if "." in den[1] or "." in tok[1]:
                raise ExprError("rational literals take integer parts", den[2])
            value = Fraction(int(tok[1]), int(den[1]))
        return value

    def parse_int(self) -> int:
        tok = self.expect("num")
        if "." in tok[1]:
            raise ExprError("expected an integer", tok[2])
        return int(tok[1])

    def parse_expr(self):
        tok = self.peek()
        if tok[0] != "ident":
            raise ExprError(f"expected a construction, found {tok[1]!r}", tok[2])
        name = tok[1]
        self.next()
        if not self.at_symbol("("):
            return self._leaf(name, tok[2])
        self.expect("sym", "(")
        node = self._call(name, tok[2])
        self.expect("sym", ")")
        return node

    def _leaf(self, name: str, pos: int):
        if name in _FIXED_LEAVES or _FAMILY_RE.match(name):
            return Named(name=name, span=(pos, pos + len(name)))
        raise ExprError(f"unknown construction {name!r}", pos)

    def _args_until_close(self, parse_one, separators=(",",)):
        args = [parse_one()]
        while True:
            tok = self.peek()
            if tok[0] == "sym" and tok[1] in separators:
                self.next()
                args.append(parse_one())
            else:
                return args

    def _weighted_part(self):
        e = self.parse_expr()
        weight = Fraction(1)
        if self.at_symbol(":"):
            self.next()
            weight = self.parse_number()
        return (e, weight)

    def _call(self, name: str, pos: int):
        if name == "complement":
            return Complement(inner=self.parse_expr(), span=(pos, self.peek()[2]))
        if name == "blowup":
            inner = self.parse_expr()
            if not self.at_symbol(","):
                raise ExprError("blowup takes a construction and a positive count", self.peek()[2])
            self.next()
            m = self.parse_int()
            if m < 1:
                raise ExprError("blowup count must be positive", pos)
            return BlowUp(inner=inner, m=m, span=(pos, self.peek()[2]))
        if name == "compose":
            args = self._args_until_close(self.parse_expr)
            if len(args) < 2:
                raise ExprError("compose takes at least two constructions", pos)
            node = args[0]
            for right in args[1:]:
                node = Compose(left=node, right=right, span=(pos, self.peek()[2]))
            return node
        if name == "tensor":
            args = self._args_until_close(self.parse_expr)
            if len(args) < 2:
                raise ExprError("tensor takes at least two constructions", pos)
            return Tensor(factors=tuple(args), span=(pos, self.peek()[2]))
        if name == "union":
            parts = self._args_until_close(self._weighted_part)
            return Union(parts=tuple(parts), span=(pos, self.peek()[2]))
        if name == "bernoulli":
            p = self.parse_number()
            return Bernoulli(p=p, span=(pos, self.peek()[2]))
        if name == "bipartite":
            p = self.parse_number()
            return BipartiteRandom(p=p, span=(pos, self.peek()[2]))
        if name == "load":
            tok = self.next()
            if tok[0] != "str":
                raise ExprError("load takes a quoted path", tok[2])
            return Load(path=tok[1], span=(pos, self.peek()[2]))
        if name == "kpart":
            sizes = self._args_until_close(self.parse_int)
            return Named(name="kpart", params=tuple(sizes), span=(pos, self.peek()[2]))
        if name == "paley":
            q = self.parse_int()
            return Named(name="paley", params=(q,), span=(pos, self.peek()[2]))
        if name == "cayley2":
            args = self._args_until_close(self.parse_int, separators=(",", ";"))
            if len(args) < 2:
                raise ExprError("cayley2 takes a dimension and weight classes", pos)
            return Named(name="cayley2", params=tuple(args), span=(pos, self.peek()[2]))
        raise ExprError(f"unknown operator {name!r}", pos)


def parse_expr(text: str):
    parser = _Parser(text)
    node = parser.parse_expr()
    tok = parser.peek()
    if tok[0] != "end":
        raise ExprError(f"unexpected trailing input {tok[1]!r}", tok[2])
    return node


def split_top_level(text: str) -> list[str]:
    """Split a factor list on commas outside parentheses."""
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ExprError("unbalanced parentheses", i)
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth != 0:
        raise ExprError("unbalanced parentheses", len(text) - 1)
    parts.append(text[start:])
    parts = [p.strip() for p in parts]
    if any(not p for p in parts):
        raise ExprError("empty factor in list")
    return parts


def print_expr(node) -> str:
    """Canonical text form; parsing it reproduces the node."""
    if isinstance(node, Named):
        if not node.params:
            return node.name
        if node.name == "cayley2":
            n, *weights = node.params
            return f"cayley2({n}; {', '.join(str(w) for w in weights)})"
        return f"{node.name}({', '.join(str(p) for p in node.params)})"
    if isinstance(node, Complement):
        return f"complement({print_expr(node.inner)})"
    if isinstance(node, BlowUp):
        return f"blowup({print_expr(node.inner)}, {node.m})"
    if isinstance(node, Compose):
        return f"compose({print_expr(node.left)}, {print_expr(node.right)})"
    if isinstance(node, Tensor):
        return f"tensor({', '.join(print_expr(f) for f in node.factors)})"
    if isinstance(node, Union):
        parts = ", ".join(f"{print_expr(e)}:{w}" for e, w in node.parts)
        return f"union({parts})"
    if isinstance(node, Bernoulli):
        return f"bernoulli({node.p})"
    if isinstance(node, BipartiteRandom):
        return f"bipartite({node.p})"
    if isinstance(node, Load):
        return f'load("{node.path}")'
    raise TypeError(f"not a construction node: {node!r}")


def _check_size(n: int, max_vertices: int, span) -> None:
    if n > max_vertices:
        raise ExprError(
            f"construction has {n} vertices, above the limit of {max_vertices}; "
            "use a step-model or spectral route instead",
            span[0],
        )


def _eval_named(node: Named):
    name = node.name
    if name in _FIXED_LEAVES:
        return build_named(name)
    m = _FAMILY_RE.match(name)
    if m:
        return build_named(m.group(1), [int(m.group(2))])
    if name == "kpart":
        return build_named("kpart", list(node.params))
    if name == "paley":
        return build_named("paley", [node.params[0]])
    if name == "cayley2":
        return build_named("cayley2", list(node.params))
    raise ExprError(f"unknown construction {name!r}", node.span[0])


def evaluate(node, approx: bool = False, max_vertices: int = MAX_VERTICES):
    """Build the graph or step model a construction denotes.

    Graphs stay graphs as long as every operator is graph-valued; union and
    any random leaf produce a step model, lifting graph operands through
    their blow-up limits.
    """
    if isinstance(node, Named):
        g = _eval_named(node)
        _check_size(g.n, max_vertices, node.span)
        return g
    if isinstance(node, Load):
        with open(node.path, "r", encoding="ascii") as handle:
            text = handle.read().strip()
        g = graph6_decode(text)
        _check_size(g.n, max_vertices, node.span)
        return g
    if isinstance(node, Complement):
        inner = evaluate(node.inner, approx, max_vertices)
        if isinstance(inner, LabeledGraph):
            return complement(inner)
        return model_complement(inner)
    if isinstance(node, BlowUp):
        inner = evaluate(node.inner, approx, max_vertices)
        if not isinstance(inner, LabeledGraph):
            raise ExprError("blowup applies to graphs only", node.span[0])
        _check_size(inner.n * node.m, max_vertices, node.span)
        return blow_up(inner, node.m)
    if isinstance(node, Compose):
        left = evaluate(node.left, approx, max_vertices)
        right = evaluate(node.right, approx, max_vertices)
        if not (isinstance(left, LabeledGraph) and isinstance(right, LabeledGraph)):
            raise ExprError("compose applies to graphs only", node.span[0])
        _check_size(left.n * right.n, max_vertices, node.span)
        return compose(left, right)
    if isinstance(node, Tensor):
        factors = [evaluate(f, approx, max_vertices) for f in node.factors]
        if all(isinstance(f, LabeledGraph) for f in factors):
            n = 1
            for f in factors:
                n *= f.n
            _check_size(n, max_vertices, node.span)
            return tensor(*factors)
        models = [f if isinstance(f, StepModel) else from_graph(f) for f in factors]
        out = models[0]
        for m in models[1:]:
            out = model_tensor(out, m)
        return out
    if isinstance(node, Union):
        parts = []
        for e, weight in node.parts:
            inner = evaluate(e, approx, max_vertices)
            if isinstance(inner, LabeledGraph):
                inner = from_graph(inner)
            parts.append((inner, float(weight) if approx else weight))
        return model_union(parts)
    if isinstance(node, Bernoulli):
        return bernoulli(float(node.p) if approx else node.p)
    if isinstance(node, BipartiteRandom):
        return bipartite_random(float(node.p) if approx else node.p)
    raise TypeError(f"not a construction node: {node!r}")


_QTERM_RE = re.compile(r"^\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*\s*)?([A-Za-z][A-Za-z0-9_]*)\s*$")


def parse_quantum(text: str, t: int | None = None) -> QuantumGraph:
    """Parse a rational combination of type names, e.g. "K4+A4" or
    "1/2*C4 + 1/2*M4"; the order is inferred when not given."""
    raw = text.replace("-", "+-")
    terms = []
    for chunk in raw.split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = 1
        if chunk.startswith("-"):
            sign = -1
            chunk = chunk[1:].strip()
        m = _QTERM_RE.match(chunk)
        if m is None:
            raise ExprError(f"bad quantum term {chunk!r}")
        coeff = Fraction(m.group(1)) if m.group(1) else Fraction(1)
        terms.append((m.group(2), sign * coeff))
    if not terms:
        raise ExprError("empty quantum expression")
    if t is None:
        candidates = [
            order
            for order in range(MIN_ORDER, MAX_ORDER + 1)
            if all(name in iso_table(order).names for name, _ in terms)
        ]
        if not candidates:
            raise ExprError(f"no single order resolves all of {[n for n, _ in terms]}")
        if len(candidates) > 1:
            raise ExprError(
                f"order is ambiguous among {candidates}; pass t explicitly"
            )
        t = candidates[0]
    return QuantumGraph.from_pairs(t, terms)
