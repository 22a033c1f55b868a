"""Text syntax for scalars and operator elements.

Grammar (explicit ``*`` between factors; no juxtaposition)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ['-' | '+'] atom ['^' ['-'] int]
    atom   := int | 'q' | 'v' | 'z' | 'T' | 'E' '[' int ',' int ']' | '(' expr ')'

``-x^2`` reads as ``-(x^2)``.  ``z`` and ``T`` stand for ``z*I`` and ``T*I``;
a bare scalar added to an operator is read as that multiple of the identity.
Division is only defined by a nonzero scalar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Tuple, Union

from .algebra import Element, identity, multiply
from .scalar import ONE, FieldElement, V, Q, format_scalar

__all__ = [
    "ParseError",
    "Num",
    "Sym",
    "Unit",
    "Neg",
    "Pow",
    "BinOp",
    "parse_expr",
    "eval_expr",
    "parse_element",
    "parse_scalar",
    "format_element",
    "format_term",
]


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None, src: str | None = None):
        self.pos = pos
        self.message = message
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}" + (f": {src!r}" if src is not None else ""))


# --- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str  # q, v, z, T


@dataclass(frozen=True)
class Unit:
    i: int
    j: int


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exp: int


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    left: "Node"
    right: "Node"


Node = Union[Num, Sym, Unit, Neg, Pow, BinOp]

_TOKEN = re.compile(r"\s*(?:(\d+)|([qvzTE])|(\S))")


def _tokenize(src: str) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("int", m.group(1), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()[],":
                raise ParseError(f"unexpected character {ch!r}", start, src)
            toks.append(("op", ch, start))
        pos = m.end()
    toks.append(("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str, N: int | None):
        self.src = src
        self.N = N
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value or kind == "end":
            found = "end of input" if kind == "end" else repr(text)
            raise ParseError(f"expected {value!r}, found {found}", pos, self.src)

    def fail(self, msg: str):
        raise ParseError(msg, self.peek()[2], self.src)

    def parse(self) -> Node:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        neg = False
        if self.peek()[0] == "op" and self.peek()[1] in ("-", "+"):
            neg = self.take()[1] == "-"
        node = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            kind, text, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be an integer", pos, self.src)
            node = Pow(node, sign * int(text))
        return Neg(node) if neg else node

    def _index(self) -> int:
        kind, text, pos = self.take()
        if kind != "int":
            raise ParseError("matrix index must be a positive integer", pos, self.src)
        return int(text), pos

    def atom(self) -> Node:
        kind, text, pos = self.take()
        if kind == "int":
            return Num(int(text))
        if kind == "name" and text == "E":
            self.expect("[")
            i, pi = self._index()
            self.expect(",")
            j, pj = self._index()
            self.expect("]")
            if self.N is not None:
                for x, p in ((i, pi), (j, pj)):
                    if not 1 <= x <= self.N:
                        raise ParseError(f"index out of range (E index {x} with N={self.N})", p, self.src)
            return Unit(i, j)
        if kind == "name":
            return Sym(text)
        if (kind, text) == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"expected a number, symbol, E[i,j] or '(', found {found}", pos, self.src)


def parse_expr(src: str, N: int | None = None) -> Node:
    """Parse text into an AST; with ``N`` given, matrix indices are range-checked."""
    return _Parser(src, N).parse()


# --- evaluation ---------------------------------------------------------------

Value = Union[FieldElement, Element]


def _as_element(x: Value, N: int) -> Element:
    return x if isinstance(x, Element) else identity(N).scale(x)


def _element_power(x: Element, e: int) -> Element:
    if e < 0:
        # only c * z^k T^m * I has an inverse we can write down
        terms = x._terms
        keys = {(k, m) for (k, m, _, _) in terms}
        coeffs = set(terms.values())
        if len(keys) != 1 or len(coeffs) != 1 or len(terms) != x.N or any(i != j for (_, _, i, j) in terms):
            raise ArithmeticError("negative powers are only defined for c*z^k*T^m times the identity")
        (k, m), = keys
        c, = coeffs
        # (c z^k T^m)^-1 = c^-1 T^-m z^-k = c^-1 q^{km} z^-k T^-m
        inv = c.inverse() * FieldElement.monomial(1, 2 * k * m)
        x = Element._trusted(x.N, {(-k, -m, i, i): inv for i in range(1, x.N + 1)})
        e = -e
    out = identity(x.N)
    for _ in range(e):
        out = multiply(out, x)
    return out


def _eval(node: Node, N: int) -> Value:
    if isinstance(node, Num):
        return FieldElement.coerce(node.value)
    if isinstance(node, Sym):
        if node.name == "q":
            return Q
        if node.name == "v":
            return V
        key = (1, 0) if node.name == "z" else (0, 1)
        return Element._trusted(N, {(key[0], key[1], i, i): ONE for i in range(1, N + 1)})
    if isinstance(node, Unit):
        if not (1 <= node.i <= N and 1 <= node.j <= N):
            raise ParseError(f"index out of range (E[{node.i},{node.j}] with N={N})")
        return Element._trusted(N, {(0, 0, node.i, node.j): ONE})
    if isinstance(node, Neg):
        return -_eval(node.arg, N)
    if isinstance(node, Pow):
        base = _eval(node.base, N)
        if isinstance(base, FieldElement):
            return base**node.exp
        return _element_power(base, node.exp)
    a, b = _eval(node.left, N), _eval(node.right, N)
    op = node.op
    if op == "/":
        if isinstance(b, Element):
            raise ArithmeticError("division is only defined by a scalar")
        if not b:
            raise ZeroDivisionError("division by zero")
        return a / b if isinstance(a, FieldElement) else a.scale(b.inverse())
    if isinstance(a, FieldElement) and isinstance(b, FieldElement):
        return {"+": a + b, "-": a - b, "*": a * b}[op]
    if op == "*":
        if isinstance(a, FieldElement):
            return b.scale(a)
        if isinstance(b, FieldElement):
            return a.scale(b)
        return multiply(a, b)
    a, b = _as_element(a, N), _as_element(b, N)
    return a + b if op == "+" else a - b


def eval_expr(ast: Node, N: int) -> Element:
    """Evaluate to a canonical Element; a pure scalar becomes that multiple of the identity."""
    return _as_element(_eval(ast, N), N)


def parse_element(src: str, N: int) -> Element:
    return eval_expr(parse_expr(src, N), N)


def parse_scalar(src: str) -> FieldElement:
    """Parse scalar syntax (integers, q, v, + - * / ^, parentheses)."""
    ast = parse_expr(src)
    stack = [ast]
    while stack:
        node = stack.pop()
        if isinstance(node, (Unit,)) or (isinstance(node, Sym) and node.name in "zT"):
            raise ParseError(f"operator symbol in scalar expression", None, src)
        if isinstance(node, (Neg, Pow)):
            stack.append(node.arg if isinstance(node, Neg) else node.base)
        elif isinstance(node, BinOp):
            stack += [node.left, node.right]
    return _eval(ast, 1)


# --- printing -----------------------------------------------------------------


def _coeff_text(c: FieldElement) -> Tuple[bool, str]:
    """(negative, text) where text is empty for unit coefficients."""
    if c.is_monomial():
        a, e = c.monomial_data()
        body = "" if (abs(a) == 1 and e == 0) else format_scalar(FieldElement.monomial(abs(a), e))
        return a < 0, body
    return False, f"({format_scalar(c)})"


def format_term(key, c: FieldElement) -> Tuple[bool, str]:
    k, m, i, j = key
    neg, coeff = _coeff_text(c)
    factors = [coeff] if coeff else []
    if k:
        factors.append("z" if k == 1 else f"z^{k}")
    if m:
        factors.append("T" if m == 1 else f"T^{m}")
    factors.append(f"E[{i},{j}]")
    return neg, "*".join(factors)


def format_element(a: Element) -> str:
    """Canonical text; terms in (k, m, i, j) order joined by `` + `` / `` - ``."""
    out = []
    for n, (key, c) in enumerate(a.items()):
        neg, text = format_term(key, c)
        if n == 0:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f" - {text}" if neg else f" + {text}")
    return "".join(out) or "0"
