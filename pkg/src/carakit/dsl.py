"""Text syntax for analytic maps.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | factor
    factor := base ('^' real)?
    base   := 'z' | number | 'i' | '(' expr ')' | call
    call   := 'l' ('(' expr ')')?
            | ('lrot' | 'lens' | 'rot' | 'dilate') '(' expr ')' ('(' expr ')')?
            | 'compose' '(' expr ',' expr ')' ('(' expr ')')?

``l`` alone is the half-plane map; ``l(g)`` is ``l o g``.  The parameter of
``lrot`` and ``rot`` is a real number of turns (``t`` gives the unimodular
``exp(2 pi i t)``), ``lens`` takes ``alpha`` in (0, 1) and ``dilate`` any
complex constant.  A trailing ``(g)`` after a builtin applies it to ``g``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional

from .diskmaps import UnitComplex
from .errors import CaraKitError, DomainError
from .model import (
    Add, AnalyticMap, Compose, Const, Dilation, Div, HalfPlane, Iterate, Lens,
    Mul, Power, Rotation, Sub, Var, Z, evaluate,
)

FUNCS = ("l", "lrot", "lens", "rot", "dilate", "compose")


@dataclass(frozen=True)
class ParseDiagnostic:
    offset: int
    message: str
    expected: FrozenSet[str] = field(default_factory=frozenset)

    def __str__(self):
        exp = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        return f"offset {self.offset}: {self.message}{exp}"


class ParseError(CaraKitError, ValueError):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic

    @property
    def offset(self):
        return self.diagnostic.offset


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'ident', 'op', 'eof'
    text: str
    offset: int


def tokenize(text: str) -> List[Token]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(ParseDiagnostic(pos, f"unexpected character {text[pos]!r}"))
        if m.lastgroup != "ws":
            toks.append(Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    toks.append(Token("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, message, expected=(), tok: Optional[Token] = None):
        tok = tok or self.tok
        offset = tok.offset
        if tok.kind == "eof":
            # point into the last real token so the offset stays inside the text
            offset = self.toks[-2].offset if len(self.toks) > 1 else 0
            if "end of input" not in message:
                message = f"{message} at end of input"
        raise ParseError(ParseDiagnostic(offset, message, frozenset(expected)))

    def expect(self, text):
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
        self.fail(f"expected {text!r}, found {found}", {text})

    def at(self, text):
        return self.tok.kind == "op" and self.tok.text == text

    # -- grammar ----------------------------------------------------------

    def parse(self) -> AnalyticMap:
        if self.tok.kind == "eof":
            raise ParseError(ParseDiagnostic(0, "empty expression", frozenset({"z", "number", "("})))
        node = self.expr()
        if self.tok.kind != "eof":
            self.fail(f"trailing input {self.tok.text!r}", {"+", "-", "*", "/", "^", "end of input"})
        return node

    def expr(self):
        node = self.term()
        while self.at("+") or self.at("-"):
            op_tok = self.advance()
            op = op_tok.text
            rhs = self.term()
            node = self.binary(Add if op == "+" else Sub, node, rhs, op_tok)
        return node

    def term(self):
        node = self.unary()
        while self.at("*") or self.at("/"):
            op_tok = self.advance()
            rhs = self.unary()
            node = self.binary(Mul if op_tok.text == "*" else Div, node, rhs, op_tok)
        return node

    def binary(self, cls, lhs, rhs, op_tok):
        # fold constant operands so rendered constants such as (a+b*i) read back as one Const
        node = cls(lhs, rhs)
        if isinstance(lhs, Const) and isinstance(rhs, Const):
            try:
                return Const(evaluate(node, 0j))
            except CaraKitError as exc:
                raise ParseError(ParseDiagnostic(op_tok.offset, f"constant expression: {exc}")) from exc
        return node

    def unary(self):
        if self.at("-"):
            self.advance()
            operand = self.unary()
            if isinstance(operand, Const):
                return Const(-operand.value)
            return Sub(Const(0j), operand)
        return self.factor()

    def factor(self):
        node = self.base()
        if self.at("^"):
            self.advance()
            sign = 1.0
            if self.at("-") or self.at("+"):
                sign = -1.0 if self.advance().text == "-" else 1.0
            if self.tok.kind != "num":
                self.fail("exponent must be a real literal", {"number"})
            node = Power(node, sign * float(self.advance().text))
            if self.at("^"):
                self.fail("chained exponents are not supported; parenthesise the base", {"*", "/", "+", "-"})
        return node

    def base(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Const(complex(float(tok.text)))
        if tok.kind == "ident":
            if tok.text == "z":
                self.advance()
                return Var()
            if tok.text == "i":
                self.advance()
                return Const(1j)
            if tok.text in FUNCS:
                return self.call()
            self.fail(f"unknown identifier {tok.text!r}", {"z", "i", *FUNCS})
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        self.fail(f"expected an operand, found {found}", {"z", "i", "number", "(", *FUNCS})

    def constant(self, node, name_tok, real=False):
        at = self.arg_offsets[0]
        if _mentions_z(node):
            raise ParseError(ParseDiagnostic(
                at, f"parameter of {name_tok.text} must be a constant", frozenset({"number"})))
        try:
            value = evaluate(node, 0j)
        except CaraKitError as exc:
            raise ParseError(ParseDiagnostic(at, f"bad parameter of {name_tok.text}: {exc}")) from exc
        if real:
            if abs(value.imag) > 0:
                raise ParseError(ParseDiagnostic(
                    at, f"parameter of {name_tok.text} must be real", frozenset({"number"})))
            return value.real
        return value

    def call(self):
        name_tok = self.advance()
        name = name_tok.text
        if name == "l":
            if not self.at("("):
                return HalfPlane()
            (arg,) = self._checked_args(name_tok, 1)
            return _apply(HalfPlane(), arg)
        n = 2 if name == "compose" else 1
        if not self.at("("):
            self.fail(f"{name} needs an argument list", {"("})
        args = self._checked_args(name_tok, n)
        try:
            if name == "compose":
                node = Compose(args[0], args[1])
            elif name == "lrot":
                node = HalfPlane(UnitComplex.from_turns(self.constant(args[0], name_tok, real=True)).value)
            elif name == "rot":
                node = Rotation(UnitComplex.from_turns(self.constant(args[0], name_tok, real=True)).value)
            elif name == "lens":
                node = Lens(self.constant(args[0], name_tok, real=True))
            else:
                node = Dilation(self.constant(args[0], name_tok))
        except DomainError as exc:
            raise ParseError(ParseDiagnostic(self.arg_offsets[0], str(exc))) from exc
        if self.at("("):
            (arg,) = self._checked_args(name_tok, 1)
            node = _apply(node, arg)
        return node

    def _checked_args(self, name_tok, n):
        self.expect("(")
        offsets = [self.tok.offset]
        out = [self.expr()]
        while self.at(","):
            comma = self.advance()
            offsets.append(self.tok.offset)
            if len(out) >= n:
                raise ParseError(ParseDiagnostic(
                    comma.offset, f"too many arguments to {name_tok.text} (takes {n})", frozenset({")"})))
            out.append(self.expr())
        if len(out) < n:
            self.fail(f"{name_tok.text} takes {n} arguments, got {len(out)}", {","})
        self.expect(")")
        self.arg_offsets = offsets
        return out


def _apply(fn: AnalyticMap, arg: AnalyticMap) -> AnalyticMap:
    if isinstance(arg, Var):
        return fn
    return Compose(fn, arg)


def _mentions_z(node: AnalyticMap) -> bool:
    if isinstance(node, (Var, HalfPlane, Lens, Rotation, Dilation)):
        return True
    return any(_mentions_z(c) for c in node.children)


def parse(src: str) -> AnalyticMap:
    """Parse expression text into an :class:`~carakit.model.AnalyticMap`.

    Raises :class:`ParseError` whose ``diagnostic`` carries the offset.
    """
    if not isinstance(src, str):
        raise TypeError("expression source must be a string")
    return _Parser(src).parse()


# -- formatting ---------------------------------------------------------------


def _num(x: float) -> str:
    return repr(float(x))


def _const(c: complex) -> str:
    c = complex(c)
    if c.imag == 0:
        s = _num(c.real)
        return f"({s})" if c.real < 0 or s.startswith("-") else s
    if c.real == 0:
        return f"({_num(c.imag)}*i)"
    return f"({_num(c.real)}+{_num(c.imag)}*i)"


def _turns(lam: complex) -> str:
    return _num(math.atan2(lam.imag, lam.real) / (2 * math.pi))


def _builtin(node) -> str:
    if isinstance(node, HalfPlane):
        return "l" if node.lam == 1 else f"lrot({_turns(node.lam)})"
    if isinstance(node, Lens):
        return f"lens({_num(node.alpha)})"
    if isinstance(node, Rotation):
        return f"rot({_turns(node.lam)})"
    return f"dilate({_const(node.factor)})"


_OPS = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def format_map(f: AnalyticMap) -> str:
    """Canonical fully parenthesised text; builtins are written by name."""
    if isinstance(f, Var):
        return "z"
    if isinstance(f, Const):
        return _const(f.value)
    if isinstance(f, (HalfPlane, Lens, Rotation, Dilation)):
        return f"{_builtin(f)}(z)"
    if type(f) in _OPS:
        return f"({format_map(f.left)}{_OPS[type(f)]}{format_map(f.right)})"
    if isinstance(f, Power):
        return f"({format_map(f.base)}^{_num(f.exponent)})"
    if isinstance(f, Compose):
        if isinstance(f.outer, (HalfPlane, Lens, Rotation, Dilation)):
            return f"{_builtin(f.outer)}({format_map(f.inner)})"
        return f"compose({format_map(f.outer)},{format_map(f.inner)})"
    if isinstance(f, Iterate):
        text = "z"
        inner = format_map(f.base)
        for _ in range(f.n):
            text = f"compose({inner},{text})"
        return text
    raise TypeError(f"cannot format {type(f).__name__}")


format = format_map  # noqa: A001 - public name mirrors parse/format pairing
