"""Surface syntax for Sweedler-notation expressions: tokens, AST, parser, printer.

ASCII conventions::

    t(1), f(2), a(0)      Sweedler legs (coaction legs start at 0)
    x .> w, w <. x        left and right hit actions
    a * b, a b            product (juxtaposition needs whitespace)
    f(t), delta^-1(t)     pairing, written as postfix application
    x @ y                 tensor positions of the output
    3/2 * t               rational coefficients

A postfix ``(...)`` directly after a name, a leg or a closing parenthesis is
an application; whether it pairs or multiplies is decided by the types.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class DslSyntaxError(ValueError):
    def __init__(self, msg: str, line: int = 1, col: int = 1):
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str
    leg: int | None = None


@dataclass(frozen=True)
class Const:
    """sigma, delta, unit, Psihat, Phihat, Psi, Phi with an optional power and leg."""
    name: str
    power: int = 1
    leg: int | None = None


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple


@dataclass(frozen=True)
class Apply:
    head: "Node"
    arg: "Node"


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, Node)


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Hit:
    left: tuple   # actors applied with .>, outermost first
    target: "Node"
    right: tuple  # actors applied with <., innermost first


@dataclass(frozen=True)
class Tensor:
    parts: tuple


Node = Union[Num, Var, Const, Call, Apply, Mul, Sum, Neg, Hit, Tensor]

FUNCTIONS = {
    "S": 1, "Sinv": 1, "S2": 1, "Sinv2": 1,
    "phi": 1, "psi": 1, "phihat": 1, "psihat": 1, "epsilon": 1,
    "Fl": 1, "Fr": 1, "Gl": 1, "Gr": 1,
    "Flhat": 1, "Frhat": 1, "Glhat": 1, "Grhat": 1,
    "Fhat": 1, "F": 1,
    "m": 2, "act": 2, "ev": 2,
}
CONSTANTS = {"sigma", "delta", "unit", "Psihat", "Phihat", "Psi", "Phi"}
POWERED = {"sigma", "delta"}


# ---------------------------------------------------------------------------
# lexer

_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\.>|<\.|==|\^-|[()*+\-/@,^])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    col: int
    space_before: bool


def tokenize(src: str, line: int = 1) -> list[Token]:
    out = []
    pos = 0
    space = False
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m:
            raise DslSyntaxError(f"unexpected character {src[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind == "ws":
            space = True
        else:
            out.append(Token(kind, m.group(), pos + 1, space))
            space = False
        pos = m.end()
    out.append(Token("eof", "", len(src) + 1, space))
    return out


# ---------------------------------------------------------------------------
# parser

class Parser:
    def __init__(self, src: str, line: int = 1):
        self.src = src
        self.line = line
        self.toks = tokenize(src, line)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise DslSyntaxError(msg, self.line, tok.col)

    def take(self, text: str | None = None, kind: str | None = None) -> Token:
        t = self.tok
        if (text is not None and t.text != text) or (kind is not None and t.kind != kind):
            want = text if text is not None else kind
            self.error(f"expected {want!r}, found {t.text or 'end of input'!r}")
        self.i += 1
        return t

    def at(self, *texts: str) -> bool:
        return self.tok.kind in ("op",) and self.tok.text in texts

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")
        return node

    # expr := tterm (('+'|'-') tterm)*
    def expr(self) -> Node:
        terms = []
        sign = 1
        if self.at("-"):
            self.take("-")
            sign = -1
        terms.append((sign, self.tensor_term()))
        while self.at("+", "-"):
            sign = 1 if self.take().text == "+" else -1
            terms.append((sign, self.tensor_term()))
        if len(terms) == 1:
            return terms[0][1] if terms[0][0] == 1 else Neg(terms[0][1])
        return Sum(tuple(terms))

    # tterm := term ('@' term)*
    def tensor_term(self) -> Node:
        parts = [self.term()]
        while self.at("@"):
            self.take("@")
            parts.append(self.term())
        return parts[0] if len(parts) == 1 else Tensor(tuple(parts))

    def starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    # term := factor (['*'] factor)*
    def term(self) -> Node:
        factors = [self.hit()]
        while True:
            if self.at("*"):
                self.take("*")
                factors.append(self.hit())
            elif self.starts_factor():
                factors.append(self.hit())
            else:
                break
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    # hit chain: u .> u .> X <. v <. v
    def hit(self) -> Node:
        items = [self.unary()]
        ops = []
        while self.at(".>", "<."):
            ops.append(self.take().text)
            items.append(self.unary())
        if not ops:
            return items[0]
        k = 0
        while k < len(ops) and ops[k] == ".>":
            k += 1
        if any(op == ".>" for op in ops[k:]):
            self.error("all '.>' must precede all '<.' in a hit chain")
        return Hit(tuple(items[:k]), items[k], tuple(items[k + 1:]))

    def unary(self) -> Node:
        if self.at("-"):
            self.take("-")
            return Neg(self.unary())
        return self.postfix()

    def postfix(self) -> Node:
        node = self.primary()
        while self.at("(") and not self.tok.space_before:
            self.take("(")
            if self.tok.kind == "num" and self.toks[self.i + 1].text == ")":
                leg = int(self.take(kind="num").text)
                self.take(")")
                if isinstance(node, Var) and node.leg is None:
                    node = Var(node.name, leg)
                elif isinstance(node, Const) and node.leg is None and node.name in ("Psihat", "Phihat", "Psi", "Phi"):
                    node = Const(node.name, node.power, leg)
                else:
                    self.error("Sweedler leg on something that is not a variable")
            else:
                arg = self.expr()
                self.take(")")
                node = Apply(node, arg)
        return node

    def primary(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.take()
            value = Fraction(int(t.text))
            if self.at("/"):
                self.take("/")
                value /= int(self.take(kind="num").text)
            return Num(value)
        if t.kind == "op" and t.text == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        if t.kind == "name":
            self.take()
            name = t.text
            if name in FUNCTIONS and self.at("(") and not self.tok.space_before:
                self.take("(")
                args = [self.expr()]
                while self.at(","):
                    self.take(",")
                    args.append(self.expr())
                self.take(")")
                if len(args) != FUNCTIONS[name]:
                    self.error(f"{name} takes {FUNCTIONS[name]} argument(s)", t)
                return Call(name, tuple(args))
            if name in ("S", "Sinv") and self.at("^", "^-"):
                # S^-1(x), S^2(x), S^-2(x)
                power = self.power()
                fn = {1: "S", -1: "Sinv", 2: "S2", -2: "Sinv2"}.get(power if name == "S" else -power)
                if fn is None:
                    self.error("only powers -2..2 of the antipode are supported", t)
                self.take("(")
                arg = self.expr()
                self.take(")")
                return Call(fn, (arg,))
            if name in CONSTANTS:
                power = 1
                if self.at("^", "^-"):
                    if name not in POWERED:
                        self.error(f"{name} cannot be raised to a power", t)
                    power = self.power()
                return Const(name, power)
            if name in FUNCTIONS:
                self.error(f"{name} needs an argument list", t)
            return Var(name)
        self.error(f"unexpected {t.text or 'end of input'!r}")

    def power(self) -> int:
        t = self.take()
        sign = -1 if t.text == "^-" else 1
        if t.text == "^" and self.at("-"):
            self.take("-")
            sign = -1
        return sign * int(self.take(kind="num").text)


def parse(src: str, line: int = 1) -> Node:
    return Parser(src, line).parse()


# ---------------------------------------------------------------------------
# printer

def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_source(node: Node) -> str:
    """Canonical source text; ``parse(to_source(e)) == e``."""
    return _print(node, 0)


# precedence: 0 sum, 1 tensor, 2 product, 3 hit, 4 unary, 5 postfix
def _print(node: Node, ctx: int) -> str:
    if isinstance(node, Num):
        s = _fmt_frac(node.value)
        return s
    if isinstance(node, Var):
        return node.name if node.leg is None else f"{node.name}({node.leg})"
    if isinstance(node, Const):
        s = node.name
        if node.power != 1:
            s += f"^{node.power}"
        if node.leg is not None:
            s += f"({node.leg})"
        return s
    if isinstance(node, Call):
        return f"{node.fn}(" + ", ".join(_print(a, 0) for a in node.args) + ")"
    if isinstance(node, Apply):
        return _print(node.head, 5) + "(" + _print(node.arg, 0) + ")"
    if isinstance(node, Mul):
        s = " * ".join(_print(f, 3) for f in node.factors)
        return f"({s})" if ctx > 2 else s
    if isinstance(node, Tensor):
        s = " @ ".join(_print(p, 2) for p in node.parts)
        return f"({s})" if ctx > 1 else s
    if isinstance(node, Sum):
        parts = []
        for k, (sign, t) in enumerate(node.terms):
            body = _print(t, 1)
            if k == 0:
                parts.append(("-" if sign < 0 else "") + body)
            else:
                parts.append(("- " if sign < 0 else "+ ") + body)
        s = " ".join(parts)
        return f"({s})" if ctx > 0 else s
    if isinstance(node, Neg):
        # a leading minus is read as a sum sign, so only bare at top level
        s = "-" + _print(node.arg, 4)
        return f"({s})" if ctx > 0 else s
    if isinstance(node, Hit):
        parts = [_print(a, 4) + " .> " for a in node.left]
        s = "".join(parts) + _print(node.target, 4) + "".join(" <. " + _print(b, 4) for b in node.right)
        return f"({s})" if ctx > 3 else s
    raise TypeError(f"not an expression node: {node!r}")


def parse_identity_line(text: str, line: int = 1) -> tuple[Node, Node] | None:
    """Parse ``LHS == RHS``; blank lines and ``#`` comments give None."""
    body = text.split("#", 1)[0].strip()
    if not body:
        return None
    if body.count("==") != 1:
        raise DslSyntaxError("identity lines need exactly one '=='", line, 1)
    lhs, rhs = body.split("==")
    return parse(lhs, line), parse(rhs, line)
