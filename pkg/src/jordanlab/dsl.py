"""A small language for universally quantified ring identities.

Grammar::

    identity := expr "=" expr
    expr     := term { ("+" | "-") term }
    term     := factor { ("*" | "o") factor }
    factor   := ["-"] atom
    atom     := IDENT "(" expr ")" | "q" INT "(" expr { "," expr } ")"
              | IDENT | "0" | "1" | "(" expr ")"

An identifier followed by "(" is a map symbol, a bare identifier is a ring
variable.  ``o`` is the Jordan product, ``*`` the ring product; both bind
tighter than ``+``/``-`` and associate to the left.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, JordanLabError
from .maps import RingMap, q_n
from .rings import FiniteRing

DEFAULT_EVAL_BUDGET = 10**8

_CHUNK = 1 << 20

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*(),=]))")

VARIABLE_NAMES = ("x", "y", "z", "w", "u", "v")


class ParseError(JordanLabError):
    def __init__(self, offset: int, expected, found: str):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        self.found = found
        super().__init__(f"at offset {offset}: expected {' or '.join(self.expected)}, found {found}")


class UnboundSymbol(JordanLabError):
    pass


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class Apply:
    symbol: str
    arg: object


@dataclass(frozen=True)
class Q:
    k: int
    args: tuple


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*", "o"
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class IdentityAst:
    lhs: object
    rhs: object
    free_variables: tuple[str, ...]
    map_symbols: tuple[str, ...]

    def __str__(self):
        return to_text(self)


# -- tokenizer and parser --------------------------------------------------


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "ident", "q", "o", operator char, or "eof"
    text: str
    offset: int  # byte offset


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    byte_at = _byte_offsets(text)
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            if rest.strip() == "":
                toks.append(_Tok("eof", "end of input", byte_at[len(text)]))
                return toks
            skip = len(rest) - len(rest.lstrip())
            bad = pos + skip
            raise ParseError(byte_at[bad], {"token"}, repr(text[bad]))
        start = m.start(m.lastgroup)
        s = m.group(m.lastgroup)
        if m.lastgroup == "op":
            kind = s
        elif m.lastgroup == "num":
            kind = "num"
        elif s == "o":
            kind = "o"
        elif re.fullmatch(r"q\d+", s) and text[m.end():].lstrip().startswith("("):
            kind = "q"
        else:
            kind = "ident"
        toks.append(_Tok(kind, s, byte_at[start]))
        pos = m.end()


def _byte_offsets(text: str) -> list[int]:
    out = [0]
    for ch in text:
        out.append(out[-1] + len(ch.encode("utf-8")))
    return out


_ATOM_START = {"identifier", "'0'", "'1'", "'('"}


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.variables: list[str] = []
        self.symbols: list[str] = []

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected):
        raise ParseError(self.tok.offset, expected, repr(self.tok.text) if self.tok.kind != "eof" else "end of input")

    def expect(self, kind):
        if self.tok.kind != kind:
            self.fail({repr(kind)})
        self.i += 1

    def identity(self) -> IdentityAst:
        lhs = self.expr()
        if self.tok.kind != "=":
            self.fail({"'='", "operator"})
        self.i += 1
        rhs = self.expr()
        if self.tok.kind != "eof":
            self.fail({"operator", "end of input"})
        return IdentityAst(lhs, rhs, tuple(self.variables), tuple(self.symbols))

    def expr(self):
        node = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.tok.kind
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind in ("*", "o"):
            op = self.tok.kind
            self.i += 1
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self.tok.kind == "-":
            self.i += 1
            return Neg(self.atom(allow_minus=False))
        return self.atom(allow_minus=True)

    def atom(self, allow_minus):
        tok = self.tok
        expected = _ATOM_START | ({"'-'"} if allow_minus else set())
        if tok.kind == "q":
            k = int(tok.text[1:])
            self.i += 1
            self.expect("(")
            args = [self.expr()]
            while self.tok.kind == ",":
                self.i += 1
                args.append(self.expr())
            if self.tok.kind != ")":
                self.fail({"','", "')'"})
            if k < 1 or len(args) != k:
                raise ParseError(tok.offset, {f"q{k} with {k} arguments"}, f"{len(args)} arguments")
            self.i += 1
            return Q(k, tuple(args))
        if tok.kind == "ident":
            self.i += 1
            if self.tok.kind == "(":
                self.i += 1
                arg = self.expr()
                self.expect(")")
                if tok.text not in self.symbols:
                    self.symbols.append(tok.text)
                return Apply(tok.text, arg)
            if tok.text not in self.variables:
                self.variables.append(tok.text)
            return Var(tok.text)
        if tok.kind == "num":
            if tok.text not in ("0", "1"):
                self.fail(expected)
            self.i += 1
            return Const(int(tok.text))
        if tok.kind == "(":
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        self.fail(expected)


def parse_identity(text: str) -> IdentityAst:
    return _Parser(text).identity()


# -- printing --------------------------------------------------------------

_LEVEL = {"+": 1, "-": 1, "*": 2, "o": 2}


def _show(node, need: int) -> str:
    if isinstance(node, BinOp):
        lvl = _LEVEL[node.op]
        sep = " o " if node.op == "o" else f" {node.op} "
        s = _show(node.left, lvl) + sep + _show(node.right, lvl + 1)
    elif isinstance(node, Neg):
        lvl = 3
        s = "-" + _show(node.arg, 4)
    else:
        lvl = 4
        if isinstance(node, Var):
            s = node.name
        elif isinstance(node, Const):
            s = str(node.value)
        elif isinstance(node, Apply):
            s = f"{node.symbol}({_show(node.arg, 0)})"
        elif isinstance(node, Q):
            s = f"q{node.k}(" + ", ".join(_show(a, 0) for a in node.args) + ")"
        else:
            raise TypeError(f"not an expression node: {node!r}")
    return f"({s})" if lvl < need else s


def to_text(ast: IdentityAst) -> str:
    return f"{_show(ast.lhs, 0)} = {_show(ast.rhs, 0)}"


# -- builtin identities ----------------------------------------------------


def builtin_identity(name: str, n: int) -> IdentityAst:
    """Expanded text of the Jordan n-derivation, generalized Jordan n-derivation
    or Jordan n-centralizer law, parsed."""
    if not 2 <= n <= len(VARIABLE_NAMES):
        raise ValueError(f"n must be in [2, {len(VARIABLE_NAMES)}], got {n}")
    xs = VARIABLE_NAMES[:n]

    def chain(args):
        return " o ".join(args)

    def slot(sym, i):
        return chain([f"{sym}({x})" if j == i else x for j, x in enumerate(xs)])

    if name == "jordan_n_derivation":
        text = f"D({chain(xs)}) = " + " + ".join(slot("D", i) for i in range(n))
    elif name == "generalized_jordan_n_derivation":
        text = f"F({chain(xs)}) = " + " + ".join([slot("F", 0)] + [slot("D", i) for i in range(1, n)])
    elif name == "jordan_n_centralizer":
        text = f"F({chain(xs)}) = {slot('F', 0)}"
    else:
        raise ValueError(f"unknown builtin identity {name!r}")
    return parse_identity(text)


# -- evaluation ------------------------------------------------------------


@dataclass(frozen=True)
class EvalResult:
    ok: bool
    counterexample: dict[str, int] | None = None

    def __bool__(self):
        return self.ok


def _evaluate(node, ring: FiniteRing, env: dict, bindings: dict):
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Const):
        return ring.one if node.value else 0
    if isinstance(node, Apply):
        return bindings[node.symbol].images[_evaluate(node.arg, ring, env, bindings)]
    if isinstance(node, Q):
        return q_n(ring, [_evaluate(a, ring, env, bindings) for a in node.args])
    if isinstance(node, Neg):
        return ring.neg_table[_evaluate(node.arg, ring, env, bindings)]
    a = _evaluate(node.left, ring, env, bindings)
    b = _evaluate(node.right, ring, env, bindings)
    table = {"+": ring.add_table, "-": ring.sub_table, "*": ring.mul_table, "o": ring.jordan_table}[node.op]
    return table[a, b]


def eval_identity(
    ring: FiniteRing, ast: IdentityAst, bindings: dict[str, RingMap], budget: int = DEFAULT_EVAL_BUDGET
) -> EvalResult:
    """Decide lhs == rhs for every assignment of ring elements to the variables.

    The counterexample is the lexicographically smallest failing assignment,
    ordered by first appearance of the variables.
    """
    missing = [s for s in ast.map_symbols if s not in bindings]
    if missing:
        raise UnboundSymbol(f"unbound map symbol(s): {', '.join(missing)}")
    for s in ast.map_symbols:
        if bindings[s].ring.order != ring.order:
            raise ValueError(f"map {s} lives on a ring of a different order")
    N = ring.order
    vs = ast.free_variables
    v = len(vs)
    required = N**v
    if required > budget:
        raise BudgetExceeded(required, budget)

    inner = 0
    while inner < v and N ** (inner + 1) <= _CHUNK:
        inner += 1
    lead = v - inner
    shape = (N,) * inner
    grids = [np.arange(N).reshape((1,) * j + (N,) + (1,) * (inner - j - 1)) for j in range(inner)]
    for prefix in itertools.product(range(N), repeat=lead):
        env = dict(zip(vs[:lead], prefix))
        env.update(zip(vs[lead:], grids))
        lhs = _evaluate(ast.lhs, ring, env, bindings)
        rhs = _evaluate(ast.rhs, ring, env, bindings)
        bad = np.broadcast_to(np.asarray(lhs) != np.asarray(rhs), shape)
        hits = np.flatnonzero(bad.ravel())
        if hits.size:
            rest = np.unravel_index(int(hits[0]), shape) if inner else ()
            values = tuple(prefix) + tuple(int(r) for r in rest)
            return EvalResult(False, dict(zip(vs, values)))
    return EvalResult(True)


def read_identity_file(text: str) -> list[tuple[int, str]]:
    """Non-empty, non-comment lines as ``(line number, text)``."""
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            out.append((lineno, body))
    return out
