"""A small expression language over Cl(3,0).

Grammar, loosest binding first (all binary operators left-associative)::

    sum      := term (('+' | '-') term)*
    term     := '-' term | dot
    dot      := wedgex ('|' wedgex)*
    wedgex   := product ('^' product)*
    product  := postfix ('*'? postfix)*        juxtaposition is the geometric product
    postfix  := primary ('†' | "'")*           spatial inversion
    primary  := NUMBER | IDENT | '(' sum ')' | '<' sum '>' GRADE

``GRADE`` is ``_0`` .. ``_3``.  ``e1 e2 e3 i`` are the basis symbols; a run of
basis vectors written without spaces (``e1e2``) lexes as separate factors.
Any other identifier is a free variable.  Numbers have no exponent notation,
so ``2e1`` reads as ``2 e1``.  Positions are 1-based character offsets.
"""

from __future__ import annotations

import random
import re
from decimal import Decimal
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

from . import cliffor as ga
from .cliffor import Cliffor
from .errors import DslSyntaxError, GradeOutOfRange, NonFiniteResult, UnboundVariable

__all__ = [
    "Token",
    "tokenize",
    "Num",
    "Sym",
    "Var",
    "Neg",
    "BinOp",
    "Dagger",
    "Grade",
    "Group",
    "Expr",
    "parse",
    "evaluate",
    "to_source",
    "free_variables",
    "IdentityResult",
    "check_identity",
    "CorpusLine",
    "CorpusReport",
    "run_corpus",
    "default_corpus_path",
    "ID_TOL",
]

ID_TOL = 1e-9

BASIS = {"e1": ga.E1, "e2": ga.E2, "e3": ga.E3, "i": ga.I}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+\.?\d*|\.\d+)
  | (?P<grade>_\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9]*)
  | (?P<dagger>[†'])
  | (?P<grouping>[()<>])
  | (?P<operator>[-+*^|])
    """,
    re.VERBOSE,
)
_BASIS_RUN = re.compile(r"(?:e[123])+\Z")


@dataclass(frozen=True)
class Token:
    kind: str  # number | ident | operator | grouping | grade | dagger | end
    lexeme: str
    position: int  # 1-based


def tokenize(source: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise DslSyntaxError(f"unexpected character {source[pos]!r}", pos + 1)
        kind = m.lastgroup
        text = m.group()
        if kind == "ident" and len(text) > 2 and _BASIS_RUN.match(text):
            for k in range(0, len(text), 2):
                tokens.append(Token("ident", text[k : k + 2], pos + k + 1))
        elif kind != "ws":
            tokens.append(Token(kind, text, pos + 1))
        pos = m.end()
    tokens.append(Token("end", "", len(source) + 1))
    return tokens


# -- syntax tree -------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Sym:
    name: str  # e1 | e2 | e3 | i


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * ^ |
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Dagger:
    operand: "Expr"


@dataclass(frozen=True)
class Grade:
    operand: "Expr"
    grade: int


@dataclass(frozen=True)
class Group:
    inner: "Expr"


Expr = Union[Num, Sym, Var, Neg, BinOp, Dagger, Grade, Group]

_PRIMARY_START = {"number", "ident"}
_PRIMARY_OPEN = {"(", "<"}
_PRIMARY_EXPECTED = ["number", "identifier", "(", "<"]
# tokens that may extend a complete operand
_CONTINUATIONS = ["+", "-", "|", "^", "*", "'", "†"] + _PRIMARY_EXPECTED


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def fail(self, expected: Iterable[str]):
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.lexeme)
        raise DslSyntaxError(f"unexpected {what}", t.position, expected)

    def expect(self, lexeme: str) -> Token:
        if self.tok.lexeme != lexeme or self.tok.kind == "end":
            self.fail([lexeme] + _CONTINUATIONS)
        return self.advance()

    def starts_primary(self) -> bool:
        t = self.tok
        return t.kind in _PRIMARY_START or (t.kind == "grouping" and t.lexeme in _PRIMARY_OPEN)

    def parse(self) -> Expr:
        expr = self.sum()
        if self.tok.kind != "end":
            self.fail(["end of input"] + _CONTINUATIONS)
        return expr

    def sum(self) -> Expr:
        left = self.term()
        while self.tok.kind == "operator" and self.tok.lexeme in "+-":
            op = self.advance().lexeme
            left = BinOp(op, left, self.term())
        return left

    def term(self) -> Expr:
        if self.tok.kind == "operator" and self.tok.lexeme == "-":
            self.advance()
            return Neg(self.term())
        if not self.starts_primary():
            self.fail(["-"] + _PRIMARY_EXPECTED)
        return self.dot()

    def dot(self) -> Expr:
        left = self.wedge()
        while self.tok.kind == "operator" and self.tok.lexeme == "|":
            self.advance()
            left = BinOp("|", left, self.wedge())
        return left

    def wedge(self) -> Expr:
        left = self.product()
        while self.tok.kind == "operator" and self.tok.lexeme == "^":
            self.advance()
            left = BinOp("^", left, self.product())
        return left

    def product(self) -> Expr:
        left = self.postfix()
        while True:
            if self.tok.kind == "operator" and self.tok.lexeme == "*":
                self.advance()
            elif not self.starts_primary():
                return left
            left = BinOp("*", left, self.postfix())

    def postfix(self) -> Expr:
        node = self.primary()
        while self.tok.kind == "dagger":
            self.advance()
            node = Dagger(node)
        return node

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "number":
            self.advance()
            return Num(float(t.lexeme))
        if t.kind == "ident":
            self.advance()
            return Sym(t.lexeme) if t.lexeme in BASIS else Var(t.lexeme)
        if t.kind == "grouping" and t.lexeme == "(":
            self.advance()
            inner = self.sum()
            self.expect(")")
            return Group(inner)
        if t.kind == "grouping" and t.lexeme == "<":
            self.advance()
            inner = self.sum()
            self.expect(">")
            g = self.tok
            if g.kind != "grade":
                self.fail(["_0", "_1", "_2", "_3"])
            self.advance()
            value = int(g.lexeme[1:])
            if value > 3:
                raise GradeOutOfRange(
                    f"grade {value} out of range 0..3 at position {g.position}", position=g.position, grade=value
                )
            return Grade(inner, value)
        self.fail(_PRIMARY_EXPECTED)


def parse(source: str) -> Expr:
    return _Parser(source).parse()


# -- evaluation --------------------------------------------------------------

Value = Union[Cliffor, float]


def evaluate(expr: Expr, env: Optional[Mapping[str, Value]] = None) -> Cliffor:
    """Evaluate ``expr``; free variables are looked up in ``env``."""
    out = _eval(expr, env or {})
    if not all(map(_finite, out.components())):
        raise NonFiniteResult(f"non-finite result {out}", components=list(out.components()))
    return out


def _finite(x: float) -> bool:
    return x == x and abs(x) != float("inf")


def _eval(e: Expr, env) -> Cliffor:
    if isinstance(e, Num):
        return Cliffor.scalar(e.value)
    if isinstance(e, Sym):
        return BASIS[e.name]
    if isinstance(e, Var):
        try:
            v = env[e.name]
        except KeyError:
            raise UnboundVariable(f"unbound variable {e.name!r}", name=e.name) from None
        return v if isinstance(v, Cliffor) else Cliffor.scalar(v)
    if isinstance(e, Group):
        return _eval(e.inner, env)
    if isinstance(e, Neg):
        return -_eval(e.operand, env)
    if isinstance(e, Dagger):
        return ga.dagger(_eval(e.operand, env))
    if isinstance(e, Grade):
        return ga.grade(_eval(e.operand, env), e.grade)
    if isinstance(e, BinOp):
        a = _eval(e.left, env)
        b = _eval(e.right, env)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return ga.geometric_product(a, b)
        if e.op == "^":
            return ga.outer(a, b)
        if e.op == "|":
            return ga.inner(a, b)
    raise TypeError(f"not an expression node: {e!r}")


def free_variables(expr: Expr) -> set[str]:
    if isinstance(expr, Var):
        return {expr.name}
    if isinstance(expr, (Num, Sym)):
        return set()
    if isinstance(expr, BinOp):
        return free_variables(expr.left) | free_variables(expr.right)
    if isinstance(expr, Group):
        return free_variables(expr.inner)
    return free_variables(expr.operand)


# -- printing ----------------------------------------------------------------

# binding strength; higher binds tighter
_PREC = {"+": 1, "-": 1, "neg": 2, "|": 3, "^": 4, "*": 5, "postfix": 6, "atom": 7}


def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return _PREC["neg"]
    if isinstance(e, Dagger):
        return _PREC["postfix"]
    return _PREC["atom"]


def _num(x: float) -> str:
    text = ga.format_number(x)
    if "e" in text or "E" in text:
        # no exponent syntax in the language
        text = format(Decimal(repr(x)), "f")
    return text


def to_source(e: Expr) -> str:
    """Render ``e`` as source that parses back to the same tree.

    Parentheses are inserted only where precedence requires; ``Group`` nodes
    always print their own parentheses.
    """
    if isinstance(e, Num):
        if e.value < 0:
            return f"({_num(e.value)})"
        return _num(e.value)
    if isinstance(e, (Sym, Var)):
        return e.name
    if isinstance(e, Group):
        return f"({to_source(e.inner)})"
    if isinstance(e, Grade):
        return f"<{to_source(e.operand)}>_{e.grade}"
    if isinstance(e, Dagger):
        return _wrap(e.operand, _PREC["postfix"]) + "'"
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, _PREC["neg"])
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left = _wrap(e.left, p)
        # left-associative: an equal-precedence right operand needs parentheses
        right = _wrap(e.right, p + 1)
        if e.op == "*":
            return f"{left} {right}"
        return f"{left} {e.op} {right}"
    raise TypeError(f"not an expression node: {e!r}")


def _wrap(e: Expr, min_prec: int) -> str:
    text = to_source(e)
    return text if _prec(e) >= min_prec else f"({text})"


# -- identity checking -------------------------------------------------------


@dataclass(frozen=True)
class IdentityResult:
    ok: bool
    max_difference: float
    counterexample: Optional[dict] = None


def _sample(rng: random.Random, kind: str) -> Value:
    if kind == "vector":
        return Cliffor(v=tuple(rng.uniform(-2, 2) for _ in range(3)))
    if kind == "cliffor":
        return Cliffor.from_components(rng.uniform(-2, 2) for _ in range(8))
    return rng.uniform(-2, 2)


def check_identity(
    lhs: str,
    rhs: str,
    trials: int = 100,
    *,
    vectors: Iterable[str] = (),
    cliffors: Iterable[str] = (),
    seed: int = 0,
    tol: float = ID_TOL,
) -> IdentityResult:
    """Compare two expressions on random assignments of their free variables.

    Free variables are scalars unless listed in ``vectors`` (random grade-1
    values) or ``cliffors`` (random full multivectors).  Components are
    drawn uniformly from [-2, 2].
    """
    left, right = parse(lhs), parse(rhs)
    vectors, cliffors = set(vectors), set(cliffors)
    names = sorted(free_variables(left) | free_variables(right))
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(trials):
        env = {}
        for n in names:
            env[n] = _sample(rng, "vector" if n in vectors else "cliffor" if n in cliffors else "scalar")
        a, b = evaluate(left, env), evaluate(right, env)
        diff = max(abs(x - y) for x, y in zip(a.components(), b.components()))
        worst = max(worst, diff)
        if diff > tol:
            shown = {k: (list(v.components()) if isinstance(v, Cliffor) else v) for k, v in env.items()}
            return IdentityResult(False, diff, shown)
    return IdentityResult(True, worst)


# -- corpus files ------------------------------------------------------------


@dataclass(frozen=True)
class CorpusLine:
    lineno: int
    lhs: str
    rhs: str
    result: Optional[IdentityResult]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and self.result is not None and self.result.ok


@dataclass(frozen=True)
class CorpusReport:
    lines: tuple[CorpusLine, ...]

    @property
    def ok(self) -> bool:
        return all(line.ok for line in self.lines)

    @property
    def failures(self) -> list[CorpusLine]:
        return [line for line in self.lines if not line.ok]


def default_corpus_path() -> Path:
    return Path(__file__).with_name("data") / "identities.txt"


def run_corpus(text: str, trials: int = 100, seed: int = 0) -> CorpusReport:
    """Check every ``LHS == RHS`` line of a corpus.

    ``#`` starts a comment.  ``@vectors a b`` and ``@cliffors A B`` declare
    the kind of the named free variables for all following lines.
    """
    vectors: set[str] = set()
    cliffors: set[str] = set()
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("@"):
            head, *names = line.split()
            if head == "@vectors":
                vectors.update(names)
                cliffors.difference_update(names)
            elif head == "@cliffors":
                cliffors.update(names)
                vectors.difference_update(names)
            else:
                out.append(CorpusLine(lineno, line, "", None, f"unknown directive {head}"))
            continue
        if line.count("==") != 1:
            out.append(CorpusLine(lineno, line, "", None, "expected exactly one '=='"))
            continue
        lhs, rhs = (part.strip() for part in line.split("=="))
        try:
            res = check_identity(lhs, rhs, trials, vectors=vectors, cliffors=cliffors, seed=seed + lineno)
        except Exception as exc:  # report and keep going
            out.append(CorpusLine(lineno, lhs, rhs, None, f"{type(exc).__name__}: {exc}"))
            continue
        out.append(CorpusLine(lineno, lhs, rhs, res))
    return CorpusReport(tuple(out))
