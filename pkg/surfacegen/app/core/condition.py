"""Rule condition language.

A closed boolean expression language evaluated against a DialogContext:

    expr    := or
    or      := and ('or' and)*
    and     := unary ('and' unary)*
    unary   := 'not' unary | primary
    primary := 'true' | 'false' | '(' expr ')' | pred
    pred    := has(a) | mandatory(a) | optional(a) | new(a) | old(a)
             | eq(a, "s") | gt(a, n) | lt(a, n)

Precedence is not > and > or, binary operators are left-associative.
"""
import re
from dataclasses import dataclass
from decimal import Decimal

from app.core.dialog import Membership, Novelty
from app.core.exceptions import (
    ConditionEvaluationError,
    ConditionSyntaxError,
    UnknownPredicateError,
)

UNARY_PREDICATES = frozenset({"has", "mandatory", "optional", "new", "old"})
STRING_PREDICATES = frozenset({"eq"})
NUMERIC_PREDICATES = frozenset({"gt", "lt"})
PREDICATES = UNARY_PREDICATES | STRING_PREDICATES | NUMERIC_PREDICATES
KEYWORDS = frozenset({"true", "false", "not", "and", "or"})

_NUMBER = re.compile(r"-?\d+(?:\.\d+)?")
_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<comma>,)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<number>-?\d+(?:\.\d+)?(?![\w-]))
  | (?P<name>\$?[A-Za-z_][\w-]*)
""", re.VERBOSE)


class ConditionExpr:
    """Base class of the immutable expression nodes."""

    def evaluate(self, context):
        raise NotImplementedError

    def attributes(self):
        return frozenset()


@dataclass(frozen=True)
class Const(ConditionExpr):
    value: bool

    def evaluate(self, context):
        return self.value


@dataclass(frozen=True)
class Predicate(ConditionExpr):
    name: str
    attribute: str
    argument: object = None

    def evaluate(self, context):
        found = context.lookup(self.attribute)
        if found is None:
            return False
        if self.name == "has":
            return True
        if self.name == "mandatory":
            return found.membership is Membership.MANDATORY
        if self.name == "optional":
            return found.membership is Membership.OPTIONAL
        if self.name == "new":
            return found.novelty is Novelty.NEW
        if self.name == "old":
            return found.novelty is Novelty.OLD
        if self.name == "eq":
            return found.value == self.argument
        value = found.value.strip()
        if not _NUMBER.fullmatch(value):
            raise ConditionEvaluationError(
                f"{self.name}({self.attribute}, ...) needs a number, got {found.value!r}")
        if self.name == "gt":
            return Decimal(value) > self.argument
        return Decimal(value) < self.argument

    def attributes(self):
        return frozenset({self.attribute})


@dataclass(frozen=True)
class Not(ConditionExpr):
    operand: ConditionExpr

    def evaluate(self, context):
        return not self.operand.evaluate(context)

    def attributes(self):
        return self.operand.attributes()


@dataclass(frozen=True)
class And(ConditionExpr):
    left: ConditionExpr
    right: ConditionExpr

    def evaluate(self, context):
        return self.left.evaluate(context) and self.right.evaluate(context)

    def attributes(self):
        return self.left.attributes() | self.right.attributes()


@dataclass(frozen=True)
class Or(ConditionExpr):
    left: ConditionExpr
    right: ConditionExpr

    def evaluate(self, context):
        return self.left.evaluate(context) or self.right.evaluate(context)

    def attributes(self):
        return self.left.attributes() | self.right.attributes()


TRUE = Const(True)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int


def _tokenize(text):
    tokens, position = [], 0
    while position < len(text):
        match = _TOKEN.match(text, position)
        if not match:
            raise ConditionSyntaxError(f"unexpected character {text[position]!r}",
                                       _byte_offset(text, position))
        kind = match.lastgroup
        if kind != "ws":
            word = match.group()
            if kind == "name" and word in KEYWORDS:
                kind = word
            tokens.append(_Token(kind, word, position))
        position = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


def _byte_offset(text, position):
    return len(text[:position].encode("utf-8"))


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self):
        return self.tokens[self.index]

    def fail(self, expected, token=None):
        token = token or self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        raise ConditionSyntaxError(f"unexpected {found}", _byte_offset(self.text, token.offset), expected)

    def expect(self, kind):
        if self.current.kind != kind:
            self.fail({kind})
        token = self.current
        self.index += 1
        return token

    def parse(self):
        expr = self.parse_or()
        if self.current.kind != "end":
            self.fail({"and", "or", "end"})
        return expr

    def parse_or(self):
        expr = self.parse_and()
        while self.current.kind == "or":
            self.index += 1
            expr = Or(expr, self.parse_and())
        return expr

    def parse_and(self):
        expr = self.parse_unary()
        while self.current.kind == "and":
            self.index += 1
            expr = And(expr, self.parse_unary())
        return expr

    def parse_unary(self):
        if self.current.kind == "not":
            self.index += 1
            return Not(self.parse_unary())
        return self.parse_primary()

    def parse_primary(self):
        token = self.current
        if token.kind in ("true", "false"):
            self.index += 1
            return Const(token.kind == "true")
        if token.kind == "lparen":
            self.index += 1
            expr = self.parse_or()
            self.expect("rparen")
            return expr
        if token.kind == "name":
            return self.parse_predicate()
        self.fail({"true", "false", "not", "lparen", "name"})

    def parse_predicate(self):
        token = self.expect("name")
        name = token.text
        if name not in PREDICATES:
            raise UnknownPredicateError(f"unknown predicate {name!r}",
                                        _byte_offset(self.text, token.offset), PREDICATES)
        self.expect("lparen")
        attribute = self.expect("name").text.lstrip("$")
        argument = None
        if name in STRING_PREDICATES:
            self.expect("comma")
            argument = re.sub(r'\\(.)', r'\1', self.expect("string").text[1:-1])
        elif name in NUMERIC_PREDICATES:
            self.expect("comma")
            argument = Decimal(self.expect("number").text)
        self.expect("rparen")
        return Predicate(name, attribute, argument)


def parse_condition(text):
    """Parse condition text into an expression tree."""
    if not text or not text.strip():
        raise ConditionSyntaxError("empty condition", 0, {"true", "false", "not", "lparen", "name"})
    return _Parser(text).parse()


def eval_condition(expr, context):
    return expr.evaluate(context)


def format_condition(expr):
    """Canonical text for an expression; binary nodes are always parenthesized."""
    if isinstance(expr, Const):
        return "true" if expr.value else "false"
    if isinstance(expr, Predicate):
        if expr.name in STRING_PREDICATES:
            escaped = expr.argument.replace("\\", "\\\\").replace('"', '\\"')
            return f'{expr.name}({expr.attribute}, "{escaped}")'
        if expr.name in NUMERIC_PREDICATES:
            return f"{expr.name}({expr.attribute}, {format(expr.argument, 'f')})"
        return f"{expr.name}({expr.attribute})"
    if isinstance(expr, Not):
        return f"not {format_condition(expr.operand)}"
    if isinstance(expr, And):
        return f"({format_condition(expr.left)} and {format_condition(expr.right)})"
    return f"({format_condition(expr.left)} or {format_condition(expr.right)})"
