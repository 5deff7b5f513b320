"""Grammar: parsing, indexing and validation of dependency rules.

File format (UTF-8, line oriented):

    # comment
    root <token>
    rule <parent> <dir> <child> [<child>...] [:: <condition>]
    rewrite <token> -> <token> [:: <condition>]

<dir> is one of + - +& -& +| -| (right/left, plain/and/or).
"""
import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum

from pyrsistent import pmap, PMap

from app.core.condition import TRUE, ConditionExpr, parse_condition
from app.core.exceptions import ConditionEvaluationError, ConditionSyntaxError, Diagnostic, GrammarError
from app.core.realizer import RewriteDirective, is_attribute

logger = logging.getLogger(__name__)

CONDITION_SEPARATOR = "::"


class Direction(Enum):
    LEFT = "-"
    RIGHT = "+"


class ListMode(Enum):
    PLAIN = ""
    AND = "&"
    OR = "|"


DIRECTIONS = {
    f"{direction.value}{mode.value}": (direction, mode)
    for direction in Direction for mode in ListMode
}


@dataclass(frozen=True)
class Rule:
    id: int
    parent: str
    direction: Direction
    list_mode: ListMode
    children: tuple
    condition: ConditionExpr = TRUE
    condition_text: str = "true"
    line: int = None

    def __post_init__(self):
        if not self.children:
            raise GrammarError(f"rule for {self.parent!r} has no children", self.line)

    @property
    def attributes(self):
        """Attribute names (without `$`) mentioned by the children."""
        return frozenset(child[1:] for child in self.children if is_attribute(child))

    def __str__(self):
        return f"{self.parent} {self.direction.value}{self.list_mode.value} {' '.join(self.children)}"


@dataclass(frozen=True)
class Grammar:
    root: str
    rules: tuple = ()
    rewrites: tuple = ()
    index: PMap = pmap()

    @classmethod
    def build(cls, root, rules, rewrites=()):
        index = defaultdict(list)
        for rule in rules:
            index[(rule.parent, rule.direction)].append(rule.id)
        return cls(root, tuple(rules), tuple(rewrites), pmap({key: tuple(ids) for key, ids in index.items()}))

    def rule(self, rule_id):
        return self.rules[rule_id]

    def rules_for(self, parent, direction):
        return [self.rules[i] for i in self.index.get((parent, direction), ())]


def _split_condition(body, number):
    body, separator, condition_text = body.partition(CONDITION_SEPARATOR)
    if not separator:
        return body.split(), TRUE, "true"
    condition_text = condition_text.strip()
    try:
        return body.split(), parse_condition(condition_text), condition_text
    except ConditionSyntaxError as exc:
        raise GrammarError(f"condition error: {exc}", number) from exc


def parse_grammar(text):
    """Parse grammar text. Rule ids follow file order starting at 0."""
    root = None
    rules, rewrites = [], []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        keyword, *rest = line.split(None, 1)
        body = rest[0] if rest else ""
        if keyword == "root":
            tokens = body.split()
            if len(tokens) != 1:
                raise GrammarError("root takes exactly one token", number)
            if root is not None:
                raise GrammarError(f"duplicate root declaration {tokens[0]!r}", number)
            root = tokens[0]
        elif keyword == "rule":
            tokens, condition, condition_text = _split_condition(body, number)
            if len(tokens) < 2:
                raise GrammarError("rule needs a parent and a direction", number)
            parent, marker, children = tokens[0], tokens[1], tuple(tokens[2:])
            if marker not in DIRECTIONS:
                raise GrammarError(f"bad direction {marker!r} (expected one of {' '.join(DIRECTIONS)})", number)
            if not children:
                raise GrammarError(f"rule for {parent!r} has no children", number)
            repeated = sorted({c for c in children if is_attribute(c) and children.count(c) > 1})
            if repeated:
                raise GrammarError(f"rule repeats attribute {repeated[0]}", number)
            direction, mode = DIRECTIONS[marker]
            rules.append(Rule(len(rules), parent, direction, mode, children, condition, condition_text, number))
        elif keyword == "rewrite":
            tokens, condition, condition_text = _split_condition(body, number)
            if len(tokens) != 3 or tokens[1] != "->":
                raise GrammarError("rewrite must read 'rewrite <token> -> <token>'", number)
            try:
                rewrites.append(RewriteDirective(tokens[0], tokens[2], condition, condition_text, number))
            except ValueError as exc:
                raise GrammarError(str(exc), number) from exc
        else:
            raise GrammarError(f"unknown directive {keyword!r}", number)
    if root is None:
        raise GrammarError("missing root declaration")
    grammar = Grammar.build(root, rules, rewrites)
    logger.debug("parsed grammar: root=%s rules=%d rewrites=%d", root, len(rules), len(rewrites))
    return grammar


def applicable_rules(grammar, parent, direction, context, used_rule_ids=frozenset(),
                     mentioned_attrs=frozenset(), diagnostics=None):
    """Rules for (parent, direction) that may fire now, in file order.

    A rule qualifies when its condition holds, it has not been used at this node and
    none of its attributes is already mentioned in the tree.
    """
    found = []
    for rule in grammar.rules_for(parent, direction):
        if rule.id in used_rule_ids:
            continue
        if any(name in mentioned_attrs for name in rule.attributes):
            continue
        try:
            holds = rule.condition.evaluate(context)
        except ConditionEvaluationError as exc:
            diagnostic = Diagnostic("condition-error", f"rule {rule.id} ({rule}) skipped: {exc}", rule.line)
            logger.warning(str(diagnostic))
            if diagnostics is not None:
                diagnostics.append(diagnostic)
            continue
        if holds:
            found.append(rule)
    return found


def validate(grammar, strict=False):
    """Non-fatal consistency checks. `strict` also reports terminal word tokens."""
    diagnostics = []
    heads = {rule.parent for rule in grammar.rules}

    if grammar.root not in heads:
        diagnostics.append(Diagnostic("root-cannot-expand", f"root {grammar.root!r} cannot expand: it heads no rule"))

    reachable, frontier = {grammar.root}, [grammar.root]
    while frontier:
        token = frontier.pop()
        for rule in grammar.rules:
            if rule.parent != token:
                continue
            for child in rule.children:
                if child not in reachable:
                    reachable.add(child)
                    frontier.append(child)

    for rule in grammar.rules:
        if rule.parent not in reachable:
            diagnostics.append(Diagnostic(
                "unreachable-rule", f"rule {rule.id} ({rule}) can never fire: {rule.parent!r} is unreachable",
                rule.line))

    generable = {grammar.root[1:]} if is_attribute(grammar.root) else set()
    for rule in grammar.rules:
        if rule.parent in reachable:
            generable |= rule.attributes
    reported = set()
    for rule in grammar.rules:
        for name in sorted(rule.condition.attributes() - generable - reported):
            reported.add(name)
            diagnostics.append(Diagnostic(
                "ungenerable-attribute",
                f"condition of rule {rule.id} tests ${name} but no rule can generate it", rule.line))

    if strict:
        terminals = set()
        for rule in grammar.rules:
            for child in rule.children:
                if child not in heads and not is_attribute(child) and child not in terminals:
                    terminals.add(child)
                    diagnostics.append(Diagnostic(
                        "terminal-token", f"token {child!r} heads no rule", rule.line))
    return diagnostics
