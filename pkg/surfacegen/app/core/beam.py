"""Beam search over dependency trees, plus an exhaustive enumerator used as its oracle.

Each iteration takes the top-N trees, moves A-complete ones to the result pool and
expands the rest at their active parent: one successor per applicable rule plus one
that marks the working side complete. A successor that can no longer mention some
missing A1 attribute from any open node side is a dead end and is discarded before
ranking. The search stops when the pool holds N trees, the beam empties or the
iteration cap is reached.
"""
import itertools
import logging
from dataclasses import dataclass, field

from app.core.dep_tree import (
    DependencyTree,
    attach_children,
    find_active_parent,
    is_a_complete,
    mark_complete,
    new_tree,
    node_at,
    walk,
)
from app.core.exceptions import ConditionEvaluationError, Diagnostic, TreeError
from app.core.grammar import Direction, applicable_rules
from app.core.ngram import sequence_log_prob

logger = logging.getLogger(__name__)

STOP_POOL_FULL = "pool-full"
STOP_BEAM_EMPTY = "beam-empty"
STOP_ITERATION_CAP = "iteration-cap"


@dataclass(frozen=True)
class SearchConfig:
    beam_width: int = 64
    max_iterations: int = 200
    k_best: int = 1
    weights: object = None
    deduplicate: bool = True
    length_normalize: bool = False
    trace: bool = False

    def __post_init__(self):
        if self.beam_width < 1:
            raise ValueError(f"beam width must be at least 1, got {self.beam_width}")
        if not 1 <= self.k_best <= self.beam_width:
            raise ValueError(f"k-best must be between 1 and the beam width, got {self.k_best}")
        if self.max_iterations < 1:
            raise ValueError(f"max iterations must be at least 1, got {self.max_iterations}")


@dataclass(frozen=True)
class Realization:
    tokens: tuple
    score: float
    tree: DependencyTree
    rank: int
    surface: str = None


@dataclass(frozen=True)
class TraceRecord:
    iteration: int
    tree: int
    score: float
    action: str
    sequence: str


@dataclass(frozen=True)
class GenerationResult:
    realizations: tuple
    diagnostics: list = field(default_factory=list)
    trace: tuple = ()
    iterations: int = 0
    stop_reason: str = STOP_POOL_FULL

    @property
    def failed(self):
        return not self.realizations

    @property
    def best(self):
        return self.realizations[0] if self.realizations else None


@dataclass(frozen=True)
class EnumerationResult:
    trees: tuple
    truncated: bool
    explored: int


@dataclass(frozen=True)
class _Candidate:
    tree: DependencyTree
    score: float
    order: int

    @property
    def key(self):
        return (-self.score, self.order)


def _working_point(tree):
    """(path, node, side) of the next expansion, or None when every node is completed."""
    path = find_active_parent(tree)
    if path is None:
        return None
    node = node_at(tree, path)
    side = Direction.LEFT if not node.left_done else Direction.RIGHT
    return path, node, side


def _attach_all(tree, path, rules):
    grown = []
    for rule in rules:
        try:
            grown.append(attach_children(tree, path, rule))
        except TreeError as exc:
            logger.debug("rule %d not attached: %s", rule.id, exc)
    return grown


def successors(tree, grammar, context, diagnostics=None):
    """Trees one step away: every applicable rule at the active parent, then the mark."""
    point = _working_point(tree)
    if point is None:
        return []
    path, node, side = point
    rules = applicable_rules(grammar, node.token, side, context, node.used_rule_ids, tree.attributes, diagnostics)
    return _attach_all(tree, path, rules) + [mark_complete(tree, path, side)]


def _holding_rules(grammar, context):
    for rule in grammar.rules:
        try:
            if rule.condition.evaluate(context):
                yield rule
        except ConditionEvaluationError:
            continue


def _generable_attributes(grammar, context):
    found = set()
    if grammar.root.startswith("$"):
        found.add(grammar.root[1:])
    for rule in _holding_rules(grammar, context):
        found |= rule.attributes
    return found


def reachable_attributes(grammar, context):
    """Map (token, side) to every attribute that side can still bring in, at any depth.

    Rule reuse and already mentioned attributes are ignored, so the sets over-approximate.
    """
    direct, below = {}, {}
    for rule in _holding_rules(grammar, context):
        key = (rule.parent, rule.direction)
        direct.setdefault(key, set()).update(rule.attributes)
        below.setdefault(key, set()).update(rule.children)

    by_token = {}
    changed = True
    while changed:
        changed = False
        for (token, side), names in direct.items():
            found = set(names)
            for child in below[(token, side)]:
                found |= by_token.get(child, set())
            known = by_token.setdefault(token, set())
            if not found <= known:
                known |= found
                changed = True

    return {
        key: names.union(*(by_token.get(child, set()) for child in below[key]))
        for key, names in direct.items()
    }


def can_complete(tree, mandatory_names, reachable):
    """False when some unmentioned A1 attribute is out of reach of every open node side."""
    missing = {name for name in mandatory_names if tree.mentions(name) == 0}
    for _, node in walk(tree):
        if not missing:
            break
        for side in Direction:
            if not node.done(side):
                missing -= reachable.get((node.token, side), set())
    return not missing


def _failure_diagnostics(grammar, context, stop_reason, iterations):
    found = []
    for name in sorted(context.mandatory_names - _generable_attributes(grammar, context)):
        found.append(Diagnostic("ungenerable-attribute",
                                f"mandatory attribute ${name} cannot be generated by any applicable rule"))
    if stop_reason == STOP_ITERATION_CAP:
        found.append(Diagnostic("iteration-cap", f"no A-complete tree within {iterations} iterations"))
    else:
        found.append(Diagnostic("beam-exhausted", f"beam emptied after {iterations} iterations"))
    return found


def generate(grammar, model, context, config=SearchConfig()):
    """Beam search for the best A-complete trees; see the module docstring."""
    weights = config.weights or model.weights
    mandatory = context.mandatory_names
    reachable = reachable_attributes(grammar, context)
    diagnostics, records = [], []
    scores = {}
    counter = itertools.count()

    def candidate(tree):
        if tree.tokens not in scores:
            scores[tree.tokens] = sequence_log_prob(model, tree.tokens, weights, config.length_normalize)
        return _Candidate(tree, scores[tree.tokens], next(counter))

    def record(iteration, item, action):
        if config.trace:
            records.append(TraceRecord(iteration, item.order, item.score, action, " ".join(item.tree.tokens)))

    beam = [candidate(new_tree(grammar.root))]
    pool = []
    iteration = 0
    stop_reason = None
    while stop_reason is None:
        if not beam:
            stop_reason = STOP_BEAM_EMPTY
            break
        if iteration == config.max_iterations:
            for item in beam:
                if is_a_complete(item.tree, mandatory) and len(pool) < config.beam_width:
                    pool.append(item)
                    record(iteration, item, "complete")
            stop_reason = STOP_ITERATION_CAP
            break
        iteration += 1
        expanded = []
        for item in beam:
            if is_a_complete(item.tree, mandatory):
                pool.append(item)
                record(iteration, item, "complete")
                if len(pool) >= config.beam_width:
                    stop_reason = STOP_POOL_FULL
                    break
                continue
            viable, dead = [], []
            for grown in successors(item.tree, grammar, context, diagnostics):
                (viable if can_complete(grown, mandatory, reachable) else dead).append(candidate(grown))
            record(iteration, item, "expand" if viable else "discard")
            for child in dead:
                record(iteration, child, "discard")
            expanded.extend(viable)
        beam = sorted(expanded, key=lambda c: c.key)[:config.beam_width]

    ranked = sorted(pool, key=lambda c: c.key)
    if config.deduplicate:
        seen, unique = set(), []
        for item in ranked:
            if item.tree.tokens not in seen:
                seen.add(item.tree.tokens)
                unique.append(item)
        ranked = unique
    realizations = tuple(
        Realization(item.tree.tokens, item.score, item.tree, rank)
        for rank, item in enumerate(ranked[:config.k_best], start=1)
    )
    if not realizations:
        diagnostics.extend(_failure_diagnostics(grammar, context, stop_reason, iteration))
        for diagnostic in diagnostics:
            logger.warning("generation failed: %s", diagnostic)
    logger.info("search stopped (%s) after %d iterations with %d complete trees",
                stop_reason, iteration, len(pool))
    return GenerationResult(realizations, diagnostics, tuple(records), iteration, stop_reason)


def enumerate_all(grammar, context, max_per_node=4, max_nodes=16, expand_complete=True):
    """Depth-first enumeration of every A-complete tree within the bounds.

    With `expand_complete` the enumeration keeps growing trees that are already
    A-complete; without it, A-complete trees are leaves as in the beam search.
    """
    mandatory = context.mandatory_names
    trees, explored, truncated = [], 0, False
    stack = [new_tree(grammar.root)]
    while stack:
        tree = stack.pop()
        explored += 1
        if is_a_complete(tree, mandatory):
            trees.append(tree)
            if not expand_complete:
                continue
        point = _working_point(tree)
        if point is None:
            continue
        path, node, side = point
        allowed = []
        for rule in applicable_rules(grammar, node.token, side, context, node.used_rule_ids, tree.attributes):
            if len(node.used_rule_ids) >= max_per_node or tree.node_count + len(rule.children) > max_nodes:
                truncated = True
                continue
            allowed.append(rule)
        grown = _attach_all(tree, path, allowed) + [mark_complete(tree, path, side)]
        stack.extend(reversed(grown))
    if truncated:
        logger.warning("enumeration truncated by bounds (max per node %d, max nodes %d)", max_per_node, max_nodes)
    return EnumerationResult(tuple(trees), truncated, explored)
