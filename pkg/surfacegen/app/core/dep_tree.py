"""Immutable dependency trees.

Every operation returns a new tree and shares untouched subtrees with its input.
A node path is a tuple of (Direction, index) steps from the root; () is the root.

Left children are stored outermost-first and right children innermost-first, so
both tuples read in surface (left-to-right) order. Each rule adds one contiguous
group of children on its side, outward of the groups attached before it.
"""
from dataclasses import dataclass, field, replace
from functools import cached_property

from pyrsistent import pbag, pset, PBag, PSet

from app.core.exceptions import TreeError
from app.core.grammar import Direction, ListMode
from app.core.realizer import is_attribute

COMMA = ","
CONJUNCTIONS = {ListMode.AND: "and", ListMode.OR: "or"}
SEPARATORS = frozenset({COMMA, *CONJUNCTIONS.values()})


@dataclass(frozen=True)
class ChildGroup:
    """The children one rule attached to a node."""
    rule_id: int
    direction: Direction
    list_mode: ListMode
    size: int


@dataclass(frozen=True)
class TreeNode:
    token: str
    left: tuple = ()
    right: tuple = ()
    left_done: bool = False
    right_done: bool = False
    used_rule_ids: PSet = field(default_factory=pset)
    groups: tuple = ()

    @property
    def completed(self):
        return self.left_done and self.right_done

    def done(self, side):
        return self.left_done if side is Direction.LEFT else self.right_done

    def side_groups(self, side):
        """(attachment index, group, member nodes) for one side, in surface order."""
        attached = [(i, g) for i, g in enumerate(self.groups) if g.direction is side]
        if side is Direction.LEFT:
            attached.reverse()
        children = self.left if side is Direction.LEFT else self.right
        found, start = [], 0
        for index, group in attached:
            found.append((index, group, children[start:start + group.size]))
            start += group.size
        return found


@dataclass(frozen=True)
class DependencyTree:
    root: TreeNode
    attributes: PBag = field(default_factory=lambda: pbag([]))

    @cached_property
    def tokens(self):
        return tuple(_linearize(self.root))

    @cached_property
    def node_count(self):
        return sum(1 for _ in walk(self))

    def mentions(self, name):
        return self.attributes.count(name)


def new_tree(root):
    attributes = pbag([root[1:]]) if is_attribute(root) else pbag([])
    return DependencyTree(TreeNode(root), attributes)


def walk(tree):
    """Yield (path, node) for every node, parents before children."""
    stack = [((), tree.root)]
    while stack:
        path, node = stack.pop()
        yield path, node
        steps = [((Direction.LEFT, i), c) for i, c in enumerate(node.left)]
        steps += [((Direction.RIGHT, i), c) for i, c in enumerate(node.right)]
        for step, child in reversed(steps):
            stack.append((path + (step,), child))


def node_at(tree, path):
    node = tree.root
    for side, index in path:
        children = node.left if side is Direction.LEFT else node.right
        if not 0 <= index < len(children):
            raise TreeError(f"no node at path {path}")
        node = children[index]
    return node


def _replace_at(node, path, new_node):
    if not path:
        return new_node
    (side, index), rest = path[0], path[1:]
    if side is Direction.LEFT:
        left = list(node.left)
        left[index] = _replace_at(left[index], rest, new_node)
        return replace(node, left=tuple(left))
    right = list(node.right)
    right[index] = _replace_at(right[index], rest, new_node)
    return replace(node, right=tuple(right))


def attach_children(tree, path, rule):
    """Attach the rule's children as one group on its side of the node at `path`."""
    node = node_at(tree, path)
    side = rule.direction
    if node.token != rule.parent:
        raise TreeError(f"rule {rule.id} heads {rule.parent!r}, node is {node.token!r}")
    if node.done(side):
        raise TreeError(f"{side.name.lower()} side of {node.token!r} is already complete")
    if rule.id in node.used_rule_ids:
        raise TreeError(f"rule {rule.id} already used at {node.token!r}")
    if rule.list_mode is not ListMode.PLAIN:
        for group in node.groups:
            if group.direction is side and group.list_mode not in (ListMode.PLAIN, rule.list_mode):
                raise TreeError(f"cannot mix 'and' and 'or' lists on one side of {node.token!r}")

    fresh = tuple(TreeNode(child) for child in rule.children)
    if side is Direction.LEFT:
        updated = replace(node, left=fresh + node.left)
    else:
        updated = replace(node, right=node.right + fresh)
    updated = replace(
        updated,
        used_rule_ids=node.used_rule_ids.add(rule.id),
        groups=node.groups + (ChildGroup(rule.id, side, rule.list_mode, len(fresh)),),
    )
    attributes = tree.attributes
    for child in rule.children:
        if is_attribute(child):
            attributes = attributes.add(child[1:])
    return DependencyTree(_replace_at(tree.root, path, updated), attributes)


def mark_complete(tree, path, side):
    node = node_at(tree, path)
    if node.done(side):
        raise TreeError(f"{side.name.lower()} side of {node.token!r} is already complete")
    if side is Direction.LEFT:
        updated = replace(node, left_done=True)
    else:
        updated = replace(node, right_done=True)
    return DependencyTree(_replace_at(tree.root, path, updated), tree.attributes)


def find_active_parent(tree):
    """Path of the first non-completed node: left subtrees, right subtrees, then the node."""
    def search(node, path):
        for i, child in enumerate(node.left):
            found = search(child, path + ((Direction.LEFT, i),))
            if found is not None:
                return found
        for i, child in enumerate(node.right):
            found = search(child, path + ((Direction.RIGHT, i),))
            if found is not None:
                return found
        return None if node.completed else path

    return search(tree.root, ())


def is_a_complete(tree, mandatory_names):
    return all(tree.attributes.count(name) == 1 for name in mandatory_names)


def linearize(tree):
    return tree.tokens


def render_list(items, list_mode):
    """Join list items: x | x and y | x , y , ... , and z."""
    word = CONJUNCTIONS[list_mode]
    if len(items) == 1:
        return list(items[0])
    if len(items) == 2:
        return [*items[0], word, *items[1]]
    tokens = []
    for item in items[:-1]:
        tokens += [*item, COMMA]
    return tokens + [word, *items[-1]]


def _render_side(node, side):
    surface = node.side_groups(side)
    words = {index: [t for member in members for t in _linearize(member)] for index, _, members in surface}
    listed = [(index, group) for index, group, _ in surface if group.list_mode is not ListMode.PLAIN]
    tokens = []
    if not listed:
        for index, _, _ in surface:
            tokens += words[index]
        return tokens
    list_slot = listed[0][0]
    items = [words[index] for index, _ in sorted(listed, key=lambda pair: pair[0])]
    for index, group, _ in surface:
        if group.list_mode is ListMode.PLAIN:
            tokens += words[index]
        elif index == list_slot:
            tokens += render_list(items, group.list_mode)
    return tokens


def _linearize(node):
    return _render_side(node, Direction.LEFT) + [node.token] + _render_side(node, Direction.RIGHT)


def render_brackets(tree):
    """Bracket debug form, e.g. [.a b+ [.c+ f- ] d+ ]."""
    def render(node, mark):
        label = node.token + mark
        children = [(c, "-") for c in node.left] + [(c, "+") for c in node.right]
        if not children:
            return label
        return f"[.{label} " + " ".join(render(child, m) for child, m in children) + " ]"

    return render(tree.root, "")
