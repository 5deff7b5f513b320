"""Dialog context: the mandatory (A1) and optional (A2) attribute-value sets.

Attributes carry a novelty mark. An attribute is New when the user gave it in
the most recent user turn and Old otherwise; `derive_context` computes the
marks from a turn history.
"""
import logging
import re
from dataclasses import dataclass, field
from enum import Enum

from pyrsistent import pmap, PMap

from app.core.exceptions import ContextError

logger = logging.getLogger(__name__)

_QUOTED = r'"((?:[^"\\]|\\.)*)"'
_STATE_LINE = re.compile(
    r'^(mandatory|optional)\s+\$?([^\s=$]+)\s*=\s*' + _QUOTED + r'\s*;\s*(new|old)\s*$'
)
_TURN_LINE = re.compile(r'^turn\s+(user|system)\s*$')
_PAIR_LINE = re.compile(r'^\s+\$?([^\s=$]+)\s*=\s*' + _QUOTED + r'\s*$')


class Novelty(Enum):
    NEW = "new"
    OLD = "old"


class Membership(Enum):
    MANDATORY = "mandatory"
    OPTIONAL = "optional"


class Speaker(Enum):
    USER = "user"
    SYSTEM = "system"


@dataclass(frozen=True)
class AttributeEntry:
    name: str
    value: str
    novelty: Novelty

    def __post_init__(self):
        if not self.name or self.name.startswith("$"):
            raise ContextError(f"invalid attribute name {self.name!r}")


@dataclass(frozen=True)
class Lookup:
    value: str
    novelty: Novelty
    membership: Membership


@dataclass(frozen=True)
class DialogContext:
    """A1 and A2, keyed by attribute name (without the `$` prefix)."""
    mandatory: PMap = field(default_factory=pmap)
    optional: PMap = field(default_factory=pmap)

    def __post_init__(self):
        overlap = set(self.mandatory) & set(self.optional)
        if overlap:
            raise ContextError(f"attributes in both A1 and A2: {', '.join(sorted(overlap))}")

    @classmethod
    def from_entries(cls, mandatory=(), optional=()):
        a1, a2 = {}, {}
        for target, entries in ((a1, mandatory), (a2, optional)):
            for entry in entries:
                if entry.name in target:
                    raise ContextError(f"duplicate attribute {entry.name!r}")
                target[entry.name] = entry
        return cls(pmap(a1), pmap(a2))

    @property
    def mandatory_names(self):
        return frozenset(self.mandatory)

    @property
    def optional_names(self):
        return frozenset(self.optional)

    @property
    def names(self):
        return frozenset(self.mandatory) | frozenset(self.optional)

    def lookup(self, name):
        """Return a `Lookup` for the attribute or None when it is absent from A1 and A2."""
        name = name.lstrip("$")
        if name in self.mandatory:
            entry = self.mandatory[name]
            return Lookup(entry.value, entry.novelty, Membership.MANDATORY)
        if name in self.optional:
            entry = self.optional[name]
            return Lookup(entry.value, entry.novelty, Membership.OPTIONAL)
        return None

    def __contains__(self, name):
        return self.lookup(name) is not None

    def entries(self):
        """(membership, entry) pairs, A1 first, names sorted within each set."""
        for membership, table in ((Membership.MANDATORY, self.mandatory), (Membership.OPTIONAL, self.optional)):
            for name in sorted(table):
                yield membership, table[name]


@dataclass(frozen=True)
class Turn:
    speaker: Speaker
    pairs: tuple = ()


@dataclass(frozen=True)
class TurnHistory:
    turns: tuple = ()

    def append(self, turn):
        return TurnHistory(self.turns + (turn,))

    def last_user_turn(self):
        for turn in reversed(self.turns):
            if turn.speaker is Speaker.USER:
                return turn
        return None


def derive_context(history, mandatory_names, optional_names=frozenset()):
    """Build a DialogContext from a turn history.

    The latest value of each attribute wins. An attribute is New iff it was given in
    the most recent user turn, restatements of known values included.
    """
    mandatory_names = frozenset(n.lstrip("$") for n in mandatory_names)
    optional_names = frozenset(n.lstrip("$") for n in optional_names)
    if mandatory_names & optional_names:
        raise ContextError(f"attributes requested as both mandatory and optional: "
                           f"{', '.join(sorted(mandatory_names & optional_names))}")

    values = {}
    for turn in history.turns:
        for name, value in turn.pairs:
            values[name] = value

    missing = sorted(mandatory_names - set(values))
    if missing:
        raise ContextError(f"mandatory attributes absent from history: {', '.join(missing)}")

    last_user = history.last_user_turn()
    fresh = {name for name, _ in last_user.pairs} if last_user else set()

    def entry(name):
        return AttributeEntry(name, values[name], Novelty.NEW if name in fresh else Novelty.OLD)

    context = DialogContext.from_entries(
        mandatory=[entry(n) for n in sorted(mandatory_names)],
        optional=[entry(n) for n in sorted(optional_names) if n in values],
    )
    logger.debug("derived context: new=%s", sorted(n for n in context.names if n in fresh))
    return context


def _unescape(text):
    return re.sub(r'\\(.)', r'\1', text)


def _escape(text):
    return text.replace("\\", "\\\\").replace('"', '\\"')


def parse_state(text):
    """Parse the canonical state file format into a DialogContext."""
    mandatory, optional = [], []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _STATE_LINE.match(line)
        if not match:
            raise ContextError(f"malformed state line {line!r}", line=number)
        membership, name, value, novelty = match.groups()
        target = mandatory if membership == "mandatory" else optional
        target.append(AttributeEntry(name, _unescape(value), Novelty(novelty)))
    return DialogContext.from_entries(mandatory, optional)


def format_state(context):
    lines = []
    for membership, entry in context.entries():
        lines.append(f'{membership.value} {entry.name} = "{_escape(entry.value)}" ; {entry.novelty.value}')
    return "\n".join(lines) + ("\n" if lines else "")


def parse_history(text):
    """Parse a history file: `turn <speaker>` headers followed by indented pairs."""
    turns = []
    speaker, pairs = None, []
    for number, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.strip().startswith("#"):
            continue
        header = _TURN_LINE.match(raw.strip()) if not raw[0].isspace() else None
        if header:
            if speaker is not None:
                turns.append(Turn(speaker, tuple(pairs)))
            speaker, pairs = Speaker(header.group(1)), []
            continue
        match = _PAIR_LINE.match(raw)
        if not match:
            raise ContextError(f"malformed history line {raw.strip()!r}", line=number)
        if speaker is None:
            raise ContextError("attribute line before the first turn header", line=number)
        pairs.append((match.group(1), _unescape(match.group(2))))
    if speaker is not None:
        turns.append(Turn(speaker, tuple(pairs)))
    return TurnHistory(tuple(turns))
