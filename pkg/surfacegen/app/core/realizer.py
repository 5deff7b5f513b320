"""Surface finishing after the search: conditional token rewrites, then attribute instantiation."""
import logging
from dataclasses import dataclass, replace

from app.core.condition import TRUE, ConditionExpr
from app.core.exceptions import ConditionEvaluationError, Diagnostic, InstantiationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RewriteDirective:
    source: str
    replacement: str
    condition: ConditionExpr = TRUE
    condition_text: str = "true"
    line: int = None

    def __post_init__(self):
        if self.source == self.replacement:
            raise ValueError(f"rewrite of {self.source!r} onto itself")
        if not self.source or any(c.isspace() for c in self.source):
            raise ValueError(f"rewrite source must be a single token, got {self.source!r}")


def is_attribute(token):
    return token.startswith("$") and len(token) > 1


def apply_rewrites(tokens, directives, context, diagnostics=None):
    """Rewrite tokens in one left-to-right pass.

    At each position the first directive (file order) whose source matches and whose
    condition holds fires. Output tokens are never matched again.
    """
    result = []
    for token in tokens:
        for directive in directives:
            if directive.source != token:
                continue
            try:
                holds = directive.condition.evaluate(context)
            except ConditionEvaluationError as exc:
                diagnostic = Diagnostic(
                    "condition-error",
                    f"rewrite {directive.source} -> {directive.replacement} skipped: {exc}", directive.line)
                logger.warning(str(diagnostic))
                if diagnostics is not None:
                    diagnostics.append(diagnostic)
                continue
            if holds:
                token = directive.replacement
                break
        result.append(token)
    return tuple(result)


def instantiate(tokens, context):
    """Replace attribute tokens by their values and join with single spaces.

    Commas are kept as standalone tokens (" , ") since speech synthesis pauses on them.
    """
    words = []
    for token in tokens:
        if is_attribute(token):
            found = context.lookup(token[1:])
            if found is None:
                raise InstantiationError(f"attribute {token} has no value in the dialog context")
            words.append(found.value)
        else:
            words.append(token)
    return " ".join(words)


def deinstantiate(text, context):
    """Map a surface string back to tokens by greedy longest match of attribute values."""
    values = sorted(
        ((entry.value.split(), f"${entry.name}") for _, entry in context.entries() if entry.value.split()),
        key=lambda item: -len(item[0]),
    )
    words = text.split()
    tokens, position = [], 0
    while position < len(words):
        for value_words, token in values:
            if words[position:position + len(value_words)] == value_words:
                tokens.append(token)
                position += len(value_words)
                break
        else:
            tokens.append(words[position])
            position += 1
    return tuple(tokens)


def realize(result, grammar, context):
    """Fill the surface string of every realization of a generation result."""
    finished = []
    for realization in result.realizations:
        rewritten = apply_rewrites(realization.tokens, grammar.rewrites, context, result.diagnostics)
        finished.append(replace(realization, surface=instantiate(rewritten, context)))
    return replace(result, realizations=tuple(finished))
