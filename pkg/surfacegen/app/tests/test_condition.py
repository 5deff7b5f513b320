import numpy as np
import pytest

from app.core.condition import (
    And,
    Const,
    Not,
    Or,
    Predicate,
    eval_condition,
    format_condition,
    parse_condition,
)
from app.core.exceptions import (
    ConditionEvaluationError,
    ConditionSyntaxError,
    UnknownPredicateError,
)


@pytest.fixture
def context(make_context):
    return make_context(
        mandatory={"city-fr": ("new-york", "old"), "time-dep": ("ten A M", "new")},
        optional={"num-flights": ("3", "old"), "air": ("delta", "new")},
    )


class TestParse:

    def test_precedence(self):
        """not binds tighter than and, and tighter than or"""
        expr = parse_condition("not has(a) and has(b) or has(c)")
        assert expr == Or(And(Not(Predicate("has", "a")), Predicate("has", "b")), Predicate("has", "c"))

    def test_left_associative(self):
        """Binary operators group to the left"""
        expr = parse_condition("has(a) or has(b) or has(c)")
        assert expr == Or(Or(Predicate("has", "a"), Predicate("has", "b")), Predicate("has", "c"))

    def test_parentheses(self):
        """Parentheses override precedence"""
        expr = parse_condition("has(a) and (has(b) or has(c))")
        assert expr == And(Predicate("has", "a"), Or(Predicate("has", "b"), Predicate("has", "c")))

    def test_constants(self):
        """true and false are constants"""
        assert parse_condition("true") == Const(True)
        assert parse_condition("not false") == Not(Const(False))

    def test_dollar_prefix_is_stripped(self):
        """Attributes may be written with the $ prefix"""
        assert parse_condition("new($city-fr)") == Predicate("new", "city-fr")

    def test_arguments(self):
        """eq takes a string, gt/lt a number"""
        assert parse_condition('eq(air, "delta \\"one\\"")').argument == 'delta "one"'
        assert str(parse_condition("gt(num-flights, 1.5)").argument) == "1.5"

    def test_attributes(self):
        """attributes() lists every consulted attribute"""
        expr = parse_condition('new(a) or (old(b) and not eq(c, "x"))')
        assert expr.attributes() == frozenset({"a", "b", "c"})


class TestSyntaxErrors:

    def test_unknown_predicate(self):
        """Predicates outside the closed set are rejected at their offset"""
        with pytest.raises(UnknownPredicateError) as info:
            parse_condition("has(a) and foo(b)")
        assert info.value.offset == 11

    def test_trailing_garbage(self):
        """A stray word after a complete expression reports the expected operators"""
        with pytest.raises(ConditionSyntaxError) as info:
            parse_condition("new(a) andd old(b)")
        assert info.value.offset == 7
        assert {"and", "or"} <= info.value.expected

    def test_offset_is_in_bytes(self):
        """Offsets count UTF-8 bytes, not characters"""
        with pytest.raises(ConditionSyntaxError) as info:
            parse_condition('eq(a, "é") or')
        assert info.value.offset == 14

    def test_missing_argument(self):
        """eq without its string argument fails"""
        with pytest.raises(ConditionSyntaxError):
            parse_condition("eq(a)")

    def test_empty(self):
        """An empty condition is a syntax error"""
        with pytest.raises(ConditionSyntaxError):
            parse_condition("   ")

    def test_unbalanced(self):
        """A missing closing parenthesis fails"""
        with pytest.raises(ConditionSyntaxError):
            parse_condition("(has(a) or has(b)")


class TestEvaluate:

    def test_membership_and_novelty(self, context):
        """Membership and novelty predicates read the context"""
        assert eval_condition(parse_condition("mandatory(city-fr) and old(city-fr)"), context)
        assert eval_condition(parse_condition("optional(air) and new(air)"), context)
        assert not eval_condition(parse_condition("new(city-fr)"), context)
        assert not eval_condition(parse_condition("optional(city-fr)"), context)

    def test_absent_attribute_is_false(self, context):
        """Every predicate is false for an absent attribute"""
        for text in ("has(x)", "new(x)", "old(x)", "mandatory(x)", "optional(x)", 'eq(x, "a")', "gt(x, 0)", "lt(x, 0)"):
            assert not eval_condition(parse_condition(text), context)

    def test_string_equality(self, context):
        """eq compares values verbatim"""
        assert eval_condition(parse_condition('eq(time-dep, "ten A M")'), context)
        assert not eval_condition(parse_condition('eq(time-dep, "ten a m")'), context)

    def test_numeric_comparison(self, context):
        """gt and lt compare decimal values"""
        assert eval_condition(parse_condition("gt(num-flights, 2) and lt(num-flights, 3.5)"), context)
        assert not eval_condition(parse_condition("gt(num-flights, 3)"), context)

    def test_non_numeric_value(self, context):
        """Numeric predicates fail on non-numeric values"""
        with pytest.raises(ConditionEvaluationError):
            eval_condition(parse_condition("gt(air, 1)"), context)

    def test_short_circuit(self, context):
        """or stops at the first true operand"""
        assert eval_condition(parse_condition("has(air) or gt(air, 1)"), context)


class TestFormat:

    @pytest.mark.parametrize("text", [
        "true",
        "not has(a) and has(b) or has(c)",
        'eq(city-fr, "new \\"york\\"") and gt(n, -2.5)',
        "not (new(a) or old(b))",
        "gt(n, 0.0000001)",
        "lt(n, -0.00000025)",
    ])
    def test_round_trip(self, text):
        """Parsing the canonical text gives back the same expression"""
        expr = parse_condition(text)
        assert parse_condition(format_condition(expr)) == expr

    def test_small_decimal_plain(self):
        """Small numbers print in plain decimal notation"""
        assert format_condition(parse_condition("gt(n, 0.0000001)")) == "gt(n, 0.0000001)"

    def test_parenthesized(self):
        """Binary nodes are always parenthesized"""
        assert format_condition(parse_condition("has(a) and has(b) or has(c)")) == "((has(a) and has(b)) or has(c))"


NAMES = ["a", "b", "c"]
PREDICATES = ["has({})", "new({})", "old({})", "mandatory({})", "optional({})",
              'eq({}, "1")', "gt({}, 1)", "lt({}, 2.5)"]


def random_predicate(rng):
    return str(rng.choice(PREDICATES)).format(rng.choice(NAMES))


def random_condition(rng, depth=2):
    """Condition text over a, b and c, nested up to `depth` operators deep."""
    if depth == 0 or rng.random() < 0.3:
        return random_predicate(rng)
    operator = str(rng.choice(["and", "or", "not"]))
    if operator == "not":
        return f"not ({random_condition(rng, depth - 1)})"
    return f"({random_condition(rng, depth - 1)} {operator} {random_condition(rng, depth - 1)})"


def random_state(rng, make_context):
    mandatory, optional = {}, {}
    for name in NAMES:
        slot = int(rng.integers(0, 3))
        entry = (str(rng.choice(["0", "1", "2", "3"])), str(rng.choice(["new", "old"])))
        if slot == 1:
            mandatory[name] = entry
        elif slot == 2:
            optional[name] = entry
    return make_context(mandatory, optional)


class TestRandomConditions:

    def test_de_morgan(self, make_context):
        """not (p and q) agrees with (not p) or (not q), and dually for or"""
        rng = np.random.default_rng(2024)
        for _ in range(500):
            p, q = random_condition(rng), random_condition(rng)
            context = random_state(rng, make_context)
            assert eval_condition(parse_condition(f"not ({p} and {q})"), context) == \
                eval_condition(parse_condition(f"not ({p}) or not ({q})"), context)
            assert eval_condition(parse_condition(f"not ({p} or {q})"), context) == \
                eval_condition(parse_condition(f"not ({p}) and not ({q})"), context)

    def test_formatted_text_evaluates_alike(self, make_context):
        """The canonical text of a condition evaluates like the condition itself"""
        rng = np.random.default_rng(11)
        for _ in range(300):
            expr = parse_condition(random_condition(rng, depth=3))
            context = random_state(rng, make_context)
            assert eval_condition(parse_condition(format_condition(expr)), context) == eval_condition(expr, context)
