import pytest

from app.core.condition import TRUE
from app.core.exceptions import GrammarError
from app.core.fixtures import load_grammar_asset
from app.core.grammar import Direction, ListMode, applicable_rules, parse_grammar, validate

EXAMPLE_GRAMMAR = """
# example grammar
root a
rule a + b
rule a + c d
rule c - f
"""


@pytest.fixture
def example():
    return parse_grammar(EXAMPLE_GRAMMAR)


@pytest.fixture
def summary():
    return load_grammar_asset("summary.grammar")


class TestParseGrammar:

    def test_example_grammar(self, example):
        """Three rules in file order with default conditions"""
        assert example.root == "a"
        assert [str(rule) for rule in example.rules] == ["a + b", "a + c d", "c - f"]
        assert [rule.id for rule in example.rules] == [0, 1, 2]
        assert all(rule.condition == TRUE for rule in example.rules)
        assert example.rules[2].direction is Direction.LEFT
        assert example.rule(1).children == ("c", "d")

    def test_index(self, example):
        """The index groups rule ids by (parent, direction)"""
        assert [r.id for r in example.rules_for("a", Direction.RIGHT)] == [0, 1]
        assert [r.id for r in example.rules_for("c", Direction.LEFT)] == [2]
        assert example.rules_for("a", Direction.LEFT) == []

    def test_root_only(self):
        """A grammar may have zero rules"""
        grammar = parse_grammar("root a\n")
        assert grammar.rules == ()

    def test_list_modes_and_conditions(self):
        """Direction markers carry list modes; conditions keep their text and line"""
        grammar = parse_grammar("root a\n\nrule a +& b :: new(x)\nrule a -| c\n")
        first, second = grammar.rules
        assert (first.direction, first.list_mode) == (Direction.RIGHT, ListMode.AND)
        assert (second.direction, second.list_mode) == (Direction.LEFT, ListMode.OR)
        assert first.condition_text == "new(x)"
        assert first.line == 3

    def test_rewrites(self):
        """Rewrite directives are kept in file order"""
        grammar = parse_grammar("root flight\nrewrite flight -> flights :: gt(n, 1)\nrewrite a -> b\n")
        assert [(r.source, r.replacement) for r in grammar.rewrites] == [("flight", "flights"), ("a", "b")]

    @pytest.mark.parametrize("text, line", [
        ("root a\nrule a ? b\n", 2),
        ("root a\nrule a +\n", 2),
        ("root a\nroot b\n", 2),
        ("root a\nrule a + b :: new(x) and\n", 2),
        ("root a\nrule a + b :: frob(x)\n", 2),
        ("root a\n# fine\nrule a + $x to $x\n", 3),
        ("root a\nrewrite a -> a\n", 2),
        ("root a\nrewrite a b\n", 2),
        ("root a\nlexicon a\n", 2),
    ])
    def test_errors_name_the_line(self, text, line):
        """Malformed lines are reported with their line number"""
        with pytest.raises(GrammarError) as info:
            parse_grammar(text)
        assert info.value.line == line
        assert str(info.value).startswith(f"line {line}:")

    def test_missing_root(self):
        """A grammar without a root declaration is rejected"""
        with pytest.raises(GrammarError):
            parse_grammar("rule a + b\n")

    def test_deterministic(self):
        """Identical text parses to identical grammars"""
        assert parse_grammar(EXAMPLE_GRAMMAR) == parse_grammar(EXAMPLE_GRAMMAR)


class TestApplicableRules:

    def test_both_rules(self, example, make_context):
        """Both a-rules apply to a fresh root"""
        rules = applicable_rules(example, "a", Direction.RIGHT, make_context())
        assert [r.id for r in rules] == [0, 1]

    def test_used_rule_excluded(self, example, make_context):
        """A rule already used at the node is excluded"""
        rules = applicable_rules(example, "a", Direction.RIGHT, make_context(), used_rule_ids={0})
        assert [r.id for r in rules] == [1]

    def test_old_rule_filtered_when_new(self, summary, make_context):
        """With city-fr new, the old-information 'from' rule does not apply at flights"""
        context = make_context({"count": ("several", "old"), "city-fr": ("new-york", "new")})
        rules = applicable_rules(summary, "flights", Direction.RIGHT, context)
        texts = [str(r) for r in rules]
        assert "flights + from $city-fr" not in texts
        assert all(r.parent == "flights" for r in rules)
        opening = [str(r) for r in applicable_rules(summary, "there", Direction.RIGHT, context)]
        assert opening == ["there + are flights that"]
        leave = applicable_rules(summary, "leave", Direction.RIGHT, context)
        assert "leave + from $city-fr" in [str(r) for r in leave]

    def test_mentioned_attribute_excluded(self, summary, make_context):
        """Rules whose children mention an attribute already in the tree are excluded"""
        context = make_context({"city-fr": ("new-york", "old"), "city-to": ("pittsburgh", "old")})
        rules = applicable_rules(summary, "flights", Direction.RIGHT, context, mentioned_attrs={"city-fr"})
        assert not any("city-fr" in r.attributes for r in rules)
        assert any("city-to" in r.attributes for r in rules)

    def test_monotone_in_exclusions(self, summary, make_context):
        """Growing the exclusion sets never adds rules"""
        context = make_context({"city-fr": ("new-york", "old"), "air": ("delta", "old")})
        full = applicable_rules(summary, "flights", Direction.RIGHT, context)
        used = applicable_rules(summary, "flights", Direction.RIGHT, context, used_rule_ids={full[0].id})
        both = applicable_rules(summary, "flights", Direction.RIGHT, context,
                                used_rule_ids={full[0].id}, mentioned_attrs={"air"})
        assert set(both) <= set(used) <= set(full)

    def test_returned_conditions_hold(self, summary, make_context):
        """Every returned rule's condition evaluates true"""
        context = make_context({"city-to": ("pittsburgh", "new"), "time-arr": ("noon", "new")})
        for parent in ("there", "flights", "that", "arrive"):
            for rule in applicable_rules(summary, parent, Direction.RIGHT, context):
                assert rule.condition.evaluate(context)

    def test_evaluation_error_skips_rule(self, make_context):
        """A rule whose condition cannot be evaluated is skipped with a diagnostic"""
        grammar = parse_grammar("root a\nrule a + b :: gt(n, 1)\nrule a + c\n")
        diagnostics = []
        rules = applicable_rules(grammar, "a", Direction.RIGHT, make_context({"n": ("many", "old")}),
                                 diagnostics=diagnostics)
        assert [r.id for r in rules] == [1]
        assert [d.code for d in diagnostics] == ["condition-error"]
        assert diagnostics[0].line == 2


class TestValidate:

    def test_example_grammar_is_clean(self, example):
        """Terminal children are fine outside strict mode"""
        assert validate(example) == []

    def test_strict_reports_terminals(self, example):
        """Strict mode reports the terminal tokens b, d and f"""
        found = validate(example, strict=True)
        assert {d.code for d in found} == {"terminal-token"}
        assert len(found) == 3

    def test_root_cannot_expand(self):
        """A root heading no rule is reported"""
        found = validate(parse_grammar("root a\nrule b + c\n"))
        codes = [d.code for d in found]
        assert "root-cannot-expand" in codes
        assert "unreachable-rule" in codes

    def test_ungenerable_condition_attribute(self):
        """A condition on an attribute no rule generates is reported"""
        found = validate(parse_grammar("root flights\nrule flights + from $city-fr :: old(date-dep)\n"))
        assert [d.code for d in found] == ["ungenerable-attribute"]
        assert "$date-dep" in found[0].message

    def test_summary_grammar_is_clean(self, summary):
        """The shipped summary grammar validates without diagnostics"""
        assert validate(summary) == []
