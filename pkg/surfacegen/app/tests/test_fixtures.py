import pytest

from app.core.beam import SearchConfig, enumerate_all, generate
from app.core.dialog import Novelty, derive_context
from app.core.exceptions import FixtureError
from app.core.fixtures import (
    FIXTURES,
    SUMMARY_PATTERNS,
    fixture_model,
    load_corpus,
    load_fixture,
    load_dialog_history,
    summary_sentence_fixture,
)
from app.core.grammar import validate
from app.core.realizer import apply_rewrites, deinstantiate, instantiate, is_attribute, realize


RELATIVE_CLAUSE_STATES = ["several-flights-new-time", "no-flights-new-airline", "one-flight-new-time", "all-old"]


def assert_relative_clause(tokens, context):
    """`that` appears once exactly when something is new, with old attributes before it."""
    anything_new = any(entry.novelty is Novelty.NEW for _, entry in context.entries())
    assert tokens.count("that") == (1 if anything_new else 0), tokens
    boundary = tokens.index("that") if anything_new else len(tokens)
    for position, token in enumerate(tokens):
        if not is_attribute(token) or token == "$count":
            continue
        novelty = context.lookup(token).novelty
        assert (novelty is Novelty.NEW) == (position > boundary), (token, tokens)


def best_tokens(fixture, **options):
    result = generate(fixture.grammar, fixture_model(), fixture.context, SearchConfig(**options))
    assert not result.failed, [str(d) for d in result.diagnostics]
    return result.best.tokens


class TestSummaryGrammar:

    def test_size(self):
        """The summary grammar is a small hand-written rule set"""
        grammar = load_fixture("several-flights-new-time").grammar
        assert 45 <= len(grammar.rules) <= 55
        assert grammar.root == "there"

    def test_validates(self):
        """The summary grammar has no validation findings"""
        assert validate(load_fixture("all-old").grammar) == []

    def test_mandatory_attributes_generable(self):
        """Every A1 attribute of the shipped states is mentioned by some rule"""
        for name, (grammar_file, _) in FIXTURES.items():
            if grammar_file != "summary.grammar":
                continue
            fixture = load_fixture(name)
            mentioned = set().union(*(rule.attributes for rule in fixture.grammar.rules))
            assert fixture.context.mandatory_names <= mentioned


class TestSummarySentences:

    @pytest.mark.parametrize("name", sorted(SUMMARY_PATTERNS))
    def test_pattern(self, name):
        """The best delexicalized realization matches the expected pattern"""
        assert " ".join(best_tokens(summary_sentence_fixture(name))) == SUMMARY_PATTERNS[name]

    @pytest.mark.parametrize("name", RELATIVE_CLAUSE_STATES)
    def test_relative_clause_position(self, name):
        """Old attributes come before `that`, new ones after it, in every k-best realization"""
        fixture = load_fixture(name)
        result = generate(fixture.grammar, fixture_model(), fixture.context, SearchConfig(k_best=64))
        assert len(result.realizations) > 1
        for realization in result.realizations:
            assert_relative_clause(realization.tokens, fixture.context)

    @pytest.mark.parametrize("name", RELATIVE_CLAUSE_STATES)
    def test_relative_clause_structure(self, name):
        """Tokens reachable outside `that` only bring in old attributes, those inside only new ones"""
        fixture = load_fixture(name)
        grammar, context = fixture.grammar, fixture.context

        def attributes_below(start, stop):
            seen, frontier, found = {start}, [start], set()
            while frontier:
                token = frontier.pop()
                for rule in grammar.rules:
                    if rule.parent != token or not rule.condition.evaluate(context):
                        continue
                    found |= rule.attributes
                    for child in rule.children:
                        if child not in seen and child != stop:
                            seen.add(child)
                            frontier.append(child)
            return found - {"count"}

        novelty = {entry.name: entry.novelty for _, entry in context.entries()}
        assert all(novelty[a] is Novelty.OLD for a in attributes_below(grammar.root, "that"))
        assert all(novelty[a] is Novelty.NEW for a in attributes_below("that", None))

    def test_relative_clause_every_tree(self):
        """No A-complete tree of the grammar puts an old attribute after `that`"""
        fixture = load_fixture("several-flights-new-time")
        result = enumerate_all(fixture.grammar, fixture.context, expand_complete=False)
        sequences = {tree.tokens for tree in result.trees}
        assert tuple(SUMMARY_PATTERNS["several-flights-new-time"].split()) in sequences
        for tokens in sequences:
            assert_relative_clause(tokens, fixture.context)

    def test_all_old(self):
        """With nothing new there is no relative clause"""
        assert "that" not in best_tokens(load_fixture("all-old"))

    def test_one_flight(self):
        """A single flight uses the singular forms"""
        fixture = load_fixture("one-flight-new-time")
        result = generate(fixture.grammar, fixture_model(), fixture.context)
        realized = realize(result, fixture.grammar, fixture.context)
        assert realized.best.surface == (
            "there is one flight from new-york to pittsburgh on september nineteenth that leaves around ten A M")

    def test_rewrites_idempotent(self):
        """Applying the summary rewrites twice changes nothing more"""
        fixture = load_fixture("one-flight-new-time")
        once = apply_rewrites(best_tokens(fixture), fixture.grammar.rewrites, fixture.context)
        assert apply_rewrites(once, fixture.grammar.rewrites, fixture.context) == once

    def test_deinstantiate(self):
        """De-instantiating the surface gives back the generated tokens"""
        fixture = summary_sentence_fixture("no-flights-new-airline")
        tokens = best_tokens(fixture)
        assert deinstantiate(instantiate(tokens, fixture.context), fixture.context) == tokens

    def test_empty_state(self):
        """An empty A1 realizes the root word alone"""
        assert best_tokens(load_fixture("empty")) == ("there",)


class TestLoading:

    def test_unknown_fixture(self):
        """Unknown fixture names are rejected"""
        with pytest.raises(FixtureError):
            load_fixture("no-such-fixture")
        with pytest.raises(FixtureError):
            summary_sentence_fixture("all-old")

    def test_corpus(self):
        """The corpus has a few hundred utterances covering every grammar token"""
        corpus = load_corpus()
        assert len(corpus) >= 200
        words = {token for line in corpus for token in line}
        grammar = load_fixture("all-old").grammar
        tokens = {grammar.root} | {t for rule in grammar.rules for t in (rule.parent,) + rule.children}
        assert tokens <= words

    def test_dialog_history_context(self):
        """The shipped history derives the no-flights-new-airline state"""
        fixture = load_fixture("no-flights-new-airline")
        context = derive_context(load_dialog_history(), fixture.context.mandatory_names)
        assert context == fixture.context
