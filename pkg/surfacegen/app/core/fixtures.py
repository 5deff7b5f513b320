"""Shipped air-travel fixtures: grammars, the synthetic corpus and dialog states."""
import os
from dataclasses import dataclass
from functools import lru_cache

from app.core.dialog import DialogContext, parse_history, parse_state
from app.core.exceptions import FixtureError
from app.core.grammar import Grammar, parse_grammar
from app.core.ngram import read_corpus, train

ASSETS_DIR = os.path.join(os.path.dirname(__file__), '..', 'assets')
GRAMMAR_DIR = os.path.join(ASSETS_DIR, 'grammars')
STATE_DIR = os.path.join(ASSETS_DIR, 'states')
HISTORY_DIR = os.path.join(ASSETS_DIR, 'histories')

SUMMARY_GRAMMAR_PATH = os.path.join(GRAMMAR_DIR, 'summary.grammar')
SUMMARY_CORPUS_PATH = os.path.join(ASSETS_DIR, 'corpora', 'summary.corpus')
DIALOG_HISTORY_PATH = os.path.join(HISTORY_DIR, 'flight-search.history')

# fixture name -> (grammar file, state file)
FIXTURES = {
    "several-flights-new-time": ("summary.grammar", "several-flights-new-time.state"),
    "no-flights-new-airline": ("summary.grammar", "no-flights-new-airline.state"),
    "one-flight-new-time": ("summary.grammar", "one-flight-new-time.state"),
    "all-old": ("summary.grammar", "all-old.state"),
    "empty": ("summary.grammar", "empty.state"),
    "unreachable-date": ("attributes.grammar", "unreachable-date.state"),
    "attributes": ("attributes.grammar", "attributes.state"),
}

# Expected delexicalized output of the summary fixtures.
SUMMARY_PATTERNS = {
    "several-flights-new-time":
        "there are $count flights from $city-fr to $city-to on $date-dep that leave around $time-dep",
    "no-flights-new-airline":
        "there are $count flights from $city-fr to $city-to on $date-dep around $time-dep that are served by $air",
}


@dataclass(frozen=True)
class Fixture:
    name: str
    grammar: Grammar
    corpus: tuple
    context: DialogContext


def _read(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return handle.read()
    except OSError as exc:
        raise FixtureError(f"missing fixture asset {os.path.basename(path)}: {exc}") from exc


def grammar_path(file_name):
    return os.path.join(GRAMMAR_DIR, file_name)


def state_path(file_name):
    return os.path.join(STATE_DIR, file_name)


def load_grammar_asset(file_name):
    return parse_grammar(_read(grammar_path(file_name)))


def load_state_asset(file_name):
    return parse_state(_read(state_path(file_name)))


def load_corpus():
    return tuple(read_corpus(_read(SUMMARY_CORPUS_PATH)))


def load_dialog_history():
    return parse_history(_read(DIALOG_HISTORY_PATH))


@lru_cache(maxsize=None)
def fixture_model():
    """The trigram model trained on the shipped summary corpus (default weights)."""
    return train(load_corpus())


def load_fixture(name):
    """Bundle the grammar, corpus and dialog context of a named fixture."""
    if name not in FIXTURES:
        raise FixtureError(f"unknown fixture {name!r} (known: {', '.join(sorted(FIXTURES))})")
    grammar_file, state_file = FIXTURES[name]
    return Fixture(name, load_grammar_asset(grammar_file), load_corpus(), load_state_asset(state_file))


def summary_sentence_fixture(state_name):
    """Fixture for one of the summary sentence states whose expected pattern is known."""
    if state_name not in SUMMARY_PATTERNS:
        raise FixtureError(f"unknown summary state {state_name!r} (known: {', '.join(sorted(SUMMARY_PATTERNS))})")
    return load_fixture(state_name)
