"""Utterance vocabulary: lexicon building, resolution, and rule expansion.

The lexicon maps normalized tokens (edge labels plus declared synonyms and
abbreviations) to (facet, value) aspect terms. Raw utterances are split on
commas, then matched greedily against the longest known multi-word token,
so "Democratic Senators" yields two aspects without any NLP machinery.
Functional dependencies ("Junior" implies "Senate") expand resolved terms
to their closure.

Vocabulary interchange format ("extempore-vocab/1")::

    {"format": "extempore-vocab/1",
     "synonyms":      [{"token": ..., "facet": ..., "value": ...}, ...],
     "abbreviations": [ ...same shape... ],
     "fds": [{"facet": ..., "value": ..., "implies": [{"facet": ..., "value": ...}]}]}
"""

from __future__ import annotations

import difflib
import json
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence, Union

from .errors import (
    AmbiguousTermError,
    ConstraintConflictError,
    DocumentParseError,
    UnknownTermError,
    VocabularyError,
)
from .site import SiteTree

VOCAB_FORMAT = "extempore-vocab/1"

_PUNCT_TABLE = str.maketrans("", "", ".,;:!?\"'()[]")


class TermValue(NamedTuple):
    """One aspect of partial information: a facet bound to a canonical value."""

    facet: str
    value: str


@dataclass(frozen=True)
class AspectTerm:
    """A resolved term plus how it was obtained."""

    term: TermValue
    origin: str = "literal"  # literal | fd-implied
    raw_token: str = ""


@dataclass(frozen=True)
class FunctionalDependency:
    antecedent: TermValue
    implied: tuple[TermValue, ...]


def normalize_token(text: str) -> str:
    """Casefold, drop punctuation (hyphens survive), collapse whitespace."""
    return " ".join(text.translate(_PUNCT_TABLE).casefold().split())


@dataclass
class Lexicon:
    """Normalized token -> candidate terms; built once per site, immutable after."""

    entries: dict[str, list[tuple[TermValue, str]]] = field(default_factory=dict)
    max_words: int = 1

    def _add(self, token: str, term: TermValue, kind: str) -> None:
        key = normalize_token(token)
        if not key:
            raise VocabularyError(f"entry {token!r} normalizes to nothing", token=token)
        bucket = self.entries.setdefault(key, [])
        if all(existing != term for existing, _ in bucket):
            bucket.append((term, kind))
        self.max_words = max(self.max_words, len(key.split()))

    def candidates(self, token: str) -> list[TermValue]:
        return [term for term, _ in self.entries.get(normalize_token(token), [])]

    def suggestions(self, token: str, limit: int = 3) -> list[str]:
        return difflib.get_close_matches(normalize_token(token), self.entries, n=limit)

    def resolve(self, raw: str) -> list[AspectTerm]:
        """Resolve an utterance to aspect terms, in utterance order.

        Commas are hard separators; inside a segment the longest known token
        wins. Unknown or ambiguous tokens raise without any partial result.
        """
        terms: list[AspectTerm] = []
        for segment in raw.split(","):
            segment = segment.strip()
            if not segment:
                continue
            words = normalize_token(segment).split()
            i = 0
            while i < len(words):
                match = None
                for span in range(min(self.max_words, len(words) - i), 0, -1):
                    token = " ".join(words[i : i + span])
                    if token in self.entries:
                        match = token
                        break
                if match is None:
                    offending = words[i]
                    raise UnknownTermError(
                        f"no vocabulary entry matches {offending!r} in segment {segment!r}",
                        token=offending,
                        segment=segment,
                        suggestions=self.suggestions(offending),
                    )
                bucket = self.entries[match]
                if len(bucket) > 1:
                    raise AmbiguousTermError(
                        f"token {match!r} is ambiguous",
                        token=match,
                        candidates=[{"facet": t.facet, "value": t.value} for t, _ in bucket],
                    )
                terms.append(AspectTerm(term=bucket[0][0], raw_token=match))
                i += len(match.split())
        return terms


def render_terms(terms: Iterable[Union[AspectTerm, TermValue]]) -> str:
    """Comma-join canonical values; resolving the result restores the terms."""
    values = [(t.term.value if isinstance(t, AspectTerm) else t.value) for t in terms]
    return ", ".join(values)


def _check_pair(tree: SiteTree, facet: str, value: str, context: str, known: set) -> TermValue:
    term = TermValue(facet, value)
    if term not in known:
        raise VocabularyError(
            f"{context} references unknown pair ({facet!r}, {value!r})",
            facet=facet,
            value=value,
            entry=context,
        )
    return term


def build_lexicon(tree: SiteTree, vocabulary: Union[str, dict, None] = None) -> Lexicon:
    """Collect every edge label, then layer on declared synonyms/abbreviations.

    Entries referencing (facet, value) pairs absent from the tree fail the
    build, naming the entry.
    """
    document = _coerce_vocab(vocabulary)
    lexicon = Lexicon()
    known = set()
    for facet, label in tree.label_pairs():
        term = TermValue(facet, label)
        known.add(term)
        lexicon._add(label, term, "label")
    for kind in ("synonyms", "abbreviations"):
        for row in document.get(kind, []):
            term = _check_pair(
                tree, row["facet"], row["value"], f"{kind[:-1]} {row['token']!r}", known
            )
            lexicon._add(row["token"], term, kind[:-1])
    return lexicon


def parse_fds(tree: SiteTree, vocabulary: Union[str, dict, None]) -> tuple[FunctionalDependency, ...]:
    """Load functional dependencies, checking targets exist and the graph is acyclic."""
    document = _coerce_vocab(vocabulary)
    known = {TermValue(f, v) for f, v in tree.label_pairs()}
    fds = []
    for row in document.get("fds", []):
        antecedent = _check_pair(tree, row["facet"], row["value"], "fd antecedent", known)
        implied = []
        for target in row.get("implies", []):
            term = _check_pair(tree, target["facet"], target["value"], "fd implication", known)
            if term.facet == antecedent.facet:
                raise VocabularyError(
                    f"fd on {antecedent} implies its own facet {term.facet!r}",
                    facet=term.facet,
                )
            implied.append(term)
        fds.append(FunctionalDependency(antecedent=antecedent, implied=tuple(implied)))

    graph: dict[TermValue, list[TermValue]] = {}
    for fd in fds:
        graph.setdefault(fd.antecedent, []).extend(fd.implied)
    state: dict[TermValue, int] = {}  # 1 = on stack, 2 = done

    def visit(node: TermValue) -> None:
        state[node] = 1
        for nxt in graph.get(node, []):
            mark = state.get(nxt)
            if mark == 1:
                raise VocabularyError(f"cyclic functional dependencies through {nxt}", term=list(nxt))
            if mark is None:
                visit(nxt)
        state[node] = 2

    for node in graph:
        if node not in state:
            visit(node)
    return tuple(fds)


def _coerce_vocab(vocabulary: Union[str, dict, None]) -> dict:
    if vocabulary is None:
        return {}
    if isinstance(vocabulary, str):
        try:
            vocabulary = json.loads(vocabulary)
        except json.JSONDecodeError as exc:
            raise DocumentParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(vocabulary, dict):
        raise DocumentParseError("vocabulary document must be an object")
    if vocabulary.get("format") != VOCAB_FORMAT:
        raise DocumentParseError(
            f"unsupported vocabulary format {vocabulary.get('format')!r}; expected {VOCAB_FORMAT!r}"
        )
    return vocabulary


def expand_terms(
    terms: Sequence[AspectTerm], fds: Sequence[FunctionalDependency]
) -> list[AspectTerm]:
    """Close a term list under the dependencies.

    Implied terms are appended right after their antecedent with
    origin="fd-implied"; duplicates keep their first occurrence. Two
    different values for one facet abort with a conflict.
    """
    fd_index: dict[TermValue, tuple[TermValue, ...]] = {}
    for fd in fds:
        fd_index[fd.antecedent] = fd_index.get(fd.antecedent, ()) + fd.implied

    out: list[AspectTerm] = []
    chosen: dict[str, TermValue] = {}

    def add(aspect: AspectTerm) -> None:
        term = aspect.term
        prior = chosen.get(term.facet)
        if prior is not None:
            if prior != term:
                raise ConstraintConflictError(
                    f"facet {term.facet!r} receives two values: {prior.value!r} and {term.value!r}",
                    facet=term.facet,
                    values=[prior.value, term.value],
                )
            return
        chosen[term.facet] = term
        out.append(aspect)
        for implied in fd_index.get(term, ()):
            add(AspectTerm(term=implied, origin="fd-implied", raw_token=aspect.raw_token))

    for aspect in terms:
        add(aspect)
    return out
