"""Dialog engine: browsing sessions over an immutable site tree.

A session tracks the user's position (the frontier), the constraints
accumulated so far with their in-turn/out-of-turn provenance, and an event
log. Supplying an aspect — by clicking a link or uttering a term — runs
four steps in order:

1. mode: the aspect is in-turn when its facet is the one solicited at the
   frontier and its value is an available link; otherwise out-of-turn.
2. prune: keep, below the frontier, exactly the paths whose leaf carries
   the aspect. A prune down to zero pages is rejected and leaves the
   session untouched.
3. bypass: while the frontier solicits an already-constrained facet, the
   unique matching link is followed automatically.
4. vertical collapse: when a single page remains below the frontier and
   the site structure below the frontier is a plain chain (one option per
   level), the leaf is presented directly.

Step 4 deliberately checks the *original* structure, not the pruned view:
pruning the top level down to one surviving link still leaves the user on
that page to click through, which keeps out-of-turn input from teleporting
the session across levels that normally offer real choices.

Sessions are single-owner; distinct sessions may share one SiteTree freely.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    AtStartError,
    ConstraintConflictError,
    NoResultsError,
    TerminalSessionError,
    UnknownLabelError,
    UnknownTermError,
)
from .site import LeafPage, Position, SiteNode, SiteTree
from .vocab import AspectTerm, FunctionalDependency, Lexicon, TermValue, expand_terms


@dataclass(frozen=True)
class Constraint:
    term: TermValue
    mode: str  # "in-turn" | "out-of-turn"
    step: int


@dataclass(frozen=True)
class InteractionEvent:
    step: int
    kind: str  # click | utterance | back | what-may-i-say
    payload: str
    aspects: tuple[AspectTerm, ...]
    timestamp: float = field(compare=False, default=0.0)
    verification: bool = False


_Snapshot = tuple[Position, tuple[Constraint, ...], tuple[LeafPage, ...]]


class Session:
    """One user's dialog with a site."""

    def __init__(self, site: SiteTree) -> None:
        self.site = site
        self.constraints: list[Constraint] = []
        self.events: list[InteractionEvent] = []
        self._history: list[_Snapshot] = []
        self._frontier: Position = site.root
        self._remaining: tuple[LeafPage, ...] = site.leaf_set(site.root)
        self._normalize()

    # ------------------------------------------------------------------ state

    @property
    def frontier(self) -> Position:
        return self._frontier

    @property
    def terminal(self) -> bool:
        return isinstance(self._frontier, LeafPage)

    def remaining_leaves(self) -> tuple[LeafPage, ...]:
        return self._remaining

    def constraint_map(self) -> dict[str, str]:
        return {c.term.facet: c.term.value for c in self.constraints}

    def available_labels(self) -> list[str]:
        """Links presented at the frontier: edges with at least one page left."""
        if isinstance(self._frontier, LeafPage):
            return []
        depth = len(self._frontier.path)
        alive = {leaf.path[depth] for leaf in self._remaining}
        return [e.label for e in self._frontier.edges if e.label in alive]

    def fork(self) -> "Session":
        """Cheap copy for simulation; shares the site, drops history and events."""
        twin = object.__new__(Session)
        twin.site = self.site
        twin.constraints = list(self.constraints)
        twin.events = []
        twin._history = []
        twin._frontier = self._frontier
        twin._remaining = self._remaining
        return twin

    def summary(self) -> dict:
        """Wire-shaped view: input so far, links, remaining count, terminal page."""
        leaf = None
        if isinstance(self._frontier, LeafPage):
            leaf = {
                "id": self._frontier.id,
                "title": self._frontier.title,
                "url": self._frontier.url,
                "attributes": dict(self._frontier.attributes),
            }
        return {
            "constraints": [
                {"facet": c.term.facet, "value": c.term.value, "mode": c.mode, "step": c.step}
                for c in self.constraints
            ],
            "solicits": None if leaf else self._frontier.solicits,
            "links": self.available_labels(),
            "remainingLeafCount": len(self._remaining),
            "terminal": leaf is not None,
            "leaf": leaf,
        }

    # ------------------------------------------------------------- interaction

    def click(self, label: str, verification: bool = False) -> "Session":
        if isinstance(self._frontier, LeafPage):
            raise TerminalSessionError("session is at a terminal page", label=label)
        available = self.available_labels()
        if label not in available:
            raise UnknownLabelError(
                f"no link labeled {label!r} here", label=label, available=available
            )
        snapshot = self._snapshot()
        term = TermValue(self._frontier.solicits, label)
        aspect = AspectTerm(term=term, raw_token=label)
        self._apply_term(term)
        self._commit(snapshot, "click", label, (aspect,), verification)
        return self

    def utter(
        self,
        raw: str,
        lexicon: Lexicon,
        fds: Sequence[FunctionalDependency] = (),
        verification: bool = False,
    ) -> "Session":
        """Resolve, expand, and apply a whole utterance atomically."""
        aspects = expand_terms(lexicon.resolve(raw), fds)
        return self.utter_terms(aspects, payload=raw, verification=verification)

    def utter_terms(
        self,
        aspects: Sequence[AspectTerm],
        payload: str = "",
        verification: bool = False,
    ) -> "Session":
        """Apply pre-resolved aspects in order; any failure rolls the whole event back."""
        if not aspects:
            raise UnknownTermError("empty utterance", token="", segment=payload, suggestions=[])
        snapshot = self._snapshot()
        try:
            for aspect in aspects:
                self._apply_aspect_checked(aspect.term)
        except Exception:
            self._restore(snapshot)
            raise
        self._commit(snapshot, "utterance", payload or ", ".join(a.term.value for a in aspects),
                     tuple(aspects), verification)
        return self

    def apply_aspect(self, term: TermValue) -> "Session":
        """Single-aspect event; equivalent to uttering just this term."""
        return self.utter_terms([AspectTerm(term=term, raw_token=term.value)], payload=term.value)

    def back(self) -> "Session":
        if not self._history:
            raise AtStartError("at start; no interaction to undo")
        frontier, constraints, remaining = self._history.pop()
        self._frontier = frontier
        self.constraints = list(constraints)
        self._remaining = remaining
        self._log("back", "", ())
        return self

    def what_may_i_say(self, record: bool = False) -> dict[str, list[str]]:
        """Per unconstrained facet, the values still reachable from here.

        Every listed value prunes to a non-empty page set; a terminal
        session has nothing left to say and yields an empty map.
        """
        values: dict[str, list[str]] = {}
        if not isinstance(self._frontier, LeafPage):
            constrained = set(self.constraint_map())
            for facet in self.site.facets:
                if facet in constrained:
                    continue
                ordered: dict[str, None] = {}
                for leaf in self._remaining:
                    value = leaf.attributes.get(facet)
                    if value is not None:
                        ordered.setdefault(value)
                if ordered:
                    values[facet] = list(ordered)
        if record:
            self._log("what-may-i-say", "", ())
        return values

    # --------------------------------------------------------------- internals

    def is_in_turn(self, term: TermValue) -> bool:
        return (
            isinstance(self._frontier, SiteNode)
            and term.facet == self._frontier.solicits
            and term.value in self.available_labels()
        )

    def _apply_aspect_checked(self, term: TermValue) -> None:
        prior = self.constraint_map().get(term.facet)
        if prior == term.value:
            return  # idempotent re-specification
        if prior is not None:
            raise ConstraintConflictError(
                f"facet {term.facet!r} already constrained to {prior!r}; got {term.value!r}",
                facet=term.facet,
                values=[prior, term.value],
            )
        self._apply_term(term)

    def _apply_term(self, term: TermValue) -> None:
        mode = "in-turn" if self.is_in_turn(term) else "out-of-turn"
        kept = tuple(
            leaf for leaf in self._remaining if leaf.attributes.get(term.facet) == term.value
        )
        if not kept:
            raise NoResultsError(
                f"no results for {term.facet}={term.value}",
                facet=term.facet,
                value=term.value,
            )
        self.constraints.append(Constraint(term=term, mode=mode, step=len(self.events) + 1))
        self._remaining = kept
        self._normalize()

    def _normalize(self) -> None:
        self._bypass()
        self._collapse()

    def _bypass(self) -> None:
        cmap = self.constraint_map()
        while isinstance(self._frontier, SiteNode) and self._frontier.solicits in cmap:
            edge = self._frontier.edge(cmap[self._frontier.solicits])
            if edge is None:  # unreachable while remaining is non-empty
                break
            self._frontier = edge.child

    def _collapse(self) -> None:
        if isinstance(self._frontier, LeafPage) or len(self._remaining) != 1:
            return
        leaf = self._remaining[0]
        position: Position = self._frontier
        for _ in leaf.path[len(self._frontier.path):]:
            if isinstance(position, LeafPage):
                break
            if len(position.edges) != 1:
                return  # a real choice exists at this level; keep the page
            position = position.edges[0].child
        self._frontier = leaf

    def _snapshot(self) -> _Snapshot:
        return (self._frontier, tuple(self.constraints), self._remaining)

    def _restore(self, snapshot: _Snapshot) -> None:
        self._frontier, constraints, self._remaining = snapshot
        self.constraints = list(constraints)

    def _commit(
        self,
        snapshot: _Snapshot,
        kind: str,
        payload: str,
        aspects: tuple[AspectTerm, ...],
        verification: bool,
    ) -> None:
        self._history.append(snapshot)
        self._log(kind, payload, aspects, verification)

    def _log(
        self,
        kind: str,
        payload: str,
        aspects: tuple[AspectTerm, ...],
        verification: bool = False,
    ) -> None:
        self.events.append(
            InteractionEvent(
                step=len(self.events) + 1,
                kind=kind,
                payload=payload,
                aspects=aspects,
                timestamp=time.time(),
                verification=verification,
            )
        )


def start_session(site: SiteTree) -> Session:
    """Fresh session at the root with every page still reachable."""
    return Session(site)
