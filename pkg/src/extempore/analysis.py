"""Interaction analytics: token policy, sequence classes, minima, curves.

The counting policy is deliberately biased against out-of-turn interaction:
an utterance's aspects are labeled by simulating every application order
and keeping the order with the most in-turn labels, so an aspect only
counts as out-of-turn when *no* ordering could have supplied it by
clicking. Sequence classes (I, O, IO, OI, M) describe the run-collapsed
shape of a session's token string.

Minimum-interaction counts are exact: a memoized shortest-path search over
engine states, with two regimes:

* in-turn-only - clicks cost 1, back clicks are free. A set-valued task is
  an audit: each top-level value must be driven to a page below it from
  which the task's constraint conjunction holds for every page underneath,
  or fails for every page underneath. Audits of distinct top-level
  subtrees share no clicks, so their minima add.
* out-of-turn-allowed - each supplied aspect costs 1; single-leaf tasks
  end with a mandatory in-turn input which is free; set-valued tasks end
  when the surviving top-level links equal the answer set exactly.

Log records travel as "extempore-log/1" documents; token labels in an
emitted document always come from replaying it under this policy.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import (
    DocumentParseError,
    ExtemporeError,
    ReplayError,
    TaskError,
    UnsatisfiableTaskError,
)
from .session import InteractionEvent, Session
from .site import LeafPage, SiteTree
from .vocab import AspectTerm, TermValue

LOG_FORMAT = "extempore-log/1"
TASK_FORMAT = "extempore-task/1"

IN_TURN_ONLY = "in-turn-only"
OUT_OF_TURN_ALLOWED = "out-of-turn-allowed"
REGIMES = (IN_TURN_ONLY, OUT_OF_TURN_ALLOWED)

SINGLE_LEAF = "single-leaf"
TOP_LEVEL_SET = "top-level-set"

EVENT_KINDS = ("click", "utterance", "back", "what-may-i-say")


# --------------------------------------------------------------------- tokens


def tokenize_aspects(state_before: Session, aspects: Sequence[AspectTerm]) -> list[str]:
    """Label an utterance's aspects I/O under the deprecating policy.

    Simulates every application order from ``state_before``; the order with
    the most in-turn labels wins, ties preferring I-first token strings and
    then the earliest order by original aspect position.
    """
    n = len(aspects)
    if n == 0:
        return []
    best_key: tuple | None = None
    best_tokens: list[str] = []
    for perm in itertools.permutations(range(n)):
        sim = state_before.fork()
        tokens: list[str] = []
        ok = True
        for idx in perm:
            term = aspects[idx].term
            token = "I" if sim.is_in_turn(term) else "O"
            try:
                sim.utter_terms([AspectTerm(term=term)])
            except ExtemporeError:
                ok = False
                break
            tokens.append(token)
        if not ok:
            continue
        key = (-tokens.count("I"), tuple(0 if t == "I" else 1 for t in tokens))
        if best_key is None or key < best_key:
            best_key = key
            best_tokens = tokens
    if best_key is None:
        raise ReplayError("no application order of the aspects succeeds")
    return best_tokens


def event_tokens(state_before: Session, event: Union[InteractionEvent, "EventRecord"]) -> list[str]:
    """Tokens contributed by one event; verification events contribute none."""
    if event.verification:
        return []
    if event.kind == "click":
        return ["I"]
    if event.kind == "utterance":
        return tokenize_aspects(state_before, event.aspects)
    return []


# ------------------------------------------------------------ classification


@dataclass(frozen=True)
class SequenceClass:
    category: str  # I | O | IO | OI | M
    pattern: str  # run-collapsed token string


def classify_sequence(tokens: Sequence[str]) -> SequenceClass:
    """Run-collapse a token string and name its class."""
    if not tokens:
        raise ValueError("cannot classify an empty token sequence")
    if any(t not in ("I", "O") for t in tokens):
        raise ValueError(f"tokens must be 'I' or 'O', got {list(tokens)!r}")
    pattern = "".join(t for i, t in enumerate(tokens) if i == 0 or t != tokens[i - 1])
    category = pattern if pattern in ("I", "O", "IO", "OI") else "M"
    return SequenceClass(category=category, pattern=pattern)


# ------------------------------------------------------------------- records


@dataclass(frozen=True)
class EventRecord:
    """One interaction-log entry, the unit of replay."""

    step: int
    kind: str
    payload: str
    aspects: tuple[AspectTerm, ...] = ()
    verification: bool = False


def session_records(session: Session) -> list[EventRecord]:
    return [
        EventRecord(
            step=e.step,
            kind=e.kind,
            payload=e.payload,
            aspects=e.aspects,
            verification=e.verification,
        )
        for e in session.events
    ]


@dataclass
class ReplayResult:
    session: Session
    tokens_per_event: list[list[str]]
    counts: list[int]
    summaries: list[dict]

    @property
    def tokens(self) -> list[str]:
        return [t for ts in self.tokens_per_event for t in ts]


def replay(site: SiteTree, records: Sequence[EventRecord]) -> ReplayResult:
    """Re-run a log against a fresh session, labeling each event as it goes."""
    session = Session(site)
    tokens_per_event: list[list[str]] = []
    counts: list[int] = []
    summaries: list[dict] = []
    for index, record in enumerate(records):
        try:
            tokens = event_tokens(session, record)
            if record.kind == "click":
                session.click(record.payload, verification=record.verification)
            elif record.kind == "utterance":
                session.utter_terms(
                    record.aspects, payload=record.payload, verification=record.verification
                )
            elif record.kind == "back":
                session.back()
            elif record.kind == "what-may-i-say":
                session.what_may_i_say(record=True)
            else:
                raise DocumentParseError(f"unknown event kind {record.kind!r}")
        except ExtemporeError as exc:
            raise ReplayError(
                f"replay failed at step {index + 1}: {exc.message}",
                step=index + 1,
                cause=exc.to_payload(),
            ) from exc
        tokens_per_event.append(tokens)
        counts.append(len(session.remaining_leaves()))
        summaries.append(session.summary())
    return ReplayResult(
        session=session, tokens_per_event=tokens_per_event, counts=counts, summaries=summaries
    )


def log_document(site: SiteTree, records: Sequence[EventRecord]) -> dict:
    """Emit the canonical log document, with policy tokens per event."""
    result = replay(site, records)
    events = []
    for record, tokens in zip(records, result.tokens_per_event):
        row = {
            "step": record.step,
            "kind": record.kind,
            "payload": record.payload,
            "aspects": [
                {"facet": a.term.facet, "value": a.term.value, "origin": a.origin}
                for a in record.aspects
            ],
            "mode_tokens": tokens,
        }
        if record.verification:
            row["verification"] = True
        events.append(row)
    return {"format": LOG_FORMAT, "site": site.site_id, "events": events}


def parse_log_document(document: Union[str, dict]) -> list[EventRecord]:
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise DocumentParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict) or document.get("format") != LOG_FORMAT:
        raise DocumentParseError(
            f"unsupported log format {document.get('format') if isinstance(document, dict) else document!r};"
            f" expected {LOG_FORMAT!r}"
        )
    events = document.get("events")
    if not isinstance(events, list):
        raise DocumentParseError("'events' must be a list")
    records = []
    for i, row in enumerate(events):
        if not isinstance(row, dict):
            raise DocumentParseError(f"event {i} must be an object")
        kind = row.get("kind")
        if kind not in EVENT_KINDS:
            raise DocumentParseError(f"event {i} has unknown kind {kind!r}")
        aspects = tuple(
            AspectTerm(
                term=TermValue(a["facet"], a["value"]),
                origin=a.get("origin", "literal"),
            )
            for a in row.get("aspects", [])
        )
        records.append(
            EventRecord(
                step=int(row.get("step", i + 1)),
                kind=kind,
                payload=str(row.get("payload", "")),
                aspects=aspects,
                verification=bool(row.get("verification", False)),
            )
        )
    return records


# --------------------------------------------------------------------- tasks


@dataclass(frozen=True)
class TaskSpec:
    """A machine-checkable information-finding task over one site."""

    kind: str  # single-leaf | top-level-set
    constraints: tuple[TermValue, ...]

    def satisfies(self, leaf: LeafPage) -> bool:
        return all(leaf.attributes.get(f) == v for f, v in self.constraints)

    def answer_leaf(self, site: SiteTree) -> LeafPage:
        matches = [leaf for leaf in site.leaf_index.values() if self.satisfies(leaf)]
        if not matches:
            raise UnsatisfiableTaskError(
                "no page satisfies the task constraints",
                constraints=[list(t) for t in self.constraints],
            )
        if len(matches) > 1:
            raise TaskError(
                f"single-leaf task matches {len(matches)} pages",
                matches=[leaf.id for leaf in matches],
            )
        return matches[0]

    def answer_values(self, site: SiteTree) -> list[str]:
        """Top-level values with at least one satisfying page underneath."""
        out = []
        for edge in site.root.edges:
            if any(self.satisfies(leaf) for leaf in site.leaf_set(edge.child)):
                out.append(edge.label)
        return out


def load_task(document: Union[str, dict]) -> TaskSpec:
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise DocumentParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict) or document.get("format") != TASK_FORMAT:
        raise DocumentParseError(f"task document must carry format {TASK_FORMAT!r}")
    kind = document.get("kind")
    if kind not in (SINGLE_LEAF, TOP_LEVEL_SET):
        raise DocumentParseError(f"unknown task kind {kind!r}")
    rows = document.get("constraints")
    if not isinstance(rows, list) or not rows:
        raise DocumentParseError("'constraints' must be a non-empty list")
    constraints = tuple(TermValue(r["facet"], r["value"]) for r in rows)
    return TaskSpec(kind=kind, constraints=constraints)


def task_document(task: TaskSpec) -> dict:
    return {
        "format": TASK_FORMAT,
        "kind": task.kind,
        "constraints": [{"facet": f, "value": v} for f, v in task.constraints],
    }


# ---------------------------------------------------- minimum interactions


def min_interactions(site: SiteTree, task: TaskSpec, regime: str) -> int:
    """Fewest counted interactions that complete the task under the regime."""
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}")
    if task.kind == SINGLE_LEAF:
        leaf = task.answer_leaf(site)
        return _min_to_leaf(site, leaf, allow_aspects=regime == OUT_OF_TURN_ALLOWED)
    answer = task.answer_values(site)
    if regime == IN_TURN_ONLY:
        return _audit_in_turn(site, task)
    if not answer:
        raise UnsatisfiableTaskError(
            "no top-level value satisfies the task; nothing to present",
            constraints=[list(t) for t in task.constraints],
        )
    return _prune_to_answer(site, task, answer)


def _state_key(session: Session):
    return (session.frontier.path, frozenset(session.constraint_map().items()))


def _min_to_leaf(site: SiteTree, leaf: LeafPage, allow_aspects: bool) -> int:
    """0/1-cost shortest path to a session terminal at ``leaf``.

    Moves are clicks (always) and, when aspects are allowed, the leaf's own
    attribute terms - any other aspect prunes the target away and cannot be
    part of a minimal strategy. In the aspect regime the final input is
    free when it is in-turn.
    """
    start = Session(site)
    INF = float("inf")
    dist: dict = {_state_key(start): 0}
    queue: deque = deque([(0, start)])
    while queue:
        cost, state = queue.popleft()
        if dist.get(_state_key(state), INF) < cost:
            continue
        if state.terminal:
            if state.frontier.id == leaf.id:
                return cost
            continue  # wrong terminal page: dead end
        moves: list[TermValue] = [
            TermValue(state.frontier.solicits, label) for label in state.available_labels()
        ]
        if allow_aspects:
            cmap = state.constraint_map()
            for facet, value in leaf.attributes.items():
                term = TermValue(facet, value)
                if facet not in cmap and term not in moves:
                    moves.append(term)
        for term in moves:
            nxt = state.fork()
            in_turn = nxt.is_in_turn(term)
            try:
                nxt.utter_terms([AspectTerm(term=term)])
            except ExtemporeError:
                continue
            free = allow_aspects and in_turn and nxt.terminal and nxt.frontier.id == leaf.id
            ncost = cost + (0 if free else 1)
            key = _state_key(nxt)
            if ncost < dist.get(key, INF):
                dist[key] = ncost
                if ncost == cost:
                    queue.appendleft((ncost, nxt))
                else:
                    queue.append((ncost, nxt))
    raise UnsatisfiableTaskError(f"page {leaf.id!r} cannot be reached", leaf=leaf.id)


def _click_distances(site: SiteTree) -> dict[tuple, int]:
    """Click cost to every reachable position (collapse included), backs free."""
    start = Session(site)
    dist = {start.frontier.path: 0}
    frontier_states = [start]
    cost = 0
    while frontier_states:
        nxt_states = []
        for state in frontier_states:
            if state.terminal:
                continue
            for label in state.available_labels():
                nxt = state.fork()
                nxt.click(label)
                path = nxt.frontier.path
                if path not in dist:
                    dist[path] = cost + 1
                    nxt_states.append(nxt)
        frontier_states = nxt_states
        cost += 1
    return dist


def _audit_in_turn(site: SiteTree, task: TaskSpec) -> int:
    """Cost of deciding membership for every top-level value by clicks alone.

    A position decides a value positively when every page below the
    position satisfies the constraints (so one exists), and negatively when
    the position covers the value's whole subtree and no page satisfies
    them. Back clicks between excursions are free, and excursions into
    distinct top-level subtrees share nothing, so the per-value minima add.
    """
    sat = {leaf.id: task.satisfies(leaf) for leaf in site.leaf_index.values()}
    truths = set(sat.values())
    if len(truths) <= 1:
        return 0  # the start page already settles every value
    dist = _click_distances(site)
    total = 0
    for edge in site.root.edges:
        subtree_ids = {leaf.id for leaf in site.leaf_set(edge.child)}
        member = any(sat[i] for i in subtree_ids)
        best = None
        for path, clicks in dist.items():
            if not path or path[0] != edge.label:
                continue
            position = site.position_at(path)
            ids = {leaf.id for leaf in site.leaf_set(position)}
            if member:
                decided = all(sat[i] for i in ids)
            else:
                decided = ids == subtree_ids
            if decided and (best is None or clicks < best):
                best = clicks
        if best is None:  # unreachable: satisfying leaves are clickable positions
            raise UnsatisfiableTaskError(
                f"membership of {edge.label!r} cannot be decided by browsing",
                value=edge.label,
            )
        total += best
    return total


def _prune_to_answer(site: SiteTree, task: TaskSpec, answer: list[str]) -> int:
    """Fewest task aspects whose prune leaves exactly the answer links visible.

    Only the task's own constraints are legal moves: completion is showing
    the answer because of what the task states, not a lucky coincidence
    with an unrelated aspect. Clicks and backs never help here - the goal
    is judged at the root, and back merely restores an already-seen state.
    """
    goal = set(answer)

    def done(state: Session) -> bool:
        return state.frontier is site.root and set(state.available_labels()) == goal

    start = Session(site)
    if done(start):
        return 0
    seen = {_state_key(start)}
    layer = [start]
    for cost in range(1, len(task.constraints) + 1):
        nxt_layer = []
        for state in layer:
            cmap = state.constraint_map()
            for term in task.constraints:
                if term.facet in cmap:
                    continue
                nxt = state.fork()
                try:
                    nxt.utter_terms([AspectTerm(term=term)])
                except ExtemporeError:
                    continue
                key = _state_key(nxt)
                if key in seen:
                    continue
                seen.add(key)
                if done(nxt):
                    return cost
                nxt_layer.append(nxt)
        layer = nxt_layer
    raise UnsatisfiableTaskError(
        "no sequence of task aspects presents exactly the answer set",
        answer=sorted(goal),
    )


def orientation(site: SiteTree, task: TaskSpec) -> str:
    """"out-of-turn-oriented" when browsing alone needs more steps than the site is deep."""
    minimum = min_interactions(site, task, IN_TURN_ONLY)
    return "out-of-turn-oriented" if minimum > site.max_depth else "non-oriented"


# --------------------------------------------------------------------- curves


@dataclass(frozen=True)
class NarrowingCurve:
    """Remaining-page counts per interaction step; step 0 is the whole site."""

    points: tuple[tuple[int, int], ...]


def narrowing_curve(site: SiteTree, records: Sequence[EventRecord]) -> NarrowingCurve:
    result = replay(site, records)
    points = [(0, site.leaf_count)]
    points.extend((i + 1, count) for i, count in enumerate(result.counts))
    return NarrowingCurve(points=tuple(points))


# -------------------------------------------------------------------- report


@dataclass
class ReportEntry:
    task: TaskSpec
    records: Sequence[EventRecord]
    label: str = ""


def aggregate_report(site: SiteTree, entries: Sequence[ReportEntry]) -> dict:
    """Two-way orientation x interaction-class table over replayed logs.

    Logs that fail to replay (or produce no tokens) are excluded from the
    totals and listed under ``excluded``.
    """
    classes = {"I": 0, "O": 0, "IO": 0, "OI": 0, "M": 0}
    table = {
        "non-oriented": {"I": 0, "other": 0, "total": 0},
        "out-of-turn-oriented": {"I": 0, "other": 0, "total": 0},
    }
    excluded = []
    counted = 0
    for index, entry in enumerate(entries):
        label = entry.label or f"log-{index}"
        try:
            tokens = replay(site, entry.records).tokens
            if not tokens:
                raise ReplayError("log contributes no interaction tokens")
            seq = classify_sequence(tokens)
            orient = orientation(site, entry.task)
        except ExtemporeError as exc:
            excluded.append({"log": label, "error": exc.to_payload()})
            continue
        counted += 1
        classes[seq.category] += 1
        bucket = "I" if seq.category == "I" else "other"
        table[orient][bucket] += 1
        table[orient]["total"] += 1
    totals = {
        "I": table["non-oriented"]["I"] + table["out-of-turn-oriented"]["I"],
        "other": table["non-oriented"]["other"] + table["out-of-turn-oriented"]["other"],
        "total": counted,
    }
    return {
        "total": counted,
        "classes": classes,
        "orientation": {**table, "total": totals},
        "excluded": excluded,
    }


def render_report(report: dict) -> str:
    """Plain-text rendering of an aggregate report."""
    lines = []
    lines.append("class   count")
    for name in ("I", "O", "IO", "OI", "M"):
        lines.append(f"{name:<7} {report['classes'][name]}")
    lines.append("")
    lines.append(f"{'orientation':<22} {'I':>5} {'other':>7} {'total':>7}")
    for row in ("non-oriented", "out-of-turn-oriented", "total"):
        cells = report["orientation"][row]
        lines.append(f"{row:<22} {cells['I']:>5} {cells['other']:>7} {cells['total']:>7}")
    if report["excluded"]:
        lines.append("")
        for item in report["excluded"]:
            lines.append(f"excluded {item['log']}: {item['error']['message']}")
    return "\n".join(lines)
