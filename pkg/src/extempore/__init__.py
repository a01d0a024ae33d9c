"""Out-of-turn interaction with hierarchically organized websites.

Browsing a levelwise site answers the question the site is currently
asking; this package additionally lets a user volunteer information the
site has not asked for yet, pruning the hierarchy down to the paths that
are still consistent. It bundles the site model, the utterance
vocabulary, the dialog engine, an analysis toolkit for interaction logs,
an HTTP service, and a CLI.
"""

from .analysis import (
    IN_TURN_ONLY,
    OUT_OF_TURN_ALLOWED,
    EventRecord,
    NarrowingCurve,
    ReportEntry,
    SequenceClass,
    TaskSpec,
    aggregate_report,
    classify_sequence,
    event_tokens,
    load_task,
    log_document,
    min_interactions,
    narrowing_curve,
    orientation,
    parse_log_document,
    replay,
    session_records,
    task_document,
    tokenize_aspects,
)
from .errors import ExtemporeError
from .fixtures import (
    full_congress_document,
    full_congress_tree,
    full_congress_vocab_document,
    mini_congress_document,
    mini_congress_tree,
    mini_vocab_document,
)
from .session import Constraint, InteractionEvent, Session, start_session
from .site import LeafPage, SiteNode, SiteTree, load_site, max_depth
from .vocab import (
    AspectTerm,
    FunctionalDependency,
    Lexicon,
    TermValue,
    build_lexicon,
    expand_terms,
    normalize_token,
    parse_fds,
    render_terms,
)

__version__ = "0.1.0"

__all__ = [
    "AspectTerm",
    "Constraint",
    "EventRecord",
    "ExtemporeError",
    "FunctionalDependency",
    "IN_TURN_ONLY",
    "InteractionEvent",
    "LeafPage",
    "Lexicon",
    "NarrowingCurve",
    "OUT_OF_TURN_ALLOWED",
    "ReportEntry",
    "SequenceClass",
    "Session",
    "SiteNode",
    "SiteTree",
    "TaskSpec",
    "TermValue",
    "aggregate_report",
    "build_lexicon",
    "classify_sequence",
    "event_tokens",
    "expand_terms",
    "full_congress_document",
    "full_congress_tree",
    "full_congress_vocab_document",
    "load_site",
    "load_task",
    "log_document",
    "max_depth",
    "min_interactions",
    "mini_congress_document",
    "mini_congress_tree",
    "mini_vocab_document",
    "narrowing_curve",
    "normalize_token",
    "orientation",
    "parse_fds",
    "parse_log_document",
    "render_terms",
    "replay",
    "session_records",
    "start_session",
    "task_document",
    "tokenize_aspects",
]
