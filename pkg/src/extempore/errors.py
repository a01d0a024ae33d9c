"""Shared error taxonomy.

Every domain error carries a stable machine-readable ``code`` plus a
``details`` mapping; the HTTP service and the CLI surface both verbatim,
so the codes are part of the wire contract and must not change casually.
"""

from __future__ import annotations

from typing import Any


class ExtemporeError(Exception):
    """Base class for all engine errors."""

    code = "error"

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def to_payload(self) -> dict:
        return {"code": self.code, "message": self.message, "details": self.details}


class DocumentParseError(ExtemporeError):
    """Malformed document: bad JSON, wrong shape, or wrong format tag."""

    code = "parse"


class SiteValidationError(ExtemporeError):
    """Structurally sound document violating a site invariant.

    ``details["path"]`` names the offending node, e.g. ``"root/Alaska/Senate"``.
    """

    code = "validation"


class VocabularyError(ExtemporeError):
    """Vocabulary document referencing unknown facets/values, or cyclic rules."""

    code = "vocabulary"


class UnknownTermError(ExtemporeError):
    """Utterance segment not found in the lexicon; carries near-matches."""

    code = "unknown-term"


class AmbiguousTermError(ExtemporeError):
    """Token mapping to more than one (facet, value) pair."""

    code = "ambiguous-term"


class UnknownLabelError(ExtemporeError):
    """Click on a label that is not an available link at the frontier."""

    code = "unknown-label"


class NoResultsError(ExtemporeError):
    """Aspect that would prune the session down to zero pages; state unchanged."""

    code = "no-results"


class ConstraintConflictError(ExtemporeError):
    """Second, different value supplied for an already-constrained facet."""

    code = "conflict"


class TerminalSessionError(ExtemporeError):
    """Click attempted while the session sits at a terminal page."""

    code = "terminal"


class AtStartError(ExtemporeError):
    """Back requested with an empty history."""

    code = "at-start"


class TaskError(ExtemporeError):
    """Task document inconsistent with the site (wrong leaf multiplicity etc.)."""

    code = "task"


class UnsatisfiableTaskError(ExtemporeError):
    """Task with no completing interaction strategy."""

    code = "unsatisfiable-task"


class ReplayError(ExtemporeError):
    """Log replay failure; ``details["step"]`` is the failing event ordinal."""

    code = "replay"
