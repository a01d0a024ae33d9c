"""Site model: a levelwise hierarchy of facet-soliciting pages.

A site is a rooted tree. Every internal node solicits exactly one facet
(e.g. ``state``) and each outgoing edge carries one canonical value of that
facet; leaves are terminal pages whose attributes are exactly the
(facet, value) pairs bound along their root-to-leaf path. The tree is
immutable after loading and may be shared freely across sessions.

Canonical interchange format ("extempore-site/1")::

    {"format": "extempore-site/1",
     "id": "...", "title": "...",
     "facets": ["state", "branch", ...],
     "root": {"solicits": "state",
              "edges": [{"label": "Alaska", "child": <node-or-leaf>}, ...]}}

A leaf child is ``{"leaf": {"id": ..., "title": ..., "url": ...}}``; its
attributes are derived from the path, and an explicit ``attributes`` field,
when present, must agree with the path or loading fails.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Union

from .errors import DocumentParseError, SiteValidationError

SITE_FORMAT = "extempore-site/1"


@dataclass(eq=True)
class LeafPage:
    """Terminal page; ``attributes`` maps each path facet to its bound value."""

    id: str
    title: str
    url: str
    attributes: dict[str, str]
    path: tuple[str, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.path)


@dataclass(eq=True)
class SiteNode:
    """Internal page soliciting ``solicits``; edges are (label, child) pairs."""

    solicits: str
    edges: list[Edge] = field(default_factory=list)
    path: tuple[str, ...] = ()
    leaves: tuple[LeafPage, ...] = ()

    def edge(self, label: str) -> Edge | None:
        for e in self.edges:
            if e.label == label:
                return e
        return None


@dataclass(eq=True)
class Edge:
    label: str
    child: Union[SiteNode, LeafPage]


Position = Union[SiteNode, LeafPage]


def _path_name(path: tuple[str, ...]) -> str:
    return "/".join(("root",) + path)


@dataclass
class SiteTree:
    """Validated, immutable site with precomputed leaf sets per node."""

    site_id: str
    title: str
    facets: list[str]
    root: SiteNode
    leaf_index: dict[str, LeafPage]
    max_depth: int
    _positions: dict[tuple[str, ...], Position] = field(default_factory=dict, repr=False)

    @property
    def leaf_count(self) -> int:
        return len(self.leaf_index)

    def leaf_set(self, position: Position) -> tuple[LeafPage, ...]:
        """All leaves reachable from ``position``, in document (preorder) order."""
        if isinstance(position, LeafPage):
            return (position,)
        return position.leaves

    def position_at(self, path: tuple[str, ...]) -> Position:
        return self._positions[tuple(path)]

    def positions(self) -> Iterator[Position]:
        return iter(self._positions.values())

    def label_pairs(self) -> list[tuple[str, str]]:
        """Every (facet, edge label) pair occurring in the tree, ordered, deduped."""
        seen: dict[tuple[str, str], None] = {}
        for pos in self._positions.values():
            if isinstance(pos, SiteNode):
                for e in pos.edges:
                    seen.setdefault((pos.solicits, e.label))
        return list(seen)

    def serialize(self) -> dict:
        """Emit the canonical document; ``load_site`` on the result round-trips."""

        def node_doc(node: SiteNode) -> dict:
            edges = []
            for e in node.edges:
                if isinstance(e.child, LeafPage):
                    child = {"leaf": {"id": e.child.id, "title": e.child.title, "url": e.child.url}}
                else:
                    child = node_doc(e.child)
                edges.append({"label": e.label, "child": child})
            return {"solicits": node.solicits, "edges": edges}

        return {
            "format": SITE_FORMAT,
            "id": self.site_id,
            "title": self.title,
            "facets": list(self.facets),
            "root": node_doc(self.root),
        }


def max_depth(tree: SiteTree) -> int:
    """Longest root-to-leaf edge count."""
    return tree.max_depth


def load_site(document: Union[str, dict]) -> SiteTree:
    """Parse and validate a site description.

    Raises :class:`DocumentParseError` for malformed documents and
    :class:`SiteValidationError` (naming the offending path) for invariant
    violations: duplicate sibling labels, a facet solicited twice on one
    path, undeclared facets, duplicate leaf ids, or an explicit leaf
    ``attributes`` field that disagrees with the path.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise DocumentParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise DocumentParseError("site document must be an object")
    if document.get("format") != SITE_FORMAT:
        raise DocumentParseError(
            f"unsupported site format {document.get('format')!r}; expected {SITE_FORMAT!r}"
        )
    facets = document.get("facets")
    if not isinstance(facets, list) or not facets or not all(isinstance(f, str) and f for f in facets):
        raise DocumentParseError("'facets' must be a non-empty list of facet names")
    if len(set(facets)) != len(facets):
        raise DocumentParseError("facet names must be unique")
    root_doc = document.get("root")
    if not isinstance(root_doc, dict):
        raise DocumentParseError("'root' must be a node object")

    facet_set = set(facets)
    leaf_index: dict[str, LeafPage] = {}
    positions: dict[tuple[str, ...], Position] = {}

    def build(doc: dict, path: tuple[str, ...], bound: dict[str, str]) -> Position:
        where = _path_name(path)
        if "leaf" in doc:
            leaf_doc = doc["leaf"]
            if not isinstance(leaf_doc, dict):
                raise DocumentParseError(f"leaf at {where} must be an object")
            for key in ("id", "title", "url"):
                if not isinstance(leaf_doc.get(key), str):
                    raise DocumentParseError(f"leaf at {where} missing string field {key!r}")
            leaf_id = leaf_doc["id"]
            if leaf_id in leaf_index:
                raise SiteValidationError(
                    f"duplicate leaf id {leaf_id!r} at {where}", path=where, leaf=leaf_id
                )
            declared = leaf_doc.get("attributes")
            if declared is not None and dict(declared) != bound:
                raise SiteValidationError(
                    f"leaf {leaf_id!r} attributes {declared!r} disagree with its path at {where}",
                    path=where,
                    leaf=leaf_id,
                )
            leaf = LeafPage(
                id=leaf_id,
                title=leaf_doc["title"],
                url=leaf_doc["url"],
                attributes=dict(bound),
                path=path,
            )
            leaf_index[leaf_id] = leaf
            positions[path] = leaf
            return leaf
        if "solicits" not in doc or "edges" not in doc:
            raise DocumentParseError(f"node at {where} needs 'solicits' and 'edges'")
        solicits = doc["solicits"]
        if solicits not in facet_set:
            raise SiteValidationError(
                f"node at {where} solicits undeclared facet {solicits!r}", path=where
            )
        if solicits in bound:
            raise SiteValidationError(
                f"facet {solicits!r} solicited twice on one path at {where}", path=where
            )
        edge_docs = doc["edges"]
        if not isinstance(edge_docs, list) or not edge_docs:
            raise SiteValidationError(f"node at {where} has no edges", path=where)
        node = SiteNode(solicits=solicits, path=path)
        labels_seen: set[str] = set()
        collected: list[LeafPage] = []
        for edge_doc in edge_docs:
            if not isinstance(edge_doc, dict) or "label" not in edge_doc or "child" not in edge_doc:
                raise DocumentParseError(f"edge at {where} needs 'label' and 'child'")
            label = edge_doc["label"]
            if not isinstance(label, str) or not label:
                raise DocumentParseError(f"edge label at {where} must be a non-empty string")
            if label in labels_seen:
                raise SiteValidationError(
                    f"duplicate sibling label {label!r} at {where}", path=where, label=label
                )
            labels_seen.add(label)
            child = build(edge_doc["child"], path + (label,), {**bound, solicits: label})
            node.edges.append(Edge(label=label, child=child))
            collected.extend(child.leaves if isinstance(child, SiteNode) else (child,))
        node.leaves = tuple(collected)
        positions[path] = node
        return node

    root = build(root_doc, (), {})
    if isinstance(root, LeafPage):
        raise DocumentParseError("root must be a node, not a leaf")

    depth = max(len(leaf.path) for leaf in leaf_index.values())
    return SiteTree(
        site_id=str(document.get("id", "site")),
        title=str(document.get("title", document.get("id", "site"))),
        facets=list(facets),
        root=root,
        leaf_index=leaf_index,
        max_depth=depth,
        _positions=positions,
    )
