"""Immutable bipartite author-paper graph with typed edges.

Authors connect to papers through ``wrote`` edges; papers connect to papers
through directed ``cites`` edges.  The reverse direction of ``wrote``
(paper -> author) is not stored separately: it is always derived as the
inverse adjacency, so the two views cannot drift apart.

Nodes carry a dense integer index per kind (fast array-based walkers) plus a
stable external string id (``ext_id``) used by every file format and by
subgraph extraction, where dense indices are reassigned.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import GraphBuildError


class NodeKind(enum.IntEnum):
    AUTHOR = 0
    PAPER = 1


@dataclass(frozen=True, order=True)
class NodeId:
    """Identity of a node inside one graph: (kind, dense index)."""

    kind: NodeKind
    index: int

    def __str__(self) -> str:
        return f"{'a' if self.kind == NodeKind.AUTHOR else 'p'}{self.index}"


def author_id(index: int) -> NodeId:
    return NodeId(NodeKind.AUTHOR, index)


def paper_id(index: int) -> NodeId:
    return NodeId(NodeKind.PAPER, index)


@dataclass(frozen=True)
class Author:
    id: NodeId
    ext_id: str
    name: str
    in_dblp: bool = True


@dataclass(frozen=True)
class Paper:
    id: NodeId
    ext_id: str
    title: str
    in_dblp: bool = True


@dataclass(frozen=True)
class BuildReport:
    """Counts of everything build_graph dropped or flagged."""

    dropped_duplicate_wrote: int = 0
    dropped_duplicate_cites: int = 0
    dropped_self_citations: int = 0
    authors_without_papers: int = 0
    papers_without_authors: int = 0


# Node specs accepted by build_graph: (ext_id, name) or (ext_id, name, in_dblp).
NodeSpec = Union[tuple[str, str], tuple[str, str, bool]]


@dataclass(frozen=True)
class CitationGraph:
    """Bipartite citation graph, immutable after construction.

    Adjacency is kept as tuples of sorted index tuples; all four views are
    mutually consistent by construction.  Safe for concurrent readers.
    """

    authors: tuple[Author, ...]
    papers: tuple[Paper, ...]
    papers_of: tuple[tuple[int, ...], ...]   # author index -> paper indices
    authors_of: tuple[tuple[int, ...], ...]  # paper index -> author indices
    refs_of: tuple[tuple[int, ...], ...]     # paper index -> papers it cites
    cited_by: tuple[tuple[int, ...], ...]    # paper index -> papers citing it
    report: BuildReport

    @property
    def n_authors(self) -> int:
        return len(self.authors)

    @property
    def n_papers(self) -> int:
        return len(self.papers)

    @property
    def n_nodes(self) -> int:
        return len(self.authors) + len(self.papers)

    @property
    def n_wrote_edges(self) -> int:
        return sum(len(ps) for ps in self.papers_of)

    @property
    def n_cite_edges(self) -> int:
        return sum(len(rs) for rs in self.refs_of)

    @cached_property
    def author_index(self) -> dict[str, int]:
        return {a.ext_id: a.id.index for a in self.authors}

    @cached_property
    def paper_index(self) -> dict[str, int]:
        return {p.ext_id: p.id.index for p in self.papers}

    def node(self, node: NodeId) -> Author | Paper:
        """Look up the Author or Paper record for a NodeId."""
        if node.kind == NodeKind.AUTHOR:
            if not 0 <= node.index < len(self.authors):
                raise ValueError(f"unknown author index {node.index}")
            return self.authors[node.index]
        if not 0 <= node.index < len(self.papers):
            raise ValueError(f"unknown paper index {node.index}")
        return self.papers[node.index]

    def ext_id(self, node: NodeId) -> str:
        return self.node(node).ext_id

    def in_dblp(self, node: NodeId) -> bool:
        return self.node(node).in_dblp

    def all_nodes(self) -> Iterable[NodeId]:
        for a in self.authors:
            yield a.id
        for p in self.papers:
            yield p.id


def _normalize_specs(specs: Sequence[NodeSpec], kind: str) -> list[tuple[str, str, bool]]:
    out = []
    seen: set[str] = set()
    for spec in specs:
        if len(spec) == 2:
            ext, label = spec  # type: ignore[misc]
            flag = True
        else:
            ext, label, flag = spec  # type: ignore[misc]
        if not ext:
            raise GraphBuildError(f"{kind} with empty id")
        if not label:
            raise GraphBuildError(f"{kind} {ext!r} has an empty name")
        if ext in seen:
            raise GraphBuildError(f"duplicate {kind} id {ext!r}")
        seen.add(ext)
        out.append((ext, label, bool(flag)))
    return out


def build_graph(
    authors: Sequence[NodeSpec],
    papers: Sequence[NodeSpec],
    wrote: Iterable[tuple[str, str]] = (),
    cites: Iterable[tuple[str, str]] = (),
) -> CitationGraph:
    """Construct a CitationGraph from node specs and string-id edge lists.

    Duplicate edges and self-citations are dropped (counted in the report);
    an edge endpoint that names no node raises GraphBuildError.  Authors
    without papers and papers without authors are permitted and flagged.
    """
    author_rows = _normalize_specs(authors, "author")
    paper_rows = _normalize_specs(papers, "paper")
    a_index = {ext: i for i, (ext, _, _) in enumerate(author_rows)}
    p_index = {ext: i for i, (ext, _, _) in enumerate(paper_rows)}

    papers_of: list[set[int]] = [set() for _ in author_rows]
    authors_of: list[set[int]] = [set() for _ in paper_rows]
    dup_wrote = 0
    for a_ext, p_ext in wrote:
        ai = a_index.get(a_ext)
        if ai is None:
            raise GraphBuildError(f"wrote edge ({a_ext!r}, {p_ext!r}): unknown author {a_ext!r}")
        pi = p_index.get(p_ext)
        if pi is None:
            raise GraphBuildError(f"wrote edge ({a_ext!r}, {p_ext!r}): unknown paper {p_ext!r}")
        if pi in papers_of[ai]:
            dup_wrote += 1
            continue
        papers_of[ai].add(pi)
        authors_of[pi].add(ai)

    refs_of: list[set[int]] = [set() for _ in paper_rows]
    cited_by: list[set[int]] = [set() for _ in paper_rows]
    dup_cites = 0
    self_cites = 0
    for src_ext, dst_ext in cites:
        si = p_index.get(src_ext)
        if si is None:
            raise GraphBuildError(f"cite edge ({src_ext!r}, {dst_ext!r}): unknown paper {src_ext!r}")
        di = p_index.get(dst_ext)
        if di is None:
            raise GraphBuildError(f"cite edge ({src_ext!r}, {dst_ext!r}): unknown paper {dst_ext!r}")
        if si == di:
            self_cites += 1
            continue
        if di in refs_of[si]:
            dup_cites += 1
            continue
        refs_of[si].add(di)
        cited_by[di].add(si)

    report = BuildReport(
        dropped_duplicate_wrote=dup_wrote,
        dropped_duplicate_cites=dup_cites,
        dropped_self_citations=self_cites,
        authors_without_papers=sum(1 for s in papers_of if not s),
        papers_without_authors=sum(1 for s in authors_of if not s),
    )
    return CitationGraph(
        authors=tuple(
            Author(author_id(i), ext, name, flag)
            for i, (ext, name, flag) in enumerate(author_rows)
        ),
        papers=tuple(
            Paper(paper_id(i), ext, title, flag)
            for i, (ext, title, flag) in enumerate(paper_rows)
        ),
        papers_of=tuple(tuple(sorted(s)) for s in papers_of),
        authors_of=tuple(tuple(sorted(s)) for s in authors_of),
        refs_of=tuple(tuple(sorted(s)) for s in refs_of),
        cited_by=tuple(tuple(sorted(s)) for s in cited_by),
        report=report,
    )


def p_weight(graph: CitationGraph, author: NodeId, paper: NodeId) -> float:
    """Probability weight of a wrote edge: 1 / number of co-authors of the paper."""
    if author.kind != NodeKind.AUTHOR or paper.kind != NodeKind.PAPER:
        raise ValueError("p_weight expects an (author, paper) pair")
    graph.node(author)
    graph.node(paper)
    if author.index not in graph.authors_of[paper.index]:
        raise ValueError(
            f"no wrote edge between {graph.ext_id(author)!r} and {graph.ext_id(paper)!r}"
        )
    return 1.0 / len(graph.authors_of[paper.index])


def neighborhood(graph: CitationGraph, center: NodeId, radius: int) -> CitationGraph:
    """Induced subgraph of every node within `radius` hops of `center`.

    All edge kinds count as one hop in either direction.  External ids,
    names/titles and DBLP flags are preserved; dense indices are reassigned.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    graph.node(center)  # validates existence

    seen = {center}
    frontier = deque([(center, 0)])
    while frontier:
        node, dist = frontier.popleft()
        if dist == radius:
            continue
        if node.kind == NodeKind.AUTHOR:
            neighbors = [paper_id(p) for p in graph.papers_of[node.index]]
        else:
            pi = node.index
            neighbors = [author_id(a) for a in graph.authors_of[pi]]
            neighbors += [paper_id(p) for p in graph.refs_of[pi]]
            neighbors += [paper_id(p) for p in graph.cited_by[pi]]
        for nb in neighbors:
            if nb not in seen:
                seen.add(nb)
                frontier.append((nb, dist + 1))

    kept_authors = sorted(n.index for n in seen if n.kind == NodeKind.AUTHOR)
    kept_papers = sorted(n.index for n in seen if n.kind == NodeKind.PAPER)
    a_set, p_set = set(kept_authors), set(kept_papers)
    author_specs = [
        (graph.authors[i].ext_id, graph.authors[i].name, graph.authors[i].in_dblp)
        for i in kept_authors
    ]
    paper_specs = [
        (graph.papers[i].ext_id, graph.papers[i].title, graph.papers[i].in_dblp)
        for i in kept_papers
    ]
    wrote_edges = [
        (graph.authors[a].ext_id, graph.papers[p].ext_id)
        for a in kept_authors
        for p in graph.papers_of[a]
        if p in p_set
    ]
    cite_edges = [
        (graph.papers[s].ext_id, graph.papers[d].ext_id)
        for s in kept_papers
        for d in graph.refs_of[s]
        if d in p_set
    ]
    return build_graph(author_specs, paper_specs, wrote_edges, cite_edges)
