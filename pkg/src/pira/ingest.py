"""TSV dataset loading, saving, and author-merge suggestions.

A dataset directory holds four UTF-8 tab-separated files without headers:

* ``authors.tsv``: author_id, name, in_dblp (0 or 1)
* ``papers.tsv``:  paper_id, title, in_dblp
* ``wrote.tsv``:   author_id, paper_id
* ``cites.tsv``:   citing_paper_id, cited_paper_id

Ids are arbitrary non-empty strings without tabs or newlines.  Saving sorts
every file, so load -> save is a fixed point of the serialization.

Merge suggestions flag author pairs whose names are initial-compatible
(same last token, every leading token of the shorter name a prefix of its
counterpart) and that either cite one another's papers or share a
co-author.  Suggestions are never applied: duplicate authors are preferred
over accidentally merging two distinct people.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path

from .errors import MissingFileError, ParseError
from .graph import CitationGraph, NodeId, build_graph

AUTHORS_FILE = "authors.tsv"
PAPERS_FILE = "papers.tsv"
WROTE_FILE = "wrote.tsv"
CITES_FILE = "cites.tsv"


@dataclass(frozen=True)
class LoadReport:
    """Line counts and dropped-edge counts from one load."""

    authors: int
    papers: int
    wrote_lines: int
    cites_lines: int
    wrote_edges: int
    cite_edges: int
    dropped_duplicate_wrote: int
    dropped_duplicate_cites: int
    dropped_self_citations: int
    authors_without_papers: int
    papers_without_authors: int

    def to_text(self) -> str:
        fields = [
            ("authors", self.authors),
            ("papers", self.papers),
            ("wrote_lines", self.wrote_lines),
            ("cites_lines", self.cites_lines),
            ("wrote_edges", self.wrote_edges),
            ("cite_edges", self.cite_edges),
            ("dropped_duplicate_wrote", self.dropped_duplicate_wrote),
            ("dropped_duplicate_cites", self.dropped_duplicate_cites),
            ("dropped_self_citations", self.dropped_self_citations),
            ("authors_without_papers", self.authors_without_papers),
            ("papers_without_authors", self.papers_without_authors),
        ]
        return "".join(f"{k}={v}\n" for k, v in fields)


def _read_rows(path: Path, n_cols: int) -> list[tuple[int, list[str]]]:
    if not path.is_file():
        raise MissingFileError(f"missing dataset file {path.name} in {path.parent}",
                               path=str(path))
    rows = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != n_cols:
                raise ParseError(
                    f"{path.name}:{lineno}: expected {n_cols} tab-separated fields, "
                    f"got {len(cols)}",
                    path=str(path), line=lineno,
                )
            if any(not c for c in cols[: min(n_cols, 2)]):
                raise ParseError(
                    f"{path.name}:{lineno}: empty field", path=str(path), line=lineno
                )
            rows.append((lineno, cols))
    return rows


def _parse_flag(value: str, path: Path, lineno: int) -> bool:
    if value == "1":
        return True
    if value == "0":
        return False
    raise ParseError(
        f"{path.name}:{lineno}: in_dblp flag must be 0 or 1, got {value!r}",
        path=str(path), line=lineno,
    )


def load_graph(directory: str | Path) -> tuple[CitationGraph, LoadReport]:
    """Load a dataset directory into a CitationGraph plus its load report."""
    directory = Path(directory)
    a_path = directory / AUTHORS_FILE
    p_path = directory / PAPERS_FILE
    w_path = directory / WROTE_FILE
    c_path = directory / CITES_FILE

    author_rows = _read_rows(a_path, 3)
    paper_rows = _read_rows(p_path, 3)
    authors = [
        (cols[0], cols[1], _parse_flag(cols[2], a_path, lineno))
        for lineno, cols in author_rows
    ]
    papers = [
        (cols[0], cols[1], _parse_flag(cols[2], p_path, lineno))
        for lineno, cols in paper_rows
    ]
    author_ids = {ext for ext, _, _ in authors}
    paper_ids = {ext for ext, _, _ in papers}

    wrote_rows = _read_rows(w_path, 2)
    wrote = []
    for lineno, (a_ext, p_ext) in wrote_rows:
        if a_ext not in author_ids:
            raise ParseError(
                f"{WROTE_FILE}:{lineno}: unknown author {a_ext!r}",
                path=str(w_path), line=lineno,
            )
        if p_ext not in paper_ids:
            raise ParseError(
                f"{WROTE_FILE}:{lineno}: unknown paper {p_ext!r}",
                path=str(w_path), line=lineno,
            )
        wrote.append((a_ext, p_ext))

    cites_rows = _read_rows(c_path, 2)
    cites = []
    for lineno, (src, dst) in cites_rows:
        if src not in paper_ids:
            raise ParseError(
                f"{CITES_FILE}:{lineno}: unknown paper {src!r}",
                path=str(c_path), line=lineno,
            )
        if dst not in paper_ids:
            raise ParseError(
                f"{CITES_FILE}:{lineno}: unknown paper {dst!r}",
                path=str(c_path), line=lineno,
            )
        cites.append((src, dst))

    graph = build_graph(authors, papers, wrote, cites)
    report = LoadReport(
        authors=len(authors),
        papers=len(papers),
        wrote_lines=len(wrote_rows),
        cites_lines=len(cites_rows),
        wrote_edges=graph.n_wrote_edges,
        cite_edges=graph.n_cite_edges,
        dropped_duplicate_wrote=graph.report.dropped_duplicate_wrote,
        dropped_duplicate_cites=graph.report.dropped_duplicate_cites,
        dropped_self_citations=graph.report.dropped_self_citations,
        authors_without_papers=graph.report.authors_without_papers,
        papers_without_authors=graph.report.papers_without_authors,
    )
    return graph, report


def save_graph(graph: CitationGraph, directory: str | Path) -> None:
    """Write the four dataset files, each sorted, to `directory`."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    authors = sorted(graph.authors, key=lambda a: a.ext_id)
    papers = sorted(graph.papers, key=lambda p: p.ext_id)
    wrote = sorted(
        (graph.authors[a].ext_id, graph.papers[p].ext_id)
        for a, ps in enumerate(graph.papers_of)
        for p in ps
    )
    cites = sorted(
        (graph.papers[s].ext_id, graph.papers[d].ext_id)
        for s, refs in enumerate(graph.refs_of)
        for d in refs
    )
    (directory / AUTHORS_FILE).write_text(
        "".join(f"{a.ext_id}\t{a.name}\t{int(a.in_dblp)}\n" for a in authors),
        encoding="utf-8",
    )
    (directory / PAPERS_FILE).write_text(
        "".join(f"{p.ext_id}\t{p.title}\t{int(p.in_dblp)}\n" for p in papers),
        encoding="utf-8",
    )
    (directory / WROTE_FILE).write_text(
        "".join(f"{a}\t{p}\n" for a, p in wrote), encoding="utf-8"
    )
    (directory / CITES_FILE).write_text(
        "".join(f"{s}\t{d}\n" for s, d in cites), encoding="utf-8"
    )


def write_idmap(graph: CitationGraph, path: str | Path) -> None:
    """Write the external-id to dense-index mapping: kind, ext_id, index."""
    lines = [f"author\t{a.ext_id}\t{a.id.index}" for a in graph.authors]
    lines += [f"paper\t{p.ext_id}\t{p.id.index}" for p in graph.papers]
    Path(path).write_text("".join(l + "\n" for l in lines), encoding="utf-8")


class MergeRule(enum.IntEnum):
    SELF_CITATION_INITIAL_MATCH = 1
    COMMON_COAUTHOR_INITIAL_MATCH = 2


@dataclass(frozen=True)
class MergeSuggestion:
    author_a: NodeId
    author_b: NodeId
    rule: MergeRule


def _name_tokens(name: str) -> list[str]:
    return [t.rstrip(".").casefold() for t in name.split() if t.rstrip(".")]


def initial_compatible(name_a: str, name_b: str) -> bool:
    """True when the names agree on the last token and every leading token of
    the shorter form is a prefix of its counterpart ("J. YYY" vs "John YYY")."""
    ta, tb = _name_tokens(name_a), _name_tokens(name_b)
    if not ta or not tb:
        return False
    if ta[-1] != tb[-1]:
        return False
    lead_a, lead_b = ta[:-1], tb[:-1]
    short, long_ = (lead_a, lead_b) if len(lead_a) <= len(lead_b) else (lead_b, lead_a)
    for s, l in zip(short, long_):
        if not (l.startswith(s) or s.startswith(l)):
            return False
    return True


def suggest_merges(graph: CitationGraph) -> list[MergeSuggestion]:
    """Author pairs that are probably the same person, by the two heuristics.

    Pairs are unordered (smaller index first), one suggestion per rule that
    fires, sorted by (rule, author_a, author_b).  Nothing is merged.
    """
    # candidate pairs share a casefolded last name token
    by_last: dict[str, list[int]] = {}
    for a in graph.authors:
        tokens = _name_tokens(a.name)
        if tokens:
            by_last.setdefault(tokens[-1], []).append(a.id.index)

    cite_targets: list[set[int]] = [
        {r for p in papers for r in graph.refs_of[p]} for papers in graph.papers_of
    ]
    paper_sets: list[set[int]] = [set(papers) for papers in graph.papers_of]
    coauthors: list[set[int]] = []
    for a, papers in enumerate(graph.papers_of):
        co = {b for p in papers for b in graph.authors_of[p]}
        co.discard(a)
        coauthors.append(co)

    suggestions = []
    for group in by_last.values():
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                if not initial_compatible(graph.authors[a].name, graph.authors[b].name):
                    continue
                if cite_targets[a] & paper_sets[b] or cite_targets[b] & paper_sets[a]:
                    suggestions.append(
                        MergeSuggestion(
                            graph.authors[a].id,
                            graph.authors[b].id,
                            MergeRule.SELF_CITATION_INITIAL_MATCH,
                        )
                    )
                if coauthors[a] & coauthors[b]:
                    suggestions.append(
                        MergeSuggestion(
                            graph.authors[a].id,
                            graph.authors[b].id,
                            MergeRule.COMMON_COAUTHOR_INITIAL_MATCH,
                        )
                    )
    suggestions.sort(key=lambda s: (s.rule, s.author_a.index, s.author_b.index))
    return suggestions
