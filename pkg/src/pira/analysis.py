"""Rankings, comparison curves, scatter data, dataset statistics, DOT export.

Rankings are keyed by external node ids so that rankings written to disk and
rankings held in memory compare identically.  Ties are broken by ascending
node id; ranks are dense positions 1..N.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .graph import CitationGraph, NodeKind
from .walk import ScoreTable, TableRow


@dataclass(frozen=True)
class RankEntry:
    rank: int
    node: str  # external node id
    score: float


@dataclass(frozen=True)
class Ranking:
    entries: tuple[RankEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def nodes(self) -> list[str]:
        return [e.node for e in self.entries]

    def position_of(self, node: str) -> int:
        for e in self.entries:
            if e.node == node:
                return e.rank
        raise KeyError(node)

    def to_tsv(self) -> str:
        """`rank<TAB>node_id<TAB>score` lines, scores at 6 decimal places."""
        return "".join(f"{e.rank}\t{e.node}\t{e.score:.6f}\n" for e in self.entries)

    @classmethod
    def from_scores(cls, pairs: Iterable[tuple[str, float]]) -> "Ranking":
        ordered = sorted(pairs, key=lambda kv: (-kv[1], kv[0]))
        return cls(tuple(RankEntry(i, n, float(s)) for i, (n, s) in enumerate(ordered, 1)))

    @classmethod
    def from_tsv(cls, text: str) -> "Ranking":
        entries = []
        for line in text.splitlines():
            if not line.strip():
                continue
            r, node, score = line.split("\t")
            entries.append(RankEntry(int(r), node, float(score)))
        return cls(tuple(entries))


# common subset predicates for rank()
def dblp_authors(row: TableRow) -> bool:
    return row.in_dblp and row.node.kind == NodeKind.AUTHOR


def dblp_papers(row: TableRow) -> bool:
    return row.in_dblp and row.node.kind == NodeKind.PAPER


def all_authors(row: TableRow) -> bool:
    return row.node.kind == NodeKind.AUTHOR


def all_papers(row: TableRow) -> bool:
    return row.node.kind == NodeKind.PAPER


def rank(
    scores: ScoreTable,
    subset: Optional[Callable[[TableRow], bool]] = None,
) -> Ranking:
    """Deterministic ranking of a score table by normalized score.

    ``subset`` filters rows; by default only DBLP-flagged nodes are ranked.
    """
    if subset is None:
        subset = lambda row: row.in_dblp
    kept = [(row.ext_id, row.normalized) for row in scores.rows() if subset(row)]
    if not kept:
        raise ValueError("no nodes left to rank after filtering")
    if len({node for node, _ in kept}) != len(kept):
        raise ValueError(
            "duplicate node ids in ranking input (an author and a paper share "
            "an id?); filter to a single node kind"
        )
    return Ranking.from_scores(kept)


@dataclass(frozen=True)
class DiffCurve:
    points: tuple[tuple[float, float], ...]  # (x percent, difference percent)

    def to_csv(self) -> str:
        lines = ["x_percent,diff_percent"]
        lines += [f"{x:g},{d:.6f}" for x, d in self.points]
        return "\n".join(lines) + "\n"


def topx_difference(
    r1: Ranking, r2: Ranking, cutoffs: Sequence[float]
) -> DiffCurve:
    """Percentage of the top-x% set of r1 that is absent from r2's top-x%."""
    set1, set2 = set(r1.nodes()), set(r2.nodes())
    if set1 != set2:
        raise ValueError("rankings cover different node sets")
    n = len(r1)
    nodes1, nodes2 = r1.nodes(), r2.nodes()
    points = []
    for x in cutoffs:
        if not 0.0 < x <= 100.0:
            raise ValueError(f"cutoff must be in (0, 100], got {x}")
        top = math.ceil(x * n / 100.0)
        s1, s2 = set(nodes1[:top]), set(nodes2[:top])
        points.append((float(x), 100.0 * len(s1 - s2) / len(s1)))
    return DiffCurve(tuple(points))


@dataclass(frozen=True)
class ScatterPoint:
    node: str
    base_rank: int
    rank_difference: int  # base rank minus other rank


def rank_scatter(r_base: Ranking, r_other: Ranking, top_n: int) -> list[ScatterPoint]:
    """Rank differences for the first `top_n` nodes of the base ranking."""
    if set(r_base.nodes()) != set(r_other.nodes()):
        raise ValueError("rankings cover different node sets")
    if top_n > len(r_base):
        raise ValueError(f"top_n={top_n} exceeds ranking size {len(r_base)}")
    other_pos = {e.node: e.rank for e in r_other.entries}
    return [
        ScatterPoint(e.node, e.rank, e.rank - other_pos[e.node])
        for e in r_base.entries[:top_n]
    ]


def scatter_to_csv(points: Sequence[ScatterPoint]) -> str:
    lines = ["node_id,base_rank,rank_difference"]
    lines += [f"{p.node},{p.base_rank},{p.rank_difference}" for p in points]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class StatsReport:
    """Dataset statistics split by DBLP membership."""

    n_authors: int
    n_authors_dblp: int
    n_papers: int
    n_papers_dblp: int
    mean_pubs_dblp: float
    mean_pubs_external: float
    mean_coauthors_dblp: float
    mean_coauthors_external: float
    citation_edges: int
    citation_edges_dblp_to_dblp: int
    pubs_per_author: dict[int, tuple[int, int]]        # bucket -> (dblp, external)
    coauthors_per_paper: dict[int, tuple[int, int]]
    out_citations_per_paper: dict[int, tuple[int, int]]
    in_citations_per_paper_dblp: dict[int, int]

    def summary_csv(self) -> str:
        rows = [
            ("authors", self.n_authors),
            ("authors_dblp", self.n_authors_dblp),
            ("papers", self.n_papers),
            ("papers_dblp", self.n_papers_dblp),
            ("mean_pubs_dblp", f"{self.mean_pubs_dblp:.6f}"),
            ("mean_pubs_external", f"{self.mean_pubs_external:.6f}"),
            ("mean_coauthors_dblp", f"{self.mean_coauthors_dblp:.6f}"),
            ("mean_coauthors_external", f"{self.mean_coauthors_external:.6f}"),
            ("citation_edges", self.citation_edges),
            ("citation_edges_dblp_to_dblp", self.citation_edges_dblp_to_dblp),
        ]
        return "key,value\n" + "\n".join(f"{k},{v}" for k, v in rows) + "\n"

    @staticmethod
    def _split_csv(hist: dict[int, tuple[int, int]]) -> str:
        lines = ["bucket,dblp,external"]
        lines += [f"{b},{hist[b][0]},{hist[b][1]}" for b in sorted(hist)]
        return "\n".join(lines) + "\n"

    def to_csvs(self) -> dict[str, str]:
        in_lines = ["bucket,dblp"]
        in_lines += [
            f"{b},{self.in_citations_per_paper_dblp[b]}"
            for b in sorted(self.in_citations_per_paper_dblp)
        ]
        return {
            "summary.csv": self.summary_csv(),
            "publications_per_author.csv": self._split_csv(self.pubs_per_author),
            "coauthors_per_paper.csv": self._split_csv(self.coauthors_per_paper),
            "out_citations_per_paper.csv": self._split_csv(self.out_citations_per_paper),
            "in_citations_per_paper_dblp.csv": "\n".join(in_lines) + "\n",
        }


def _split_histogram(values_flags: Iterable[tuple[int, bool]]) -> dict[int, tuple[int, int]]:
    dblp: Counter = Counter()
    ext: Counter = Counter()
    for value, flag in values_flags:
        (dblp if flag else ext)[value] += 1
    return {b: (dblp.get(b, 0), ext.get(b, 0)) for b in sorted(set(dblp) | set(ext))}


def _mean(values: list[int]) -> float:
    return sum(values) / len(values) if values else 0.0


def dataset_stats(graph: CitationGraph) -> StatsReport:
    """Degree statistics and histograms for a loaded dataset."""
    pubs = [(len(graph.papers_of[a.id.index]), a.in_dblp) for a in graph.authors]
    coauthors = [(len(graph.authors_of[p.id.index]), p.in_dblp) for p in graph.papers]
    out_cits = [(len(graph.refs_of[p.id.index]), p.in_dblp) for p in graph.papers]
    in_cits_dblp = Counter(
        len(graph.cited_by[p.id.index]) for p in graph.papers if p.in_dblp
    )
    dblp_to_dblp = sum(
        1
        for p in graph.papers
        if p.in_dblp
        for r in graph.refs_of[p.id.index]
        if graph.papers[r].in_dblp
    )
    return StatsReport(
        n_authors=graph.n_authors,
        n_authors_dblp=sum(1 for a in graph.authors if a.in_dblp),
        n_papers=graph.n_papers,
        n_papers_dblp=sum(1 for p in graph.papers if p.in_dblp),
        mean_pubs_dblp=_mean([v for v, f in pubs if f]),
        mean_pubs_external=_mean([v for v, f in pubs if not f]),
        mean_coauthors_dblp=_mean([v for v, f in coauthors if f]),
        mean_coauthors_external=_mean([v for v, f in coauthors if not f]),
        citation_edges=graph.n_cite_edges,
        citation_edges_dblp_to_dblp=dblp_to_dblp,
        pubs_per_author=_split_histogram(pubs),
        coauthors_per_paper=_split_histogram(coauthors),
        out_citations_per_paper=_split_histogram(out_cits),
        in_citations_per_paper_dblp=dict(sorted(in_cits_dblp.items())),
    )


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(graph: CitationGraph, scores: Optional[ScoreTable] = None) -> str:
    """Graphviz text for a (sub)graph: authors as ellipses, papers as boxes,
    wrote edges undirected, cite edges directed.  Output is byte-stable."""
    score_by_key: dict[tuple[NodeKind, str], float] = {}
    if scores is not None:
        score_by_key = {
            (n.kind, e): float(s)
            for n, e, s in zip(scores.nodes, scores.ext_ids, scores.normalized)
        }

    def label(kind: NodeKind, ext: str, text: str) -> str:
        parts = [ext, text]
        key = (kind, ext)
        if key in score_by_key:
            parts.append(f"{score_by_key[key]:.6f}")
        return "\\n".join(_dot_escape(p) for p in parts)

    lines = ["digraph citations {"]
    for a in sorted(graph.authors, key=lambda a: a.ext_id):
        lines.append(
            f'  "a:{_dot_escape(a.ext_id)}" [shape=ellipse, '
            f'label="{label(NodeKind.AUTHOR, a.ext_id, a.name)}"];'
        )
    for p in sorted(graph.papers, key=lambda p: p.ext_id):
        lines.append(
            f'  "p:{_dot_escape(p.ext_id)}" [shape=box, '
            f'label="{label(NodeKind.PAPER, p.ext_id, p.title)}"];'
        )
    wrote = sorted(
        (graph.authors[a].ext_id, graph.papers[p].ext_id)
        for a, papers in enumerate(graph.papers_of)
        for p in papers
    )
    for a_ext, p_ext in wrote:
        lines.append(f'  "a:{_dot_escape(a_ext)}" -> "p:{_dot_escape(p_ext)}" [dir=none];')
    cites = sorted(
        (graph.papers[s].ext_id, graph.papers[d].ext_id)
        for s, refs in enumerate(graph.refs_of)
        for d in refs
    )
    for s_ext, d_ext in cites:
        lines.append(f'  "p:{_dot_escape(s_ext)}" -> "p:{_dot_escape(d_ext)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
