"""Ranking toolkit for bipartite author-paper citation graphs.

Implements the PIRA random-walk ranking with configurable probability and
counter weights, five baseline measures (publication count, citation count,
H-index, PageRank on the paper graph, PageRank on a derived author graph),
an exact small-graph stationary oracle, TSV dataset ingestion, scenario
generators, and ranking-comparison analytics.
"""

from .graph import (
    Author,
    BuildReport,
    CitationGraph,
    NodeId,
    NodeKind,
    Paper,
    author_id,
    build_graph,
    neighborhood,
    p_weight,
    paper_id,
)
from .walk import (
    CitationChoice,
    ChoiceKind,
    ScoreTable,
    WalkMode,
    WalkParams,
    choose_citation,
    choose_paper_of_author,
    normalize,
    pira_rank,
)

__version__ = "0.1.0"

__all__ = [
    "Author",
    "BuildReport",
    "CitationGraph",
    "NodeId",
    "NodeKind",
    "Paper",
    "author_id",
    "build_graph",
    "neighborhood",
    "p_weight",
    "paper_id",
    "CitationChoice",
    "ChoiceKind",
    "ScoreTable",
    "WalkMode",
    "WalkParams",
    "choose_citation",
    "choose_paper_of_author",
    "normalize",
    "pira_rank",
]
