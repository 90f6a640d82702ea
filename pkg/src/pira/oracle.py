"""Exact stationary-distribution oracle for the walk on small graphs.

Builds the Markov chain over nodes implied by a parameter set (interpreted
mode only: the literal mode's double increment depends on the incoming
branch, so its per-arrival accounting is not a function of the node alone),
solves for the stationary arrival distribution by power iteration, and
reweights per-transition inflows by c-weight class to obtain the expected
per-arrival scores, i.e. the limit of the Monte Carlo scorer as the step
budget grows.

The transition matrix is held as three sparse class matrices (wrote, cite,
isWrittenBy) plus two rank-1 restart components: reinitialization mass times
the restart distribution, and fake-citation mass times the uniform paper
distribution.  Rows sum to one exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import ConvergenceError
from .graph import CitationGraph
from .walk import ScoreTable, WalkMode, WalkParams

DEFAULT_ORACLE_LIMIT = 10_000
DEFAULT_TOL = 1e-12
MAX_ITERATIONS = 10**6


@dataclass(frozen=True, eq=False)  # holds arrays; compare by identity
class TransitionSystem:
    """Row-stochastic transition structure of the walk, by c-weight class.

    States are authors [0, A) followed by papers [A, A+P).  For each row the
    class matrices plus ``init_mass * restart_dist + fake_mass * paper_dist``
    sum to one.
    """

    n_authors: int
    n_papers: int
    wrote_m: sp.csr_matrix    # author rows -> paper columns
    cite_m: sp.csr_matrix     # paper rows -> paper columns
    iswb_m: sp.csr_matrix     # paper rows -> author columns
    init_mass: np.ndarray     # per-row mass sent through the restart distribution
    fake_mass: np.ndarray     # per-row mass sent to a uniformly random paper
    restart_dist: np.ndarray  # distribution over all nodes
    paper_dist: np.ndarray    # uniform distribution over paper states

    @property
    def n(self) -> int:
        return self.n_authors + self.n_papers

    def step(self, pi: np.ndarray) -> np.ndarray:
        """One application of the chain: returns pi @ M."""
        out = pi @ self.wrote_m + pi @ self.cite_m + pi @ self.iswb_m
        out += (pi @ self.init_mass) * self.restart_dist
        out += (pi @ self.fake_mass) * self.paper_dist
        return out

    def row_sums(self) -> np.ndarray:
        link = (
            np.asarray(self.wrote_m.sum(axis=1)).ravel()
            + np.asarray(self.cite_m.sum(axis=1)).ravel()
            + np.asarray(self.iswb_m.sum(axis=1)).ravel()
        )
        return link + self.init_mass + self.fake_mass

    def to_dense(self) -> np.ndarray:
        """Materialized transition matrix; intended for small test systems."""
        m = (self.wrote_m + self.cite_m + self.iswb_m).toarray()
        m += np.outer(self.init_mass, self.restart_dist)
        m += np.outer(self.fake_mass, self.paper_dist)
        return m


def _restart_distribution(graph: CitationGraph, params: WalkParams) -> np.ndarray:
    n_a, n_p = graph.n_authors, graph.n_papers
    p_author = params.restart_author_prob
    if p_author is None:
        p_author = n_a / (n_a + n_p)
    if n_a == 0:
        p_author = 0.0
    elif n_p == 0:
        p_author = 1.0
    dist = np.zeros(n_a + n_p)
    if n_a:
        dist[:n_a] = p_author / n_a
    if n_p:
        dist[n_a:] = (1.0 - p_author) / n_p
    return dist


def build_transition_system(
    graph: CitationGraph,
    params: WalkParams,
    max_nodes: int = DEFAULT_ORACLE_LIMIT,
) -> TransitionSystem:
    """Exact per-node transition probabilities of the interpreted walk."""
    params.validate()
    if params.mode != WalkMode.INTERPRETED:
        raise ValueError("the oracle supports interpreted mode only")
    if graph.n_nodes == 0:
        raise ValueError("cannot build a transition system for an empty graph")
    if graph.n_nodes > max_nodes:
        raise ValueError(
            f"graph has {graph.n_nodes} nodes, above the oracle limit of {max_nodes}"
        )

    n_a, n_p = graph.n_authors, graph.n_papers
    n = n_a + n_p
    df = params.damping_df
    theta = params.theta
    keep = 1.0 - df
    k_min = params.min_citation_count

    init_mass = np.full(n, df)
    fake_mass = np.zeros(n)

    wrote_rows: list[int] = []
    wrote_cols: list[int] = []
    wrote_vals: list[float] = []
    for a in range(n_a):
        papers = graph.papers_of[a]
        if not papers:
            init_mass[a] += keep
            continue
        weights = np.array([1.0 / len(graph.authors_of[p]) for p in papers])
        weights *= keep / weights.sum()
        for p, w in zip(papers, weights):
            wrote_rows.append(a)
            wrote_cols.append(n_a + p)
            wrote_vals.append(w)

    cite_rows: list[int] = []
    cite_cols: list[int] = []
    cite_vals: list[float] = []
    iswb_rows: list[int] = []
    iswb_cols: list[int] = []
    iswb_vals: list[float] = []
    for p in range(n_p):
        row = n_a + p
        refs = graph.refs_of[p]
        n_refs = len(refs)
        if n_refs == 0:
            init_mass[row] += keep * theta
        else:
            slots = max(n_refs, k_min)
            per_ref = keep * theta / slots
            for r in refs:
                cite_rows.append(row)
                cite_cols.append(n_a + r)
                cite_vals.append(per_ref)
            fake_mass[row] += keep * theta * (slots - n_refs) / slots
        authors = graph.authors_of[p]
        if not authors:
            init_mass[row] += keep * (1.0 - theta)
        else:
            per_author = keep * (1.0 - theta) / len(authors)
            for a in authors:
                iswb_rows.append(row)
                iswb_cols.append(a)
                iswb_vals.append(per_author)

    def _csr(rows, cols, vals):
        return sp.csr_matrix((vals, (rows, cols)), shape=(n, n))

    return TransitionSystem(
        n_authors=n_a,
        n_papers=n_p,
        wrote_m=_csr(wrote_rows, wrote_cols, wrote_vals),
        cite_m=_csr(cite_rows, cite_cols, cite_vals),
        iswb_m=_csr(iswb_rows, iswb_cols, iswb_vals),
        init_mass=init_mass,
        fake_mass=fake_mass,
        restart_dist=_restart_distribution(graph, params),
        paper_dist=np.concatenate([np.zeros(n_a), np.full(n_p, 1.0 / n_p) if n_p else np.zeros(0)]),
    )


def stationary_distribution(
    ts, tol: float = DEFAULT_TOL, max_iterations: int = MAX_ITERATIONS
) -> np.ndarray:
    """Power-iterate from the uniform vector until the L1 residual drops below tol.

    Accepts a TransitionSystem or a plain row-stochastic ndarray.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if isinstance(ts, TransitionSystem):
        n = ts.n
        step = ts.step
    else:
        matrix = np.asarray(ts, dtype=float)
        n = matrix.shape[0]
        step = lambda pi: pi @ matrix
    pi = np.full(n, 1.0 / n)
    residual = float("inf")
    for _ in range(max_iterations):
        nxt = step(pi)
        nxt /= nxt.sum()
        residual = float(np.abs(nxt - pi).sum())
        pi = nxt
        if residual < tol:
            return pi
    raise ConvergenceError(
        f"power iteration did not reach tol={tol} after {max_iterations} iterations "
        f"(final residual {residual:.3e})",
        residual=residual,
    )


def expected_scores(
    graph: CitationGraph,
    params: WalkParams,
    tol: float = DEFAULT_TOL,
    max_nodes: int = DEFAULT_ORACLE_LIMIT,
) -> ScoreTable:
    """Expected per-arrival scores of the walk, normalized to mean 1.0.

    Each node's score rate sums stationary inflow per transition class times
    that class's c-weight; restart arrivals (reinitialization and fake
    citation picks alike) carry the restarting weight.
    """
    ts = build_transition_system(graph, params, max_nodes=max_nodes)
    pi = stationary_distribution(ts, tol=tol)
    rate = (
        params.wrote_weight * (pi @ ts.wrote_m)
        + params.cite_weight * (pi @ ts.cite_m)
        + params.iswb_weight * (pi @ ts.iswb_m)
        + params.restarting_weight
        * ((pi @ ts.init_mass) * ts.restart_dist + (pi @ ts.fake_mass) * ts.paper_dist)
    )
    return ScoreTable.over_all(graph, rate)
