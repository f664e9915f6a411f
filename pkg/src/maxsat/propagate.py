"""Simulated unit propagation and the lower-bound underestimation.

Propagation never commits assignments: it grows an implication graph
whose nodes are literals and stops at the first complementary pair.
The clauses labeling the nodes that reach the conflict form an
inconsistent subset; its shape decides whether an inference rule fires
(making the contradiction explicit as empty-clause weight) or the subset
is set aside and the underestimation counter grows.

Unit clauses are consumed through two FIFO queues: propagation starts
from the formula's unit clauses (Q1, in registry order) but never takes
one while a derived unit (Q2) is pending, which biases inconsistent
subsets toward containing few original unit clauses.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .formula import Clause, Formula
from .rules import NO_RULE, R3, R4, R5, R6, SolverConfig, _fire


class ComplementaryUnitsError(ValueError):
    """The formula still holds a complementary unit pair (rule 2 work)."""


class NoConflictError(ValueError):
    pass


class ImplicationGraph:
    """DAG of forced literals; each node carries the clause that forced it."""

    def __init__(self):
        self.nodes: dict[int, Clause] = {}      # literal -> associated clause
        self.preds: dict[int, tuple[int, ...]] = {}  # absent for unit-seeded nodes
        self.order: list[int] = []              # insertion order
        self.conflict: tuple[int, int] | None = None  # (last added, its negation)

    def has_node(self, lit: int) -> bool:
        return lit in self.nodes

    def reason(self, lit: int) -> Clause:
        return self.nodes[lit]

    def predecessors(self, lit: int) -> tuple[int, ...]:
        return self.preds.get(lit, ())

    def __len__(self) -> int:
        return len(self.nodes)

    def audit(self) -> None:
        """Acyclicity (edges point forward in insertion order) and the
        in-degree = clause length - 1 correspondence."""
        pos = {lit: i for i, lit in enumerate(self.order)}
        assert len(pos) == len(self.nodes)
        for lit, reason in self.nodes.items():
            ps = self.preds.get(lit, ())
            assert len(ps) == reason.size - 1, f"in-degree mismatch at {lit}"
            for p in ps:
                assert pos[p] < pos[lit], f"edge {p}->{lit} violates acyclicity"


def _propagate(formula: Formula, pop_log=None) -> ImplicationGraph:
    """One construction pass; stops at the first complementary node pair."""
    occ = formula.occ
    n = formula.num_vars
    formula.prop_stamp += 1
    stamp = formula.prop_stamp
    g = ImplicationGraph()
    nodes = g.nodes
    preds = g.preds
    order = g.order
    q1 = list(formula.units)
    q2: deque = deque()
    i1 = 0
    n1 = len(q1)
    while True:
        if q2:
            lit, reason = q2.popleft()
            if pop_log is not None:
                pop_log.append(("q2", lit, len(q2)))
        elif i1 < n1:
            c = q1[i1]
            i1 += 1
            if not c.live or c.size != 1:
                continue
            lit = c.lits[0]
            reason = c
            if pop_log is not None:
                pop_log.append(("q1", lit, len(q2)))
        else:
            return g
        if lit in nodes:
            continue
        nodes[lit] = reason
        order.append(lit)
        if reason.size > 1:
            preds[lit] = tuple(-x for x in reason.lits[: reason.size] if x != lit)
        if -lit in nodes:
            g.conflict = (lit, -lit)
            return g
        # every clause holding -lit loses one candidate literal
        for c in occ[n - lit]:
            if not c.live:
                continue
            if c.stamp != stamp:
                c.stamp = stamp
                c.nfalse = 1
            else:
                c.nfalse += 1
            if c.nfalse == c.size - 1:
                r = 0
                for x in c.lits[: c.size]:
                    if -x not in nodes:
                        r = x
                        break
                if r and r not in nodes:
                    q2.append((r, c))


def build_implication_graph(formula: Formula, pop_log=None) -> ImplicationGraph:
    """Construct the implication graph of the formula's unit propagation.

    The formula must not contain a complementary unit pair (those belong
    to rule 2); the lower-bound computation uses the tolerant internal
    path instead and treats such pairs as ordinary conflicts.
    """
    seen = set()
    for c in formula.units:
        lit = c.lits[0]
        if -lit in seen:
            raise ComplementaryUnitsError(
                f"complementary unit clauses on variable {abs(lit)}")
        seen.add(lit)
    return _propagate(formula, pop_log=pop_log)


@dataclass
class ConflictAnalysis:
    """The two sides of a propagation conflict and their rule diagnosis."""

    lit: int
    neg_lit: int
    s_lit: list[int]                 # nodes with a path to lit, plus lit
    s_neg: list[int]
    s_lit_clauses: list[Clause]
    s_neg_clauses: list[Clause]
    classification: str = NO_RULE
    intersection_chain: list[int] = field(default_factory=list)
    consumed: list[Clause] = field(default_factory=list)
    produced: list[list[int]] = field(default_factory=list)

    def subset_clauses(self) -> list[Clause]:
        """S = S_lit union S_neg as clauses, deduplicated, stable order."""
        out = list(self.s_lit_clauses)
        seen = {id(c) for c in out}
        for c in self.s_neg_clauses:
            if id(c) not in seen:
                out.append(c)
        return out


def _closure(graph: ImplicationGraph, lit: int) -> list[int]:
    """lit plus every node with a path to it, in deterministic DFS order."""
    out: dict[int, None] = {}
    stack = [lit]
    preds = graph.preds
    while stack:
        v = stack.pop()
        if v in out:
            continue
        out[v] = None
        stack.extend(preds.get(v, ()))
    return list(out)


def extract_inconsistent_subset(graph: ImplicationGraph) -> ConflictAnalysis:
    """Reverse reachability from both conflict literals, classified."""
    if graph.conflict is None:
        raise NoConflictError("graph has no complementary node pair")
    lit, nlit = graph.conflict
    s_lit = _closure(graph, lit)
    s_neg = _closure(graph, nlit)
    analysis = ConflictAnalysis(
        lit=lit,
        neg_lit=nlit,
        s_lit=s_lit,
        s_neg=s_neg,
        s_lit_clauses=[graph.nodes[v] for v in s_lit],
        s_neg_clauses=[graph.nodes[v] for v in s_neg],
    )
    classify_conflict(analysis, graph)
    return analysis


def _chain_from(graph: ImplicationGraph, endpoint: int, side: set[int]):
    """Walk predecessors from the endpoint; the chain in unit-to-endpoint
    order, or None if the side is not a single implication chain."""
    chain = [endpoint]
    v = endpoint
    while True:
        ps = graph.preds.get(v)
        if ps is None:
            break
        if len(ps) != 1:
            return None
        v = ps[0]
        chain.append(v)
    if len(chain) != len(side) or any(x not in side for x in chain):
        return None
    chain.reverse()
    return chain


def classify_conflict(analysis: ConflictAnalysis, graph: ImplicationGraph) -> str:
    """Match the conflict against the rule-detection shapes.

    Linear shape (both sides disjoint chains, one unit clause each) fires
    rule 3 or 4; single-unit shape with a shared chain prefix and a
    three-node fork fires rule 5 or 6. Anything else: no rule. On a match
    the analysis is filled with the consumed clauses and the replacement
    clause literals.
    """
    nodes = graph.nodes
    lit, nlit = analysis.lit, analysis.neg_lit
    set_l = set(analysis.s_lit)
    set_n = set(analysis.s_neg)
    inter = set_l & set_n

    analysis.classification = NO_RULE
    analysis.intersection_chain = []
    analysis.consumed = []
    analysis.produced = []

    if not inter:
        # rules 3/4 shape: each side one unit and a chain of binaries
        for side_set, endpoint in ((set_l, lit), (set_n, nlit)):
            units = [v for v in side_set if nodes[v].size == 1]
            if len(units) != 1:
                return NO_RULE
            if any(nodes[v].size > 2 for v in side_set):
                return NO_RULE
            if _chain_from(graph, endpoint, side_set) is None:
                return NO_RULE
        consumed = [nodes[v] for v in analysis.s_lit] + \
                   [nodes[v] for v in analysis.s_neg]
        produced = [[-x for x in c.active()] for c in consumed if c.size == 2]
        total = len(set_l) + len(set_n)
        analysis.classification = R3 if total <= 3 else R4
        analysis.consumed = consumed
        analysis.produced = produced
        return analysis.classification

    # rules 5/6 shape: one unit overall, all else binary, the shared
    # part a chain, and exactly three nodes outside it
    union = list(dict.fromkeys(analysis.s_lit + analysis.s_neg))
    units = [v for v in union if nodes[v].size == 1]
    if len(units) != 1 or any(nodes[v].size > 2 for v in union):
        return NO_RULE
    unit = units[0]
    if unit not in inter:
        return NO_RULE
    diff = [v for v in union if v not in inter]
    if len(diff) != 3 or lit not in diff or nlit not in diff:
        return NO_RULE
    third = next(v for v in diff if v != lit and v != nlit)
    # shared prefix must be a chain starting at the unit clause
    succ: dict[int, int] = {}
    for v in inter:
        if v == unit:
            continue
        p = graph.preds[v][0]
        if p in succ:
            return NO_RULE
        succ[p] = v
    chain = [unit]
    while chain[-1] in succ:
        chain.append(succ[chain[-1]])
    if len(chain) != len(inter) or any(v not in inter for v in chain):
        return NO_RULE
    lk = chain[-1]
    # fork: lk implies the third literal and one conflict literal directly,
    # the third implies the other conflict literal
    if graph.preds.get(third) != (lk,):
        return NO_RULE
    pl, pn = graph.preds.get(lit), graph.preds.get(nlit)
    if pl == (lk,) and pn == (third,):
        z = lit
    elif pn == (lk,) and pl == (third,):
        z = nlit
    else:
        return NO_RULE
    chain_clauses = [nodes[v] for v in chain[1:]]
    consumed = [nodes[unit]] + chain_clauses + \
        [nodes[third], nodes[z], nodes[-z]]
    produced = [[-x for x in c.active()] for c in chain_clauses]
    produced.append([lk, -third, -z])
    produced.append([-lk, third, z])
    analysis.classification = R5 if len(chain) == 1 else R6
    analysis.intersection_chain = chain
    analysis.consumed = consumed
    analysis.produced = produced
    return analysis.classification


def underestimation(formula: Formula, ub, config: SolverConfig | None = None,
                    stats=None, trace=None, pop_log=None) -> int:
    """Lower-bound underestimation via repeated propagation conflicts.

    Each conflict either fires an enabled inference rule (the formula is
    transformed in place on the trail and the contradiction moves into
    empty-clause weight) or its inconsistent subset is set aside and the
    count grows by the subset's minimum weight. Stops early once
    count + empty_weight reaches ub. Clauses set aside are reattached on
    exit, so apart from rule transformations the formula is unchanged.
    """
    count = 0
    detached: list[Clause] = []
    try:
        while True:
            graph = _propagate(formula, pop_log=pop_log)
            if graph.conflict is None:
                break
            analysis = extract_inconsistent_subset(graph)
            applied = False
            cls = analysis.classification
            if config is not None and cls != NO_RULE:
                enabled = config.enable_r34 if cls in (R3, R4) else config.enable_r56
                if enabled:
                    _fire(formula, cls, analysis.consumed, analysis.produced,
                          stats=stats, trace=trace)
                    applied = True
            if not applied:
                subset = analysis.subset_clauses()
                count += min(c.weight for c in subset)
                for c in subset:
                    formula.detach_clause(c)
                    detached.append(c)
            if count + formula.empty_weight >= ub:
                break
    finally:
        for c in detached:
            formula.attach_clause(c)
    return count
