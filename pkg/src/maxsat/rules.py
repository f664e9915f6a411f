"""Equivalence-preserving inference rules for Max-SAT.

Each rule consumes a pattern of clauses and inserts replacement clauses
that keep the total unsatisfied weight identical under every complete
assignment. Rule 1 resolves two almost-common clauses; rules 2-6 make
one contradiction explicit as empty-clause weight so it never has to be
re-detected below the current node.

In weighted mode a rule fires with w = min over the pattern weights: the
replacement clauses carry weight w, each consumed clause loses w, and
clauses reaching weight 0 are removed (TOP - w = TOP). A contradiction
pattern made of mandatory clauses only admits no solution below TOP, so
the empty-clause-producing rules raise MandatoryConflictError for the
caller to backtrack on.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .formula import Clause, Formula

R1, R2, R3, R4, R5, R6 = "r1", "r2", "r3", "r4", "r5", "r6"
NO_RULE = "none"

RULE_IDS = (R1, R2, R3, R4, R5, R6)


class MandatoryConflictError(Exception):
    """An inconsistent subset of mandatory (TOP) clauses was derived."""


# every application is audited against the termination argument: the
# replacement clauses must carry strictly fewer literals than the pattern
SIZE_AUDIT = {"applications": 0, "violations": 0}


def _audit_sizes(consumed_size: int, produced_size: int) -> None:
    SIZE_AUDIT["applications"] += 1
    if produced_size >= consumed_size:
        SIZE_AUDIT["violations"] += 1
        raise AssertionError("rule application did not shrink the formula")


class PatternError(ValueError):
    """Clauses handed to a rule do not match its schema."""


@dataclass
class SolverConfig:
    """Which rule groups the solver applies (the pure-literal, empty-unit
    and dominating-unit-clause techniques are always on)."""

    enable_r12: bool = True
    enable_r34: bool = True
    enable_r56: bool = True
    # almost-common-clause matching for length-3 clauses; off to mirror the
    # reference behavior of applying the rule only to derive units
    rule1_ternary: bool = False

    @classmethod
    def variant(cls, name: str) -> "SolverConfig":
        try:
            flags = _VARIANTS[str(name)]
        except KeyError:
            raise ValueError(f"unknown variant {name!r}; use one of {list(_VARIANTS)}")
        return cls(*flags)


_VARIANTS = {
    "0": (False, False, False),
    "12": (True, False, False),
    "1234": (True, True, False),
    "z": (True, True, True),
}

VARIANT_NAMES = tuple(_VARIANTS)


@dataclass
class RuleApplication:
    rule_id: str
    consumed: list[int]  # slot ids of pattern clauses
    produced: list[int]  # slot ids of replacement clauses
    weight: int = 1


def _fire(formula: Formula, rule_id: str, pattern: list[Clause],
          produced_lits: list[list[int]], stats=None, trace=None) -> RuleApplication:
    """Shared weighted transformation core for every rule."""
    w = min(c.weight for c in pattern)
    if formula.is_top(w):
        raise MandatoryConflictError(
            f"rule {rule_id} pattern consists of mandatory clauses only")
    _audit_sizes(sum(c.size for c in pattern),
                 sum(len(lits) for lits in produced_lits))
    free_slots = []
    consumed_ids = []
    for c in pattern:
        consumed_ids.append(c.cid)
        formula.reduce_weight(c, w, on_trail=True)
        if not c.live:
            free_slots.append(c.cid)
    produced_ids = []
    for lits in produced_lits:
        slot = free_slots.pop(0) if free_slots else None
        nc = formula.add_clause(lits, w, slot=slot, on_trail=True)
        produced_ids.append(nc.cid)
    formula.add_empty(w, on_trail=True)
    app = RuleApplication(rule_id, consumed_ids, produced_ids, w)
    if stats is not None:
        stats.rule_apps[rule_id] += 1
    if trace is not None:
        trace.append(app)
    return app


def _check_live(clauses) -> None:
    for c in clauses:
        if not c.live:
            raise PatternError(f"clause {c.cid} is not live")


def negated(c: Clause) -> list[int]:
    """Every literal of the clause negated."""
    return [-lit for lit in c.active()]


# ---------- rule 1: replacement of almost common clauses ----------

def _clash_literal(c1: Clause, c2: Clause) -> int:
    """The single literal on which two equal-length clauses clash, given
    identical remaining literals; raises PatternError otherwise."""
    if c1.size != c2.size:
        raise PatternError("almost common clauses must have equal length")
    s1, s2 = set(c1.active()), set(c2.active())
    clash = [lit for lit in s1 if -lit in s2]
    if len(clash) != 1 or s1 - {clash[0]} != s2 - {-clash[0]}:
        raise PatternError(f"clauses {sorted(s1)} / {sorted(s2)} are not almost common")
    return clash[0]


def apply_rule1(formula: Formula, c1: Clause, c2: Clause,
                stats=None, trace=None) -> RuleApplication:
    """{l v rest, -l v rest} -> {rest}; two complementary units fall through
    to rule 2 (the resolvent is the empty clause)."""
    _check_live([c1, c2])
    clash = _clash_literal(c1, c2)
    if c1.size == 1:
        return apply_rule2(formula, c1, c2, stats=stats, trace=trace)
    rest = [lit for lit in c1.active() if lit != clash]
    w = min(c1.weight, c2.weight)
    _audit_sizes(c1.size + c2.size, len(rest))
    if formula.is_top(w):
        # two mandatory clauses collapse into their mandatory resolvent
        formula.remove_clause(c1, on_trail=True)
        formula.remove_clause(c2, on_trail=True)
    else:
        formula.reduce_weight(c1, w, on_trail=True)
        formula.reduce_weight(c2, w, on_trail=True)
    slot = c2.cid if not c2.live else (c1.cid if not c1.live else None)
    nc = formula.add_clause(rest, w, slot=slot, on_trail=True)
    app = RuleApplication(R1, [c1.cid, c2.cid], [nc.cid], w)
    if stats is not None:
        stats.rule_apps[R1] += 1
    if trace is not None:
        trace.append(app)
    return app


# ---------- rule 2: complementary unit clauses ----------

def apply_rule2(formula: Formula, u1: Clause, u2: Clause,
                stats=None, trace=None) -> RuleApplication:
    """{l, -l} -> {empty}."""
    _check_live([u1, u2])
    if u1.size != 1 or u2.size != 1 or u1.lits[0] != -u2.lits[0]:
        raise PatternError("rule 2 needs a complementary unit pair")
    return _fire(formula, R2, [u1, u2], [], stats=stats, trace=trace)


# ---------- rules 3/4: linear refutations consuming two unit clauses ----------

def _walk_linear(clauses) -> tuple[Clause, Clause, list[Clause]]:
    """Validate the chain {l1, -l1 v l2, ..., -lk v lk+1, -lk+1}; returns
    (head unit, tail unit, binaries in chain order)."""
    units = [c for c in clauses if c.size == 1]
    binaries = [c for c in clauses if c.size == 2]
    if len(units) != 2 or len(units) + len(binaries) != len(clauses):
        raise PatternError("linear pattern needs two units and binary links")
    head, tail = units
    current = head.lits[0]
    chain = []
    remaining = list(binaries)
    while remaining:
        nxt = [c for c in remaining if -current in c.active()]
        if len(nxt) != 1:
            raise PatternError("binaries do not form a single implication chain")
        c = nxt[0]
        remaining.remove(c)
        chain.append(c)
        a, b = c.active()
        current = b if a == -current else a
    if current != -tail.lits[0]:
        raise PatternError("chain does not end at the complementary unit")
    return head, tail, chain


def apply_rule3(formula: Formula, clauses, stats=None, trace=None) -> RuleApplication:
    """{l1, -l1 v -l2, l2} -> {empty, l1 v l2}."""
    clauses = list(clauses)
    _check_live(clauses)
    if len(clauses) != 3:
        raise PatternError("rule 3 consumes exactly three clauses")
    _, _, chain = _walk_linear(clauses)
    return _fire(formula, R3, clauses, [negated(c) for c in chain],
                 stats=stats, trace=trace)


def apply_rule4(formula: Formula, clauses, stats=None, trace=None) -> RuleApplication:
    """{l1, -l1 v l2, ..., -lk v lk+1, -lk+1} -> {empty, l1 v -l2, ..., lk v -lk+1}.

    The replacement binaries are the eliminated ones with both literals
    negated, so the transformation is orientation-independent.
    """
    clauses = list(clauses)
    _check_live(clauses)
    _, _, chain = _walk_linear(clauses)
    return _fire(formula, R4, clauses, [negated(c) for c in chain],
                 stats=stats, trace=trace)


# ---------- rules 5/6: refutations consuming a single unit clause ----------

def _walk_forked(clauses) -> tuple[list[Clause], Clause, int, int, int]:
    """Validate the chain-plus-fork pattern of rules 5/6: a chain from the
    unit to some lk, two binaries {-lk, A} and {-lk, B}, and {-A, -B}.
    Returns (chain binaries, unit, lk, A, B)."""
    units = [c for c in clauses if c.size == 1]
    binaries = [c for c in clauses if c.size == 2]
    if len(units) != 1 or len(units) + len(binaries) != len(clauses):
        raise PatternError("forked pattern needs one unit and binary links")
    unit = units[0]
    current = unit.lits[0]
    chain: list[Clause] = []
    remaining = list(binaries)
    while True:
        nxt = [c for c in remaining if -current in c.active()]
        if len(nxt) == 1 and len(remaining) > 1:
            c = nxt[0]
            remaining.remove(c)
            chain.append(c)
            a, b = c.active()
            current = b if a == -current else a
            continue
        if len(nxt) != 2 or len(remaining) != 3:
            raise PatternError("pattern does not fork into the rule 5 triangle")
        others = [c for c in remaining if c not in nxt]
        fa, fb = nxt
        a = next(x for x in fa.active() if x != -current)
        b = next(x for x in fb.active() if x != -current)
        if set(others[0].active()) != {-a, -b}:
            raise PatternError("fork targets are not joined by their negated pair")
        return chain, unit, current, a, b


def _forked_products(chain, lk, a, b) -> list[list[int]]:
    out = [negated(c) for c in chain]
    out.append([lk, -a, -b])
    out.append([-lk, a, b])
    return out


def apply_rule5(formula: Formula, clauses, stats=None, trace=None) -> RuleApplication:
    """{l1, -l1 v l2, -l1 v l3, -l2 v -l3} ->
    {empty, l1 v -l2 v -l3, -l1 v l2 v l3}."""
    clauses = list(clauses)
    _check_live(clauses)
    if len(clauses) != 4:
        raise PatternError("rule 5 consumes exactly four clauses")
    chain, _, lk, a, b = _walk_forked(clauses)
    return _fire(formula, R5, clauses, _forked_products(chain, lk, a, b),
                 stats=stats, trace=trace)


def apply_rule6(formula: Formula, clauses, stats=None, trace=None) -> RuleApplication:
    """Chain prefix ending in the rule 5 triangle: the chain binaries are
    negated and the triangle becomes the two ternaries."""
    clauses = list(clauses)
    _check_live(clauses)
    chain, _, lk, a, b = _walk_forked(clauses)
    return _fire(formula, R6, clauses, _forked_products(chain, lk, a, b),
                 stats=stats, trace=trace)
