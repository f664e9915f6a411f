"""DIMACS CNF / WCNF parsing and serialization, plus edge-list graphs.

Whitespace of any kind separates tokens and clauses may span lines.
Empty clauses are written as a bare terminator line (a solver-internal
extension; standard DIMACS has no empty clause).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .formula import Formula, normalize_lits


class DimacsError(ValueError):
    pass


@dataclass
class ParsedInstance:
    formula: Formula
    comments: list[str] = field(default_factory=list)
    declared_variables: int = 0
    declared_clauses: int = 0


@dataclass
class GraphInstance:
    vertex_count: int
    edges: list[tuple[int, int]] = field(default_factory=list)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def _split_stream(text: str):
    """Comment lines and the token stream of everything else."""
    comments = []
    tokens = []
    header = None
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("c"):
            comments.append(stripped[1:].lstrip())
            continue
        if stripped.startswith("p"):
            if header is not None:
                raise DimacsError("duplicate header line")
            header = stripped.split()
            continue
        tokens.extend(stripped.split())
    return comments, header, tokens


def _int_token(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise DimacsError(f"non-integer token {tok!r}") from None


def _parse_clause_body(tokens, pos, n, strict):
    """Literals until the 0 terminator; returns (lits, new position)."""
    lits = []
    while True:
        if pos >= len(tokens):
            raise DimacsError("unterminated clause (missing trailing 0)")
        val = _int_token(tokens[pos])
        pos += 1
        if val == 0:
            return lits, pos
        if abs(val) > n:
            if strict:
                raise DimacsError(f"literal {val} exceeds declared variable count {n}")
            warnings.warn(f"literal {val} exceeds declared variable count {n}")
        lits.append(val)


def _store_clause(formula, lits, weight):
    norm = normalize_lits(lits)
    if norm is None:
        warnings.warn(f"tautological clause {lits} dropped")
        return
    if not norm:
        formula.add_empty(weight)
        return
    formula.add_clause(norm, weight)


def parse_cnf(text: str, strict: bool = True) -> ParsedInstance:
    """Parse a DIMACS CNF stream into a weight-1 clause multiset."""
    comments, header, tokens = _split_stream(text)
    if header is None or len(header) != 4 or header[1] != "cnf":
        raise DimacsError("missing or malformed 'p cnf <vars> <clauses>' header")
    n = _int_token(header[2])
    m = _int_token(header[3])
    if n < 0 or m < 0:
        raise DimacsError("negative header counts")
    lenient_max = 0
    if not strict:
        # lenient mode accepts out-of-range literals by growing n
        lenient_max = max((abs(_int_token(t)) for t in tokens), default=0)
    formula = Formula(max(n, lenient_max))
    pos = 0
    count = 0
    while pos < len(tokens):
        lits, pos = _parse_clause_body(tokens, pos, n, strict)
        _store_clause(formula, lits, 1)
        count += 1
    if count != m:
        msg = f"header declares {m} clauses but {count} were read"
        if strict:
            raise DimacsError(msg)
        warnings.warn(msg)
    return ParsedInstance(formula, comments, n, m)


def parse_wcnf(text: str, strict: bool = True) -> ParsedInstance:
    """Parse a DIMACS WCNF stream; weights equal to the declared top are
    mandatory clauses."""
    comments, header, tokens = _split_stream(text)
    if header is None or len(header) not in (4, 5) or header[1] != "wcnf":
        raise DimacsError("missing or malformed 'p wcnf <vars> <clauses> [top]' header")
    n = _int_token(header[2])
    m = _int_token(header[3])
    top = _int_token(header[4]) if len(header) == 5 else None
    if top is not None and top < 1:
        raise DimacsError("top must be positive")
    formula = Formula(n, top=top)
    pos = 0
    count = 0
    while pos < len(tokens):
        w = _int_token(tokens[pos])
        pos += 1
        if w <= 0:
            raise DimacsError(f"clause weight {w} must be >= 1")
        lits, pos = _parse_clause_body(tokens, pos, n, strict)
        _store_clause(formula, lits, w)
        count += 1
    if count != m:
        msg = f"header declares {m} clauses but {count} were read"
        if strict:
            raise DimacsError(msg)
        warnings.warn(msg)
    return ParsedInstance(formula, comments, n, m)


def write_cnf(formula: Formula) -> str:
    """Serialize as DIMACS CNF; round-trips the clause multiset exactly.

    Weights are ignored (write_wcnf keeps them); empty-clause weight is
    emitted as that many bare terminator lines.
    """
    lines = []
    count = 0
    for c in formula.clauses():
        lines.append(" ".join(str(lit) for lit in c.active()) + " 0")
        count += 1
    for _ in range(formula.empty_weight):
        lines.append("0")
        count += 1
    head = f"p cnf {formula.num_vars} {count}"
    return "\n".join([head] + lines) + "\n"


def write_wcnf(formula: Formula) -> str:
    lines = []
    count = 0
    for c in formula.clauses():
        lines.append(f"{c.weight} " + " ".join(str(lit) for lit in c.active()) + " 0")
        count += 1
    if formula.empty_weight:
        lines.append(f"{formula.empty_weight} 0")
        count += 1
    head = f"p wcnf {formula.num_vars} {count}"
    if formula.top is not None:
        head += f" {formula.top}"
    return "\n".join([head] + lines) + "\n"


def parse_graph(text: str) -> GraphInstance:
    """Parse a DIMACS-style edge list: 'p edge <v> <e>' then 'e i j' lines."""
    vertex_count = None
    declared_edges = None
    edges = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        fields = stripped.split()
        if fields[0] == "p":
            if vertex_count is not None:
                raise DimacsError("duplicate graph header")
            if len(fields) != 4 or fields[1] != "edge":
                raise DimacsError("malformed 'p edge <vertices> <edges>' header")
            vertex_count = _int_token(fields[2])
            declared_edges = _int_token(fields[3])
        elif fields[0] == "e":
            if vertex_count is None:
                raise DimacsError("edge line before header")
            if len(fields) != 3:
                raise DimacsError(f"malformed edge line {stripped!r}")
            a, b = _int_token(fields[1]), _int_token(fields[2])
            if a == b:
                raise DimacsError(f"self-loop on vertex {a}")
            if not (1 <= a <= vertex_count and 1 <= b <= vertex_count):
                raise DimacsError(f"vertex out of range in edge {a} {b}")
            edges.append((min(a, b), max(a, b)))
        else:
            raise DimacsError(f"unrecognized line {stripped!r}")
    if vertex_count is None:
        raise DimacsError("missing graph header")
    if declared_edges != len(edges):
        raise DimacsError(
            f"header declares {declared_edges} edges but {len(edges)} were read")
    return GraphInstance(vertex_count, edges)


def write_graph(graph: GraphInstance) -> str:
    lines = [f"p edge {graph.vertex_count} {len(graph.edges)}"]
    lines.extend(f"e {a} {b}" for a, b in graph.edges)
    return "\n".join(lines) + "\n"
