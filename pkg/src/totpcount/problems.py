"""Concrete problem families and their self-reducible machines.

Each adapter turns an input object into a ``SelfReducibleInstance`` whose
branching tree has exactly as many nodes as the quantity being counted:

* ``is_instance``       -- nonempty independent sets of a graph,
* ``dnf_instance``      -- satisfying assignments of a DNF formula,
* ``monotone_instance`` -- satisfying assignments of a monotone circuit.

All adapters split on the lowest-numbered remaining vertex/variable, so
runs are reproducible, and declare ``branch_bound = n + 1`` (the +1 pays
for the synthetic final split).  ``cnf_complement`` maps a CNF formula to
the DNF of its negation, which counts the *non*-solutions.

The independent-set count deliberately excludes the empty set: the
decision version must be nontrivially easy (any single vertex is an
independent set), which is an assertion about nonempty sets.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError
from .machine import HALT, Branch, Deterministic, SelfReducibleInstance, StepOutcome

# ---------------------------------------------------------------------------
# input objects


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices 1..n_vertices, no self-loops."""

    n_vertices: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n_vertices and 1 <= v <= self.n_vertices):
                raise ValueError(f"edge ({u},{v}) references an unknown vertex")
            if u > v:
                raise ValueError("edges must be stored as (min, max) pairs")

    @staticmethod
    def from_edges(n_vertices: int, edges) -> "Graph":
        return Graph(n_vertices, frozenset((min(u, v), max(u, v)) for u, v in edges))

    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in range(1, self.n_vertices + 1)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}


def _check_literals(lits: tuple[int, ...], n_vars: int, kind: str) -> None:
    seen: set[int] = set()
    for lit in lits:
        if lit == 0 or abs(lit) > n_vars:
            raise ValueError(f"literal {lit} outside variables 1..{n_vars}")
        if -lit in seen:
            raise ValueError(f"{kind} contains both {abs(lit)} and its negation")
        seen.add(lit)


@dataclass(frozen=True)
class DnfFormula:
    """Disjunction of terms; each term is a conjunction of literals."""

    n_vars: int
    terms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for term in self.terms:
            _check_literals(term, self.n_vars, "term")


@dataclass(frozen=True)
class CnfFormula:
    """Conjunction of clauses; each clause a disjunction of literals."""

    n_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for clause in self.clauses:
            _check_literals(clause, self.n_vars, "clause")


@dataclass(frozen=True)
class MonotoneCircuit:
    """AND/OR circuit over inputs 0..n_inputs-1, gates in topological order.

    Gate operands reference node indices: 0..n_inputs-1 are inputs, and
    n_inputs+j is gate j.  ``output`` is a node index.
    """

    n_inputs: int
    gates: tuple[tuple[str, int, int], ...]
    output: int

    def __post_init__(self):
        for j, (op, a, b) in enumerate(self.gates):
            if op not in ("AND", "OR"):
                raise ValueError(f"gate {j}: unknown operation {op!r}")
            limit = self.n_inputs + j
            if not (0 <= a < limit and 0 <= b < limit):
                raise ValueError(f"gate {j}: operands must reference earlier nodes")
        if self.n_inputs + len(self.gates) == 0:
            if self.output != -1:
                raise ValueError("empty circuit must use output=-1")
        elif not 0 <= self.output < self.n_inputs + len(self.gates):
            raise ValueError("output references an unknown node")

    def evaluate(self, assignment, default: int = 1) -> int:
        """Evaluate with unassigned inputs set to ``default``."""
        if self.output == -1:
            return 0
        values = [
            (assignment[i] if i < len(assignment) else default)
            for i in range(self.n_inputs)
        ]
        for op, a, b in self.gates:
            if op == "AND":
                values.append(values[a] & values[b])
            else:
                values.append(values[a] | values[b])
        return values[self.output]


# ---------------------------------------------------------------------------
# adapters


def is_instance(g: Graph) -> SelfReducibleInstance:
    """Machine counting nonempty independent sets of ``g``.

    A state is (residual vertices, committed?): choosing 0 at vertex v
    puts v in the set (v and its neighborhood leave the residual),
    choosing 1 leaves v out.  A state has solutions iff some vertex
    remains or something was already committed.
    """
    adj = g.adjacency()
    initial = (frozenset(range(1, g.n_vertices + 1)), False)

    def decision(state) -> bool:
        residual, committed = state
        return bool(residual) or committed

    def step(state) -> StepOutcome:
        residual, committed = state
        if not residual:
            return HALT
        v = min(residual)
        took = (residual - {v} - adj[v], True)
        skipped = (residual - {v}, committed)
        if decision(skipped):
            return Branch(took, skipped)
        return Deterministic(took)

    return SelfReducibleInstance(
        initial=initial,
        step=step,
        decision=decision,
        branch_bound=g.n_vertices + 1,
        step_budget=2 * (g.n_vertices + 2),
        label=f"independent-sets(n={g.n_vertices})",
    )


def _term_consistent(term: tuple[int, ...], assigned: tuple[int, ...]) -> bool:
    for lit in term:
        var = abs(lit)
        if var <= len(assigned) and assigned[var - 1] != (1 if lit > 0 else 0):
            return False
    return True


def dnf_instance(phi: DnfFormula) -> SelfReducibleInstance:
    """Machine counting satisfying assignments of a DNF formula.

    States are prefixes of the assignment in variable order; a prefix has
    solutions iff some term is consistent with it.
    """
    n = phi.n_vars
    terms = phi.terms
    initial: tuple[int, ...] = ()

    def decision(assigned: tuple[int, ...]) -> bool:
        return any(_term_consistent(t, assigned) for t in terms)

    def step(assigned: tuple[int, ...]) -> StepOutcome:
        if len(assigned) == n:
            return HALT
        low, high = assigned + (0,), assigned + (1,)
        d0, d1 = decision(low), decision(high)
        if d0 and d1:
            return Branch(low, high)
        if d0:
            return Deterministic(low)
        if d1:
            return Deterministic(high)
        return HALT

    return SelfReducibleInstance(
        initial=initial,
        step=step,
        decision=decision,
        branch_bound=n + 1,
        step_budget=2 * (n + 2),
        label=f"dnf-sat(n={n}, terms={len(terms)})",
    )


def monotone_instance(circuit: MonotoneCircuit) -> SelfReducibleInstance:
    """Machine counting satisfying assignments of a monotone circuit.

    Monotonicity makes the decision exact: a prefix leads to a solution
    iff the circuit accepts when every unassigned input is forced to 1.
    """
    n = circuit.n_inputs
    initial: tuple[int, ...] = ()

    def decision(assigned: tuple[int, ...]) -> bool:
        return circuit.evaluate(assigned, default=1) == 1

    def step(assigned: tuple[int, ...]) -> StepOutcome:
        if len(assigned) == n:
            return HALT
        low, high = assigned + (0,), assigned + (1,)
        # decision(high) equals decision(assigned) by monotonicity.
        if decision(low):
            return Branch(low, high)
        return Deterministic(high)

    return SelfReducibleInstance(
        initial=initial,
        step=step,
        decision=decision,
        branch_bound=n + 1,
        step_budget=2 * (n + 2),
        label=f"monotone-sat(n={n}, gates={len(circuit.gates)})",
    )


def cnf_complement(phi: CnfFormula) -> DnfFormula:
    """DNF of the negation: clause (l1 v ... v lk) becomes term (-l1 ^ ... ^ -lk).

    The result counts non-solutions of ``phi``: sat(result) = 2^n - sat(phi).
    """
    return DnfFormula(
        n_vars=phi.n_vars,
        terms=tuple(tuple(-lit for lit in clause) for clause in phi.clauses),
    )


# ---------------------------------------------------------------------------
# file formats


def _header(line: str, kind: str, path, lineno: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 4 or parts[0] != "p" or parts[1] != kind:
        raise ParseError(f"{path}:{lineno}: expected header 'p {kind} N M'")
    try:
        return int(parts[2]), int(parts[3])
    except ValueError as exc:
        raise ParseError(f"{path}:{lineno}: non-integer header fields") from exc


def load_graph(path) -> Graph:
    """DIMACS-like graph file: 'p graph N M' then M lines 'e u v'."""
    n = None
    edges: list[tuple[int, int]] = []
    declared = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                n, declared = _header(line, "graph", path, lineno)
                continue
            parts = line.split()
            if n is None or parts[0] != "e" or len(parts) != 3:
                raise ParseError(f"{path}:{lineno}: expected 'e u v' after the header")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: non-integer endpoints") from exc
            edges.append((u, v))
    if n is None:
        raise ParseError(f"{path}: missing 'p graph N M' header")
    if len(edges) != declared:
        raise ParseError(f"{path}: header declares {declared} edges, found {len(edges)}")
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def save_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"p graph {g.n_vertices} {len(g.edges)}\n")
        for u, v in sorted(g.edges):
            fh.write(f"e {u} {v}\n")


def load_dnf(path) -> DnfFormula:
    """DNF file: 'p dnf N M' then M lines of literals, one term per line, 0-terminated."""
    n = None
    terms: list[tuple[int, ...]] = []
    declared = 0
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                n, declared = _header(line, "dnf", path, lineno)
                continue
            if n is None:
                raise ParseError(f"{path}:{lineno}: term before the header")
            try:
                ints = [int(tok) for tok in line.split()]
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: non-integer literal") from exc
            if not ints or ints[-1] != 0 or 0 in ints[:-1]:
                raise ParseError(f"{path}:{lineno}: term must be 0-terminated literals")
            terms.append(tuple(ints[:-1]))
    if n is None:
        raise ParseError(f"{path}: missing 'p dnf N M' header")
    if len(terms) != declared:
        raise ParseError(f"{path}: header declares {declared} terms, found {len(terms)}")
    try:
        return DnfFormula(n, tuple(terms))
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def save_dnf(phi: DnfFormula, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"p dnf {phi.n_vars} {len(phi.terms)}\n")
        for term in phi.terms:
            fh.write(" ".join(str(lit) for lit in term) + " 0\n")


def load_cnf(path) -> CnfFormula:
    """Standard DIMACS CNF: clauses are 0-terminated literal runs."""
    n = None
    declared = 0
    tokens: list[int] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                n, declared = _header(line, "cnf", path, lineno)
                continue
            if n is None:
                raise ParseError(f"{path}:{lineno}: clause before the header")
            try:
                tokens.extend(int(tok) for tok in line.split())
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: non-integer literal") from exc
    if n is None:
        raise ParseError(f"{path}: missing 'p cnf N M' header")
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for tok in tokens:
        if tok == 0:
            clauses.append(tuple(current))
            current = []
        else:
            current.append(tok)
    if current:
        raise ParseError(f"{path}: trailing clause without terminating 0")
    if len(clauses) != declared:
        raise ParseError(f"{path}: header declares {declared} clauses, found {len(clauses)}")
    try:
        return CnfFormula(n, tuple(clauses))
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def save_cnf(phi: CnfFormula, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"p cnf {phi.n_vars} {len(phi.clauses)}\n")
        for clause in phi.clauses:
            fh.write(" ".join(str(lit) for lit in clause) + " 0\n")


def load_circuit(path) -> MonotoneCircuit:
    """Line-based monotone circuit: 'input k', 'gate g AND|OR a b', 'output g'."""
    ids: dict[int, int] = {}
    n_inputs = 0
    gates: list[tuple[str, int, int]] = []
    output_id = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            try:
                if parts[0] == "input" and len(parts) == 2:
                    gid = int(parts[1])
                    if gid in ids:
                        raise ParseError(f"{path}:{lineno}: duplicate identifier {gid}")
                    if gates:
                        raise ParseError(f"{path}:{lineno}: inputs must precede gates")
                    ids[gid] = n_inputs
                    n_inputs += 1
                elif parts[0] == "gate" and len(parts) == 5 and parts[2] in ("AND", "OR"):
                    gid, a, b = int(parts[1]), int(parts[3]), int(parts[4])
                    if gid in ids:
                        raise ParseError(f"{path}:{lineno}: duplicate identifier {gid}")
                    if a not in ids or b not in ids:
                        raise ParseError(f"{path}:{lineno}: operand not declared earlier")
                    ids[gid] = n_inputs + len(gates)
                    gates.append((parts[2], ids[a], ids[b]))
                elif parts[0] == "output" and len(parts) == 2:
                    if output_id is not None:
                        raise ParseError(f"{path}:{lineno}: multiple output lines")
                    output_id = int(parts[1])
                else:
                    raise ParseError(f"{path}:{lineno}: unrecognized line {line!r}")
            except ValueError as exc:
                raise ParseError(f"{path}:{lineno}: non-integer identifier") from exc
    if output_id is None:
        raise ParseError(f"{path}: missing 'output g' line")
    if output_id not in ids:
        raise ParseError(f"{path}: output references undeclared identifier {output_id}")
    try:
        return MonotoneCircuit(n_inputs, tuple(gates), ids[output_id])
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def save_circuit(circuit: MonotoneCircuit, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for i in range(circuit.n_inputs):
            fh.write(f"input {i + 1}\n")
        for j, (op, a, b) in enumerate(circuit.gates):
            fh.write(f"gate {circuit.n_inputs + j + 1} {op} {a + 1} {b + 1}\n")
        fh.write(f"output {circuit.output + 1}\n")
