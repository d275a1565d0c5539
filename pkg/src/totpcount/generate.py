"""Seeded random instance generators for benchmarks, demos, and tests."""
from __future__ import annotations

import numpy as np

from .problems import CnfFormula, DnfFormula, Graph, MonotoneCircuit


def random_graph(rng: np.random.Generator, n_vertices: int, edge_prob: float = 0.3) -> Graph:
    edges = [
        (u, v)
        for u in range(1, n_vertices + 1)
        for v in range(u + 1, n_vertices + 1)
        if rng.random() < edge_prob
    ]
    return Graph.from_edges(n_vertices, edges)


def _random_literals(rng: np.random.Generator, n_vars: int, width: int) -> tuple[int, ...]:
    width = min(width, n_vars)
    variables = rng.choice(np.arange(1, n_vars + 1), size=width, replace=False)
    return tuple(int(v) * (1 if rng.random() < 0.5 else -1) for v in variables)


def random_dnf(
    rng: np.random.Generator,
    n_vars: int,
    n_terms: int,
    max_width: int = 3,
) -> DnfFormula:
    terms = tuple(
        _random_literals(rng, n_vars, int(rng.integers(1, max_width + 1)))
        for _ in range(n_terms)
    )
    return DnfFormula(n_vars, terms)


def random_cnf(
    rng: np.random.Generator,
    n_vars: int,
    n_clauses: int,
    width: int = 3,
) -> CnfFormula:
    clauses = tuple(_random_literals(rng, n_vars, width) for _ in range(n_clauses))
    return CnfFormula(n_vars, clauses)


def random_monotone_circuit(
    rng: np.random.Generator,
    n_inputs: int,
    n_gates: int,
) -> MonotoneCircuit:
    gates: list[tuple[str, int, int]] = []
    for j in range(n_gates):
        limit = n_inputs + j
        a, b = int(rng.integers(0, limit)), int(rng.integers(0, limit))
        gates.append(("AND" if rng.random() < 0.5 else "OR", a, b))
    output = n_inputs + n_gates - 1 if n_gates else n_inputs - 1
    return MonotoneCircuit(n_inputs, tuple(gates), output)
