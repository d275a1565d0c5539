#!/usr/bin/env python3
"""Acceptance probability and gap satisfiability for circuit families.

DNF formulas and monotone circuits are handled directly; CNF formulas go
through the complement route (the negation of a CNF is a DNF over the
same variables, and p = 1 - q).
"""
import numpy as np

from totpcount import CnfFormula, MonotoneCircuit, capp, count_sat, gap_csat

SEED = np.random.default_rng(23).integers(0, 2**32)

print("=== CNF (x1 v x2): p = 3/4 via the complement route ===")
phi = CnfFormula(2, ((1, 2),))
result = capp(phi, epsilon=0.1, delta=0.1, seed=int(SEED), transport="exact")
print(f"  true p:  {count_sat(phi) / 4}")
print(f"  p_hat:   {result.p_hat:.4f} +- {result.epsilon} (route: {result.route})")

print()
print("=== monotone circuit (x1 OR x2) AND x3 ===")
circuit = MonotoneCircuit(3, (("OR", 0, 1), ("AND", 3, 2)), 4)
result = capp(circuit, epsilon=0.1, delta=0.1, seed=int(SEED), transport="exact")
print(f"  true p:  {count_sat(circuit) / 8}")
print(f"  p_hat:   {result.p_hat:.4f} (route: {result.route})")

print()
print("=== gap decision at rho = 0.4 ===")
unsat = CnfFormula(3, ((1, 2), (1, -2), (-1, 2), (-1, -2)))
wide = CnfFormula(3, ((1, 2, 3),))
for name, formula in (("contradiction block", unsat), ("one wide clause", wide)):
    verdict = gap_csat(formula, rho=0.4, delta=0.05, seed=int(SEED), transport="exact")
    label = "satisfiable" if verdict.satisfiable else "unsatisfiable"
    print(f"  {name:>20}: {label} (p_hat = {verdict.p_hat:.3f}, "
          f"true p = {count_sat(formula) / 8})")
