import pytest

from totpcount import (
    Branch,
    Deterministic,
    DnfFormula,
    Graph,
    HALT,
    MalformedInstanceError,
    NotInTreeError,
    SelfReducibleInstance,
    build_branching_tree,
    children_in_tree,
    count_computation_paths,
    count_independent_sets,
    count_sat,
    dnf_instance,
    is_instance,
    materialize_tree,
)
from totpcount.generate import random_dnf, random_graph


def test_dnf_two_solutions_has_two_nodes():
    phi = DnfFormula(2, ((1,),))
    tree = materialize_tree(dnf_instance(phi))
    assert len(tree.nodes) == 2 == count_sat(phi)


def test_is_single_edge_has_two_nodes():
    g = Graph.from_edges(2, [(1, 2)])
    tree = materialize_tree(is_instance(g))
    assert len(tree.nodes) == 2 == count_independent_sets(g)


def test_unsatisfiable_dnf_gives_empty_tree():
    tree = build_branching_tree(dnf_instance(DnfFormula(2, ())))
    assert tree.is_empty
    with pytest.raises(NotInTreeError):
        tree.children(())


def test_children_of_path_graph_root_reach_full_count():
    g = Graph.from_edges(3, [(1, 2), (2, 3)])
    inst = is_instance(g)
    tree = materialize_tree(inst)
    assert len(tree.nodes) == 4 == count_independent_sets(g)
    kids = children_in_tree(inst, ())
    assert kids  # the root of a 4-node tree must branch somewhere below


def test_single_solution_dnf_root_is_leaf():
    inst = dnf_instance(DnfFormula(2, ((1, 2),)))
    assert children_in_tree(inst, ()) == ()


def test_synthetic_branch_children_halt():
    # f=2 for (x1) on two variables: nodes are () and the synthetic (1,).
    inst = dnf_instance(DnfFormula(2, ((1,),)))
    assert children_in_tree(inst, (1,)) == ()


def test_replay_is_deterministic():
    g = Graph.from_edges(4, [(1, 2), (3, 4)])
    inst = is_instance(g)
    tree = build_branching_tree(inst)
    first = [tree.children(node) for node in sorted(materialize_tree(inst).nodes)]
    second = [tree.children(node) for node in sorted(materialize_tree(inst).nodes)]
    assert first == second


def test_memoized_tree_matches_plain(rng):
    phi = random_dnf(rng, 6, 4)
    plain = materialize_tree(dnf_instance(phi))
    memo = materialize_tree(dnf_instance(phi))
    assert plain.nodes == memo.nodes


def test_path_count_identity_on_random_instances(rng):
    for _ in range(25):
        g = random_graph(rng, int(rng.integers(1, 8)), edge_prob=0.4)
        inst = is_instance(g)
        f = count_independent_sets(g)
        assert len(materialize_tree(inst).nodes) == f
        assert count_computation_paths(inst) == f + 1
    for _ in range(25):
        phi = random_dnf(rng, int(rng.integers(1, 8)), int(rng.integers(0, 5)))
        inst = dnf_instance(phi)
        f = count_sat(phi)
        assert len(materialize_tree(inst).nodes) == f
        assert count_computation_paths(inst) == f + 1


def test_tree_height_bound(rng):
    for _ in range(10):
        phi = random_dnf(rng, 6, 3)
        inst = dnf_instance(phi)
        tree = materialize_tree(inst)
        if tree.nodes:
            assert max(len(p) for p in tree.nodes) <= inst.branch_bound


def test_branch_bound_violation_is_reported():
    runaway = SelfReducibleInstance(
        initial=0,
        step=lambda s: Branch(s + 1, s + 1),
        decision=lambda s: True,
        branch_bound=2,
        step_budget=100,
    )
    tree = build_branching_tree(runaway)
    with pytest.raises(MalformedInstanceError):
        tree.children((1, 1))


def test_step_budget_violation_is_reported():
    spinner = SelfReducibleInstance(
        initial=0,
        step=lambda s: Deterministic(s),
        decision=lambda s: True,
        branch_bound=3,
        step_budget=50,
    )
    tree = build_branching_tree(spinner)
    with pytest.raises(MalformedInstanceError):
        tree.children(())


def test_queries_outside_tree_raise():
    inst = dnf_instance(DnfFormula(2, ((1, 2),)))  # single node ()
    tree = build_branching_tree(inst)
    with pytest.raises(NotInTreeError):
        tree.children((0,))
    assert (0,) not in tree
    assert () in tree


def test_halt_outcome_singleton_usable():
    assert HALT == HALT
