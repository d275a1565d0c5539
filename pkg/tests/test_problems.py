import pytest

from totpcount import (
    CnfFormula,
    DnfFormula,
    Graph,
    MonotoneCircuit,
    ParseError,
    cnf_complement,
    count_independent_sets,
    count_sat,
    dnf_instance,
    is_instance,
    load_cnf,
    load_circuit,
    load_dnf,
    load_graph,
    materialize_tree,
    monotone_instance,
    save_cnf,
    save_circuit,
    save_dnf,
    save_graph,
)
from totpcount.generate import (
    random_cnf,
    random_dnf,
    random_graph,
    random_monotone_circuit,
)


# --- adapter counts on the worked examples


@pytest.mark.parametrize(
    "edges, n, expected",
    [([(1, 2)], 2, 2), ([(1, 2), (2, 3), (1, 3)], 3, 3), ([(1, 2), (2, 3)], 3, 4)],
)
def test_is_instance_counts(edges, n, expected):
    g = Graph.from_edges(n, edges)
    assert count_independent_sets(g) == expected
    assert len(materialize_tree(is_instance(g)).nodes) == expected


@pytest.mark.parametrize(
    "terms, n, expected",
    [(((1, 2),), 2, 1), (((1,),), 2, 2), ((), 2, 0)],
)
def test_dnf_instance_counts(terms, n, expected):
    phi = DnfFormula(n, terms)
    assert count_sat(phi) == expected
    assert len(materialize_tree(dnf_instance(phi)).nodes) == expected


def test_monotone_instance_counts():
    c_and = MonotoneCircuit(2, (("AND", 0, 1),), 2)
    c_or = MonotoneCircuit(2, (("OR", 0, 1),), 2)
    assert count_sat(c_and) == 1
    assert count_sat(c_or) == 3
    assert len(materialize_tree(monotone_instance(c_and)).nodes) == 1
    assert len(materialize_tree(monotone_instance(c_or)).nodes) == 3


def test_degenerate_empty_circuit_counts_zero():
    empty = MonotoneCircuit(0, (), -1)
    assert count_sat(empty) == 0
    assert materialize_tree(monotone_instance(empty)).is_empty


def test_zero_variable_dnf():
    top = DnfFormula(0, ((),))  # one empty term: always true
    assert count_sat(top) == 1
    assert len(materialize_tree(dnf_instance(top)).nodes) == 1


def test_empty_graph_has_no_nonempty_independent_sets():
    g = Graph.from_edges(0, [])
    assert count_independent_sets(g) == 0
    assert materialize_tree(is_instance(g)).is_empty


# --- complement reduction


def test_cnf_complement_example():
    phi = CnfFormula(2, ((1, 2),))
    psi = cnf_complement(phi)
    assert psi.terms == ((-1, -2),)
    assert count_sat(psi) == 1 == 4 - count_sat(phi)


def test_cnf_complement_zero_clauses():
    phi = CnfFormula(3, ())
    psi = cnf_complement(phi)
    assert psi.terms == ()
    assert count_sat(phi) == 8 and count_sat(psi) == 0


def test_cnf_complement_of_unsatisfiable():
    phi = CnfFormula(2, ((1,), (-1,)))
    psi = cnf_complement(phi)
    assert count_sat(phi) == 0
    assert count_sat(psi) == 4


def test_cnf_complement_roundtrip_counts(rng):
    for _ in range(30):
        n = int(rng.integers(1, 9))
        phi = random_cnf(rng, n, int(rng.integers(0, 7)))
        assert count_sat(phi) + count_sat(cnf_complement(phi)) == 2**n


# --- adapter vs oracle sweeps and the height convention


def test_adapters_match_bruteforce(rng):
    for _ in range(30):
        g = random_graph(rng, int(rng.integers(1, 9)), edge_prob=float(rng.uniform(0.1, 0.6)))
        assert len(materialize_tree(is_instance(g)).nodes) == count_independent_sets(g)
    for _ in range(30):
        phi = random_dnf(rng, int(rng.integers(1, 9)), int(rng.integers(0, 6)))
        assert len(materialize_tree(dnf_instance(phi)).nodes) == count_sat(phi)
    for _ in range(30):
        c = random_monotone_circuit(rng, int(rng.integers(1, 9)), int(rng.integers(1, 8)))
        assert len(materialize_tree(monotone_instance(c)).nodes) == count_sat(c)


def test_branch_bound_is_n_plus_one(rng):
    g = random_graph(rng, 7, 0.3)
    assert is_instance(g).branch_bound == 8
    phi = random_dnf(rng, 7, 3)
    assert dnf_instance(phi).branch_bound == 8
    c = random_monotone_circuit(rng, 7, 4)
    assert monotone_instance(c).branch_bound == 8


# --- validation


def test_contradictory_term_rejected():
    with pytest.raises(ValueError):
        DnfFormula(2, ((1, -1),))


def test_tautological_clause_rejected():
    with pytest.raises(ValueError):
        CnfFormula(2, ((1, -1),))


def test_out_of_range_literal_rejected():
    with pytest.raises(ValueError):
        DnfFormula(2, ((3,),))


def test_graph_rejects_self_loop():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(1, 1)])


def test_circuit_rejects_forward_reference():
    with pytest.raises(ValueError):
        MonotoneCircuit(1, (("AND", 0, 2),), 1)


# --- file formats


def test_graph_file_roundtrip(tmp_path, rng):
    g = random_graph(rng, 6, 0.4)
    path = tmp_path / "g.graph"
    save_graph(g, path)
    assert load_graph(path) == g


def test_dnf_file_roundtrip(tmp_path, rng):
    phi = random_dnf(rng, 6, 4)
    path = tmp_path / "phi.dnf"
    save_dnf(phi, path)
    assert load_dnf(path) == phi


def test_cnf_file_roundtrip(tmp_path, rng):
    phi = random_cnf(rng, 6, 5)
    path = tmp_path / "phi.cnf"
    save_cnf(phi, path)
    assert load_cnf(path) == phi


def test_circuit_file_roundtrip(tmp_path, rng):
    c = random_monotone_circuit(rng, 4, 3)
    path = tmp_path / "c.mono"
    save_circuit(c, path)
    assert load_circuit(path) == c


def test_cnf_multiline_clauses(tmp_path):
    path = tmp_path / "phi.cnf"
    path.write_text("c comment\np cnf 3 2\n1 2\n3 0\n-1 -2 0\n", encoding="utf-8")
    phi = load_cnf(path)
    assert phi.clauses == ((1, 2, 3), (-1, -2))


@pytest.mark.parametrize(
    "name, text, loader",
    [
        ("bad.graph", "p graph 2\ne 1 2\n", load_graph),
        ("bad.graph2", "p graph 2 1\ne 1 x\n", load_graph),
        ("bad.dnf", "p dnf 2 1\n1 2\n", load_dnf),
        ("bad.cnf", "p cnf 2 1\n1 2\n", load_cnf),
        ("bad.mono", "input 1\ngate 2 XOR 1 1\noutput 2\n", load_circuit),
        ("bad2.mono", "input 1\ngate 2 AND 1 3\noutput 2\n", load_circuit),
    ],
)
def test_parse_errors(tmp_path, name, text, loader):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ParseError):
        loader(path)
