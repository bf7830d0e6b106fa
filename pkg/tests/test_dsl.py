from __future__ import annotations

from fractions import Fraction

import pytest

from inducibility.dsl import (
    Bernoulli,
    BlowUp,
    Compose,
    ExprError,
    Named,
    Tensor,
    Union,
    evaluate,
    parse_expr,
    parse_quantum,
    print_expr,
    split_top_level,
)
from inducibility.graphs import LabeledGraph, build_named, canonical_form, graph6_encode
from inducibility.models import StepModel
from inducibility.profiles import iso_table


ROUND_TRIP_CASES = [
    "K3",
    "loopK2",
    "complement(K5)",
    "blowup(C5, 3)",
    "compose(tensor(K3, K3), K2)",
    "tensor(M4, K4, K3, K3)",
    "union(K2:1, K2:1)",
    "union(K2:3/8, A3:5/8)",
    "bernoulli(1/2)",
    "bipartite(5/6)",
    "kpart(2, 2, 2)",
    "paley(17)",
    "cayley2(10; 1, 2, 5, 6, 9, 10)",
    'load("graphs/g18.g6")',
]


def test_print_parse_round_trip():
    for text in ROUND_TRIP_CASES:
        node = parse_expr(text)
        assert print_expr(node) == text
        assert parse_expr(print_expr(node)) == node


def test_parse_normalizes_whitespace():
    node = parse_expr("  tensor( K3 ,K3 )  ")
    assert print_expr(node) == "tensor(K3, K3)"


def test_print_normalizes_decimals_to_rationals():
    node = parse_expr("bernoulli(0.3)")
    assert print_expr(node) == "bernoulli(3/10)"
    assert parse_expr(print_expr(node)) == node


def test_compose_folds_left():
    node = parse_expr("compose(K2, K3, K4)")
    assert isinstance(node, Compose)
    assert isinstance(node.left, Compose)
    assert print_expr(node) == "compose(compose(K2, K3), K4)"


def test_union_default_weight():
    node = parse_expr("union(K2, K3:2)")
    assert isinstance(node, Union)
    assert node.parts[0][1] == Fraction(1)
    assert node.parts[1][1] == Fraction(2)


def test_parse_errors_carry_positions():
    cases = [
        ("", 0),
        ("tensor(K3", None),
        ("blowup(K3)", None),
        ("compose(K3)", None),
        ("frob(K3)", 0),
        ("K3 K4", 3),
        ("bernoulli(1/2/3)", None),
        ("cayley2(10)", None),
        ("load(unquoted)", None),
        ("union(K2:%)", None),
    ]
    for text, pos in cases:
        with pytest.raises(ExprError) as err:
            parse_expr(text)
        if pos is not None:
            assert err.value.pos == pos


def test_rational_literals_are_integer_only():
    with pytest.raises(ExprError):
        parse_expr("bernoulli(0.5/2)")
    assert parse_expr("bernoulli(0.25)") == Bernoulli(p=Fraction(1, 4))


def test_decimal_literals_are_exact():
    node = parse_expr("bernoulli(0.3)")
    assert node.p == Fraction(3, 10)


def test_evaluate_graph_expressions():
    G = evaluate(parse_expr("tensor(K3, K3)"))
    assert isinstance(G, LabeledGraph)
    assert canonical_form(G) == canonical_form(build_named("paley", [9]))
    H = evaluate(parse_expr("blowup(K2, 2)"))
    assert canonical_form(H) == canonical_form(build_named("C", [4]))
    assert evaluate(parse_expr("complement(A4)")).edge_count() == 6


def test_evaluate_cayley_hypercube():
    G = evaluate(parse_expr("cayley2(3; 1)"))
    assert G.n == 8
    assert all(G.degree(v) == 3 for v in range(8))
    looped = evaluate(parse_expr("cayley2(2; 0)"))
    assert all(looped.has_loop(v) for v in range(4))


def test_evaluate_model_expressions():
    M = evaluate(parse_expr("union(K2:1, K2:1)"))
    assert isinstance(M, StepModel)
    assert M.k == 4 and M.exact
    mixed = evaluate(parse_expr("tensor(bernoulli(1/3), K3)"))
    assert isinstance(mixed, StepModel)
    assert mixed.k == 3


def test_evaluate_type_errors():
    with pytest.raises(ExprError):
        evaluate(parse_expr("blowup(bernoulli(1/2), 2)") if False else parse_expr("compose(bernoulli(1/2), K2)"))
    with pytest.raises(ExprError):
        evaluate(parse_expr("tensor(K9, K9)"), max_vertices=50)


def test_evaluate_approx_mode():
    M = evaluate(parse_expr("bernoulli(1/3)"), approx=True)
    assert not M.exact
    assert abs(M.w[0][0] - 1 / 3) < 1e-12


def test_evaluate_load(tmp_path):
    path = tmp_path / "g.g6"
    path.write_text(graph6_encode(build_named("C", [5])) + "\n", encoding="ascii")
    node = parse_expr(f'load("{path}")')
    assert evaluate(node) == build_named("C", [5])


def test_split_top_level():
    assert split_top_level("K4, M4, tensor(K3, K3)") == ["K4", "M4", "tensor(K3, K3)"]
    assert split_top_level("union(K2:1, K2:1)") == ["union(K2:1, K2:1)"]
    with pytest.raises(ExprError):
        split_top_level("K4,, M4")
    with pytest.raises(ExprError):
        split_top_level("tensor(K3, K3")


def test_parse_quantum_inference_and_errors():
    Q = parse_quantum("K4+A4")
    assert Q.t == 4
    assert Q.describe() == "K4 + A4"
    weighted = parse_quantum("1/2*C4 + 1/2*M4")
    assert weighted.coefficients[0][1] == Fraction(1, 2)
    minus = parse_quantum("P4 - K4", t=4)
    names = {iso_table(4).entries[i].name: c for i, c in minus.coefficients}
    assert names == {"P4": Fraction(1), "K4": Fraction(-1)}
    with pytest.raises(ExprError):
        parse_quantum("C5 + K4")
    with pytest.raises(ExprError):
        parse_quantum("nosuchname")
    with pytest.raises(ExprError):
        parse_quantum("")
    # C5 alone resolves only at order five
    assert parse_quantum("C5").t == 5


def test_quantum_explicit_order():
    Q = parse_quantum("bull + C5", t=5)
    assert Q.t == 5
    with pytest.raises(KeyError):
        parse_quantum("K4", t=5)
    # order-5 canonical names use graph6 characters the term syntax rejects
    with pytest.raises(ExprError):
        parse_quantum("D??", t=5)
