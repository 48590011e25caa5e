import random

import pytest

import oracles
from houghton import autom, folding
from houghton.folding import contains, corank, flux_via_corank, fold, subgroup_rank
from houghton.groupword import evaluate
from houghton.words import GeneratorIndex, Word, parse_basis_word

X, Y, Z = GeneratorIndex(1, 1), GeneratorIndex(1, 2), GeneratorIndex(1, 3)


def p(text):
    return parse_basis_word(text)


def test_fold_examples():
    g = fold([p("a1_1"), p("a1_2")])
    assert g.num_vertices == 1 and len(g.edges) == 2
    assert subgroup_rank(g) == 2
    gens = [p("a1_1 a1_2 a1_1'"), p("a1_1 a1_2 a1_2 a1_1'")]
    assert subgroup_rank(fold(gens)) == oracles.nielsen_rank(gens) == 1
    assert fold([]).num_vertices == 1 and subgroup_rank(fold([])) == 0


def test_fold_membership():
    gens = [p("a1_1 a1_2 a1_1'"), p("a1_3 a1_3")]
    g = fold(gens)
    for u in gens:
        assert contains(g, u)
    assert contains(g, p("a1_1 a1_2' a1_1' a1_3 a1_3"))
    assert not contains(g, p("a1_3"))


def test_fold_is_core():
    g = fold([p("a1_1 a1_2 a1_1'")])
    deg = {}
    for u, _, v in g.edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    assert all(d >= 2 for v, d in deg.items() if v != g.basepoint)


def test_fold_order_and_nielsen_invariance():
    rng = random.Random(5)
    basis = [GeneratorIndex(1, q) for q in range(1, 6)]
    for _ in range(60):
        gens = [oracles.random_basis_word(rng, basis, rng.randint(1, 5)) for _ in range(rng.randint(1, 4))]
        g = fold(gens)
        shuffled = list(gens)
        rng.shuffle(shuffled)
        assert fold(shuffled) == g
        moved = list(gens)
        k = rng.randrange(len(moved))
        moved[k] = moved[k].inverse()
        if len(moved) > 1:
            l = (k + 1) % len(moved)
            moved[k] = moved[k] * moved[l]
        assert fold(moved) == g


def test_corank_examples():
    basis = {X, Y, Z}
    a, b, c = Word.letter(X), Word.letter(Y), Word.letter(Z)
    assert corank(basis, [a, b]) == 1
    assert corank(basis, [a, b, c]) == 0
    assert corank(basis, [c * b * c.inverse()]) == 2
    with pytest.raises(ValueError):
        corank({X}, [b])
    with pytest.raises(ValueError):
        corank(basis, [a, a * a], expect_basis=True)


def test_flux_via_corank_examples():
    h2 = autom.make_generator("h", 3, 2)
    assert flux_via_corank(h2, 2, n=3, m=6, window=10) == 1
    assert flux_via_corank(autom.make_generator("sigma", 3), 2, 3, 6, 10) == 0
    f = evaluate("h2^2")
    assert flux_via_corank(f, 2, 4, 8, 12) == autom.flux_offsets(f)[0] == 2
    assert flux_via_corank(h2, 3, 3, 6, 10) == 0


def test_flux_via_corank_preconditions():
    h2 = autom.make_generator("h", 3, 2)
    with pytest.raises(folding.WindowError):
        flux_via_corank(h2, 2, 5, 5, 10)
    with pytest.raises(folding.WindowError):
        flux_via_corank(evaluate("h2^6 s (h2')^6"), 2, 2, 4, 10)
    with pytest.raises(folding.WindowError):
        flux_via_corank(evaluate("h2^4"), 2, 3, 5, 10)
    with pytest.raises(autom.NotPureError):
        flux_via_corank(autom.make_generator("rho", 3, 1, 2), 2, 3, 6, 10)
    with pytest.raises(ValueError):
        flux_via_corank(h2, 4, 3, 6, 10)


def test_flux_routes_agree_on_random_elements():
    rng = random.Random(2)
    for _ in range(40):
        r = rng.choice((3, 4))
        f = evaluate(oracles.random_word(rng, rng.randint(0, 8), r))
        for win in folding.auto_windows(f):
            assert folding.flux_corank_vector(f, win) == autom.flux_offsets(f)


def test_automorphisms_preserve_rank():
    rng = random.Random(9)
    basis = [GeneratorIndex(k, q) for k in (1, 2, 3) for q in (1, 2, 3)]
    for _ in range(50):
        f = evaluate(oracles.random_word(rng, rng.randint(1, 8), 3))
        subset = rng.sample(basis, rng.randint(1, 5))
        images = [f(Word.letter(x)) for x in subset]
        assert subgroup_rank(fold(images)) == len(subset)


def test_graph_json():
    data = fold([p("a1_1 a2_1")]).to_json()
    assert data["basepoint"] == 0
    assert {e["label"] for e in data["edges"]} == {"a1_1", "a2_1"}
