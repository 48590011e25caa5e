from collections import Counter

import pytest

import oracles
from houghton import presentation as P
from houghton.groupword import evaluate, format_group_word, parse_group_word
from houghton.words import GeneratorIndex, Word


def texts(instances):
    return {format_group_word(x.word) for x in instances}


def flat(text, r=3):
    return format_group_word(parse_group_word(text, r))


def test_catalog_P_examples():
    cat = P.catalog_P(3)
    assert flat("s [h2,h3]'") in texts(cat)
    assert flat("(s s^(h2'))^3") in texts(cat)
    counts = Counter(x.family for x in cat)
    assert counts["P.r4"] == counts["P.r5"] == 1
    assert all(counts[f"P.r{k}"] == 2 for k in (2, 3, 8, 9, 12, 13, 14, 15, 16, 18))
    assert all(counts[f"P.r{k}"] == 1 for k in (1, 6, 7, 10, 11, 17))
    assert len(cat) == 28
    with pytest.raises(ValueError):
        P.catalog_P(2)


def test_catalog_P_holds_except_r12():
    for r in (3, 4, 5):
        report = P.verify_all("P", r)
        assert {x.instance.family for x in report.failures()} == {"P.r12"}


def test_r12_fails_in_independent_oracle():
    # the relator as printed is not a relation of Aut(F): [eta, s^i_0] has infinite order
    for inst in P.catalog_P(3):
        if inst.family == "P.r12":
            assert not oracles.subst_is_identity(inst.word)
            res = P.verify(inst)
            assert res.witness == GeneratorIndex(1, 1)
            assert str(res.image) == "a1_2' a1_2' a1_1"


def test_catalog_AFV_examples():
    cat = P.catalog_AFV(3, 4)
    t = texts(cat)
    assert flat("s2_0^2") in t
    assert flat("t^2") in t
    assert flat("(e s)^3") in t
    fams = {x.family for x in cat}
    assert fams == {f"AFV.{k}{c}" for k in (1, 2) for c in "abcdefgh"} - {"AFV.1g", "AFV.1h"}
    assert (1, 0) not in P.index_set(3, 4)
    assert len(P.index_set(3, 4)) == 11
    with pytest.raises(ValueError):
        P.catalog_AFV(3, 3)


def test_AFV_holds():
    for n in (4, 5):
        assert P.verify_all("AFV", 3, n=n).passed


def test_qprime_examples():
    cat = P.catalog_Qprime(3, 6)
    t = texts(cat)
    assert flat("(s^(h2')) (s1_2)'") in t
    assert flat("(t^h2) (t^s2_0)'") in t
    assert flat("(s^(h2^0)) (s)'") in t or flat("(s^((h2')^0)) (s)'") in t
    assert P.verify_all("QPRIME", 3, n_max=6).passed


def test_aux_examples():
    cat = P.catalog_aux(3, 5)
    q1 = [x for x in cat if x.family == "AUX.q1" and x.params_dict() == {"i": 2, "j": 3}]
    assert P.verify(q1[0]).holds
    q3 = [x for x in cat if x.family == "AUX.q3" and x.params_dict() == {"i": 2, "j": 3}]
    assert P.verify(q3[0]).holds
    r9 = [x for x in cat if x.family == "AUX.r9k" and x.params_dict() == {"i": 2, "k": 1}][0]
    r9_P = [x for x in P.catalog_P(3) if x.family == "P.r9" and x.params_dict() == {"i": 2}][0]
    assert evaluate(r9.word) == evaluate(r9_P.word)
    assert texts([r9]) == {flat("(t^((h2')^1)) (t^(s^((h2')^0)))'")}
    assert min(x.params_dict()["k"] for x in cat if x.family == "AUX.q2k") == 2
    assert P.verify_all("AUX", 4, k_max=5).passed


def test_R_families_hold():
    report = P.verify_all("R", 3, n_max=4)
    assert report.passed
    fams = {x.instance.family for x in report.results}
    assert {"R.1b", "R.1f", "R.2c", "R.2d", "R.2h", "R.a", "R.b", "R.c", "R.pp"} <= fams


def test_R1b_excluded_case_really_fails():
    w = parse_group_word("[s^h2, s^h3]")
    assert not evaluate(w).is_identity()


def test_verify_witness_for_corrupted_relator():
    inst = P.RelatorInstance("X", (), "s^3", parse_group_word("s^3"))
    res = P.verify(inst)
    assert not res.holds
    assert res.witness == GeneratorIndex(1, 1)
    assert res.image == Word.letter(GeneratorIndex(1, 2))
    assert res.to_json()["witness"] == {"gen": "a1_1", "image": "a1_2"}


def test_report_json_schema():
    report = P.verify_all("P", 3)
    row = report.to_json()[0]
    assert set(row) == {"family", "params", "word", "holds", "witness"}
    assert [x.instance.key for x in report.results] == [x.instance.key for x in P.verify_all("P", 3).results]


def test_remark_2f_replay():
    steps = P.replay_2f()
    assert steps[-1].blocks == []
    for fact in P.replay_2f_facts():
        assert P.verify(fact).holds, fact.text
    assert P.verify(P.catalog("AFV", 3)[0]).holds
    # step 0 and step 1 are equal given the rewritten (2g); the rest are equal given the facts
    elems = [evaluate(s.word()) for s in steps]
    assert all(e.is_identity() for e in elems)
    f2 = [x for x in P.catalog_AFV(3, 4) if x.family == "AFV.2f"][0]
    assert evaluate(steps[0].word()) == evaluate(f2.word)


def test_cancel_involutions():
    assert P.cancel_involutions(["a", "b", "b", "a", "c"]) == ["c"]


def test_r9k_replay():
    for i in (2, 3):
        for lhs, rhs in P.replay_r9k(i, 5):
            assert lhs == rhs
            assert evaluate(lhs) == evaluate(rhs)


def test_template_parameters_checked():
    with pytest.raises(ValueError):
        P.P_TEMPLATES["P.r4"].instantiate(3, i=2)
    with pytest.raises(ValueError):
        P.catalog("nope", 3)
