import pytest

import euclid

K45 = "box p -> box box p"


def test_parse_normalises():
    assert euclid.parse_modal("box p -> box box p") == euclid.parse_modal("~box p | box box p")
    with pytest.raises(euclid.SyntaxError):
        euclid.parse_modal("box (")


def test_flower_partition():
    f = euclid.flower(2, 1)
    assert len(f) == 4
    assert euclid.is_euclidean(f)
    assert euclid.partition(f) == {"dust": [], "root": ["0"], "kernel": ["1", "2", "3"]}
    assert not euclid.valid_modal(f, K45)
    assert euclid.valid_modal(f, "dia p -> box dia p")


def test_flower_simplicity():
    assert euclid.is_simple_flower(1, 5)
    assert euclid.is_simple_flower(4, 1)
    assert not euclid.is_simple_flower(2, 2)


def test_frame_text_round_trip():
    f = euclid.Frame(["a", "b"], [("a", "b"), ("b", "b")])
    assert euclid.parse_frame(str(f)) == f
    with pytest.raises(euclid.NotEuclidean):
        euclid.partition(euclid.Frame(["a", "b", "c"], [("a", "b"), ("b", "c")]))


def test_morphisms_and_games():
    assert euclid.find_surjective_bm(euclid.flower(3, 2), euclid.flower(2, 1)) is not None
    assert euclid.find_surjective_bm(euclid.flower(2, 1), euclid.flower(3, 2)) is None
    assert euclid.q_equivalent(euclid.flower(1, -1), euclid.flower(1, -1), 3)
    assert not euclid.q_equivalent(euclid.flower(1, -1), euclid.flower(2, -1), 2)


def test_classifier():
    assert euclid.classify(K45)["decidable"]
    assert euclid.classify(K45)["k"] == 4
    assert not euclid.classify("top")["decidable"]
    assert euclid.compute_k(K45) == 4
    with pytest.raises(euclid.PreconditionViolated):
        euclid.compute_k("top")


def test_definability():
    v = euclid.decide_definability("exists x . exists y . x != y", K45, 3)
    assert v["outcome"] == "negative"
    assert len(v["certificate"]["frame"]) == 2
    assert euclid.synth_defining_formula("forall x . forall y . forall z . R(x,y) & R(x,z) -> R(y,z)", K45) == "top"


def test_bound():
    assert euclid.bound_digits(3, 4) == 6661088
    b = euclid.bound(3, 4)
    qk = 294 * 16
    assert b == 6 * (qk + 1) ** 2 * 2 ** (qk * qk) * qk
    with pytest.raises(euclid.InvalidBudget):
        euclid.bound(3, 3)


def test_interpretation_round_trip():
    f = euclid.Frame(["u", "v", "w"], [("u", "v"), ("v", "u"), ("v", "w"), ("w", "v")])
    for flavor in ("K2", "L2"):
        assert euclid.are_isomorphic(euclid.decode(euclid.encode(f, flavor), flavor), f)
