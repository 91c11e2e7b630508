import random

import pytest

import shephard


def test_classify_regimes():
    assert shephard.classify(3, 6, 3)["regime"] == "euclidean"
    assert shephard.classify(4, 6, 4)["regime"] == "hyperbolic"
    assert shephard.classify(2, 4, 3)["regime"] == "finite"


def test_bad_triple_raises():
    with pytest.raises(ValueError):
        shephard.classify(3, 5, 4)


def test_relators_and_center():
    assert shephard.is_trivial(3, 6, 3, "s^3")
    assert shephard.is_trivial(3, 6, 3, "s t s t s t T S T S T S")
    nf = shephard.normalize(3, 6, 3, "s t s t s t")
    assert nf["z"] == 1


def test_equality_agrees_with_oracle():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randint(0, 8)
        u = " ".join(rng.choice(["s", "t", "S", "T"]) for _ in range(n))
        v = u + " s s s"
        assert shephard.are_equal(4, 6, 4, u, v) == shephard.brute_force_equal(4, 6, 4, u, v)


def test_girth_and_ball():
    cert = shephard.certify_girth(3, 6, 3)
    assert cert["certified"]
    ball = shephard.theta_hat_ball(3, 6, 3, 6)
    assert ball["bipartite"]


def test_report_fields():
    rep = shephard.report("graph tri; vertex a 3; vertex b 3; vertex c 3; edge a b 3; edge b c 3; edge c a 3")
    assert rep["graph"] == "tri"
    assert rep["profile"]["twoDimensional"]
    assert shephard.schema_version == 1
