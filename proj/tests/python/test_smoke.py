import pytest

import shabound


def test_analyze_11a3():
    r = shabound.analyze([0, -1, 1, 0, 0], ["0/1", "0/1"], p=5)
    assert r["phi"]["S2"] == ["11"]
    assert r["phi"]["S1"] == []
    assert r["codomain_discriminant"] == "-161051"
    assert r["sandwich_phihat"]["upper_dim"] == "2"


def test_wrong_order_is_a_value_error():
    with pytest.raises(ValueError, match="point order"):
        shabound.analyze([0, -1, 1, 0, 0], [0, 0], p=7)


def test_matrix_and_bounds():
    assert shabound.matrix(5, [2, 3], [11, 31])["rank"] == "2"
    with pytest.raises(shabound.ValidationError):
        shabound.matrix(5, [2], [7])
    b = shabound.bounds(d=4, s1=5, s2=1)
    assert (b["selmer_lower"], b["selmer_upper"]) == ("2", "11")
    assert shabound.budget(5, 1, 3, 1)["theorem_budget"]["sha_guarantee"] == "1"


def test_arithmetic():
    assert shabound.factor(-19008) == (-1, [(2, 6), (3, 3), (11, 1)])
    assert not shabound.is_prime(3215031751)
    assert shabound.character(11, 5, 3) == 3
    assert shabound.crt([(0, 41), (1, 11)]) == 287


def test_forced_search():
    r = shabound.search({"p": 5, "force_s1": [41], "force_s2": [11], "scan_budget": 2})
    assert r["constructed_parameter"]["b"] == "287"
    assert any(row["b"] == "287" for row in r["rows"])
