"""Exponents by dual partition and by Coxeter eigenvalues."""

import random

import pytest

import rootsys as R
from rootsys.errors import InvalidArgumentError

from conftest import sweep_labels
from oracles import exact_det


def test_height_distribution_pins(system):
    assert R.height_distribution(system("A2")).counts == (2, 1)
    assert R.height_distribution(system("G2")).counts == (2, 1, 1, 1, 1)
    assert R.height_distribution(system("B2")).counts == (2, 1, 1)


def test_dual_partition_pins(system):
    rep = R.dual_partition(R.height_distribution(system("A2")))
    assert (rep.exponents, rep.coxeter_number) == ((1, 2), 3)
    rep = R.dual_partition(R.height_distribution(system("G2")))
    assert (rep.exponents, rep.coxeter_number) == ((1, 5), 6)
    rep = R.dual_partition(R.height_distribution(system("B2")))
    assert (rep.exponents, rep.coxeter_number) == ((1, 3), 4)


def test_dual_partition_rejects_bad_distributions():
    with pytest.raises(InvalidArgumentError):
        R.dual_partition(R.HeightDistribution(counts=(2, 1, 2), rank=2))
    with pytest.raises(InvalidArgumentError):
        # first entry below the rank would create zero exponents
        R.dual_partition(R.HeightDistribution(counts=(1, 1), rank=2))


def test_coxeter_matrix_pins():
    assert R.coxeter_matrix(R.build_cartan("A1")) == ((-1,),)
    m = R.coxeter_matrix(R.build_cartan("A2"))
    assert R.coxeter_order(m, 10) == 3
    m = R.coxeter_matrix(R.build_cartan("G2"))
    assert R.coxeter_order(m, 20) == 6


def test_coxeter_matrix_determinant():
    for label in ("A2", "B3", "C4", "D4", "F4", "G2", "E6"):
        c = R.build_cartan(label)
        assert exact_det(R.coxeter_matrix(c)) == (-1) ** c.rank


def test_coxeter_matrix_rejects_bad_order():
    c = R.build_cartan("A3")
    with pytest.raises(InvalidArgumentError):
        R.coxeter_matrix(c, order=[1, 2])
    with pytest.raises(InvalidArgumentError):
        R.coxeter_matrix(c, order=[1, 2, 2])


def test_coxeter_exponents_pins():
    rep = R.coxeter_exponents(R.build_cartan("A1"))
    assert (rep.exponents, rep.coxeter_number) == ((1,), 2)
    rep = R.coxeter_exponents(R.build_cartan("A2"))
    assert (rep.exponents, rep.coxeter_number) == ((1, 2), 3)
    rep = R.coxeter_exponents(R.build_cartan("E8"))
    assert (rep.exponents, rep.coxeter_number) == ((1, 7, 11, 13, 17, 19, 23, 29), 30)
    rep = R.coxeter_exponents(R.build_cartan("D4"))
    assert (rep.exponents, rep.coxeter_number) == ((1, 3, 3, 5), 6)


def test_methods_agree_up_to_rank_twelve(system):
    for t in R.all_types(12):
        rs = system(str(t))
        dual = R.dual_partition(R.height_distribution(rs))
        cox = R.coxeter_exponents(rs.cartan)
        assert dual.exponents == cox.exponents, str(t)
        assert dual.coxeter_number == cox.coxeter_number, str(t)
        assert cox.max_residual < 1e-9 * cox.coxeter_number


def test_order_equals_top_height_plus_one(system):
    for label in ["A1"] + sweep_labels(12):
        rs = system(label)
        m = R.coxeter_matrix(rs.cartan)
        h = R.coxeter_order(m, 2 * (10 * rs.rank + 1))
        assert h == rs.max_height + 1, label


def test_duality_identities(system):
    for label in sweep_labels(12):
        rs = system(label)
        rep = R.dual_partition(R.height_distribution(rs))
        results = R.check_duality(rep, rs)
        assert len(results) == 5
        assert all(r.passed for r in results), (label, results)


def test_duality_pins(system):
    g2 = system("G2")
    rep = R.dual_partition(R.height_distribution(g2))
    assert rep.exponents[-1] == 5 == sum(g2.highest_root().coeffs)
    f4 = system("F4")
    rep = R.dual_partition(R.height_distribution(f4))
    assert sum(rep.exponents) == 24 == f4.num_positive


def test_conjugacy_invariance_sample():
    rng = random.Random(1105)
    for label in ("A4", "B3", "D4", "F4", "G2"):
        c = R.build_cartan(label)
        reference = R.coxeter_exponents(c)
        for _ in range(3):
            perm = list(range(1, c.rank + 1))
            rng.shuffle(perm)
            rep = R.coxeter_exponents(c, order=perm)
            assert rep.exponents == reference.exponents, (label, perm)
            assert rep.coxeter_number == reference.coxeter_number


def test_report_serialization():
    rep = R.coxeter_exponents(R.build_cartan("B2"))
    d = rep.to_json_dict()
    assert d == {"exponents": [1, 3], "h": 4, "method": "coxeter-eigenvalues"}
