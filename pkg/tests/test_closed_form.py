from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fragility.closed_form import (
    ClosedFormFamily,
    FragilityQuery,
    RobustnessThreshold,
    as_fraction,
    ceb_fragility_n_minus_k,
    ceb_fragility_parity,
    edge_count,
    f_comp,
    fragility_exact,
    is_robust,
    r_star_ceb,
    r_star_complete,
)
from fragility.generators import gen_ceb, gen_complete, gen_gb
from fragility.oracle import read_golden

from conftest import DATA


@pytest.mark.parametrize("family, n, m", [("complete", 8, 28), ("ceb", 8, 16), ("gb", 8, 20), ("ceb", 7, 12)])
def test_edge_count(family, n, m):
    assert edge_count(family, n) == m


@pytest.mark.parametrize("n", range(2, 12))
def test_edge_count_matches_generators(n):
    assert edge_count("complete", n) == gen_complete(n).m
    assert edge_count("ceb", n) == gen_ceb(n).m
    if n % 2 == 0 and n >= 4:
        assert edge_count("gb", n) == gen_gb(n).m


def test_gb_and_ceb_edge_counts_differ_by_half_n():
    for n in range(4, 40, 2):
        assert edge_count("gb", n) - edge_count("ceb", n) == n // 2


@pytest.mark.parametrize("n, c, r", [(8, 4, 16), (5, 2, 8), (6, 5, 5)])
def test_r_star_complete(n, c, r):
    assert r_star_complete(n, c) == r


@pytest.mark.parametrize("n, c, r", [(8, 4, 8), (8, 2, 12), (7, 3, 8)])
def test_r_star_ceb(n, c, r):
    assert r_star_ceb(n, c) == r


@pytest.mark.parametrize("c", [0, 8, 9])
def test_r_star_range(c):
    with pytest.raises(ValueError):
        r_star_complete(8, c)


def test_closed_forms_match_golden_oracle():
    rows = read_golden(DATA / "golden_r_star.csv")
    assert rows
    for row in rows:
        fam = ClosedFormFamily(row["family"], row["n"])
        if row["family"] == "gb" and 2 * row["c"] != row["n"]:
            continue
        assert fam.r_star(row["c"]) == row["r_star"], row


@pytest.mark.parametrize("n, c, f", [(8, 4, Fraction(4, 7)), (4, 2, Fraction(2, 3)), (16, 8, Fraction(8, 15))])
def test_f_comp(n, c, f):
    assert f_comp(n, c) == f


def test_fragility_examples():
    assert fragility_exact("ceb", 8, Fraction(1, 2)) == Fraction(1, 8)
    assert fragility_exact("gb", 8, Fraction(1, 2)) == Fraction(3, 10)
    with pytest.raises(ValueError):
        fragility_exact("gb", 8, Fraction(1, 4))


@given(st.integers(2, 300), st.fractions(min_value=0, max_value=1))
def test_complete_fragility_is_zero(n, delta):
    c = (delta * n).__floor__()
    if not 1 <= c < n:
        with pytest.raises(ValueError):
            fragility_exact("complete", n, delta)
    else:
        assert fragility_exact("complete", n, delta) == 0


def test_delta_resolution():
    q = FragilityQuery.resolve(10, 0.3)
    assert (q.c, q.b, q.delta) == (3, 1, Fraction(3, 10))
    assert FragilityQuery.resolve(9, "1/2").c == 4
    assert as_fraction(0.1) == Fraction(1, 10)
    with pytest.raises(ValueError):
        FragilityQuery.resolve(10, 0.05)


@pytest.mark.parametrize("n, k", [(8, 4), (8, 1), (9, 2), (10, 3), (11, 4), (12, 7), (15, 8)])
def test_parity_formula_matches_r_star_route(n, k):
    assert ceb_fragility_parity(n, k) == fragility_exact("ceb", n, Fraction(n - k, n))


def test_parity_formula_n8_values():
    assert ceb_fragility_parity(8, 4) == Fraction(1, 8)
    # c = 7, b = 1: the remainder term vanishes
    assert ceb_fragility_parity(8, 1) == 1 - Fraction(28 * (16 - 12), 16 * (28 - 21))


@pytest.mark.parametrize("n", range(4, 41, 2))
def test_n_minus_k_family(n):
    for k in range(1, (n + 1) // 2):
        assert ceb_fragility_n_minus_k(n, k) == ceb_fragility_parity(n, k)


def test_ceb_half_split_trend():
    values = [fragility_exact("ceb", n, Fraction(1, 2)) for n in (8, 16, 32, 64, 128)]
    assert values == [Fraction(1, n) for n in (8, 16, 32, 64, 128)]


def test_gb_half_split_trend():
    values = [fragility_exact("gb", n, Fraction(1, 2)) for n in (8, 16, 32, 64)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert values[-1] > Fraction(4, 5)


def test_is_robust():
    assert is_robust(0, 0.05)
    assert not is_robust(Fraction(1, 8), 0.05)
    assert is_robust(fragility_exact("ceb", 32, Fraction(1, 2)), RobustnessThreshold(0.05))
    with pytest.raises(ValueError):
        RobustnessThreshold(0.7)
