import random

import pytest

from equichow import ParseError, Poly, VarTable, parse_poly
from equichow.jobfile import (
    parse_ideal_job,
    parse_push_job,
    parse_square_job,
)
from conftest import random_poly

TABLE = VarTable([("l1", 1), ("l2", 2), ("d1", 1)])


def test_parse_simple():
    p = parse_poly("24*l1^2 - 48*l2", TABLE)
    l1, l2 = Poly.var(TABLE, "l1"), Poly.var(TABLE, "l2")
    assert p == 24 * l1**2 - 48 * l2


def test_parse_render_round_trip():
    rng = random.Random(2024)
    for _ in range(100):
        p = random_poly(TABLE, rng, max_exp=3, terms=5, coeff=30)
        assert parse_poly(p.render(), TABLE) == p


def test_parse_signs_and_constants():
    assert parse_poly("-l1 + 3", TABLE) == 3 - Poly.var(TABLE, "l1")
    assert parse_poly("0", TABLE).is_zero()
    assert parse_poly("2*3*l1", TABLE) == 6 * Poly.var(TABLE, "l1")


def test_parse_errors_are_positional():
    with pytest.raises(ParseError):
        parse_poly("l1 + ", TABLE)
    with pytest.raises(ParseError):
        parse_poly("unknown", TABLE)
    with pytest.raises(ParseError):
        parse_poly("l1 ^ x", TABLE)
    with pytest.raises(ParseError):
        parse_poly("", TABLE)
    with pytest.raises(ParseError):
        parse_poly("l1 @ l2", TABLE)


PUSH_JOB = """
[vars]
h 1
g1 1
g2 1
h1 1
[space]
factor d=1 w0=g1 w1=g2 h=h1
[map]
exponents = 3
target_h = h
[class]
1
[options]
oracle_trials = 4
seed = 9
"""


def test_push_job_round_trip():
    job = parse_push_job(PUSH_JOB)
    assert job.space.factors[0].d == 1
    assert job.mapping.target.factors[0].d == 3
    assert job.options.oracle_trials == 4
    again = parse_push_job(job.render())
    assert again.render() == job.render()
    assert again.cls == job.cls


def test_push_job_rejects_equal_weights():
    bad = PUSH_JOB.replace("w1=g2", "w1=g1")
    with pytest.raises(ParseError):
        parse_push_job(bad)


def test_push_job_rejects_missing_sections():
    with pytest.raises(ParseError):
        parse_push_job("[vars]\nh 1\n")


def test_push_job_rejects_negative_options():
    bad = PUSH_JOB.replace("oracle_trials = 4", "oracle_trials = -1")
    with pytest.raises(ParseError):
        parse_push_job(bad)


def test_product_job():
    text = """
[vars]
g1 1
g2 1
u1 1
u2 1
h1 1
h2 1
[space]
factor d=1 w0=g1 w1=g2 h=u1
factor d=1 w0=g1 w1=g2 h=u2
[map]
product
exponents = 3 3
[class]
1
"""
    job = parse_push_job(text)
    assert job.product
    assert [f.hvar for f in job.mapping.target.factors] == ["h1", "h2"]


def test_ideal_job_round_trip():
    text = """
[vars]
l1 1
x 1
[ideal]
gen = 2*x
gen = x^2 + l1*x
"""
    job = parse_ideal_job(text)
    assert len(job.generators) == 2
    again = parse_ideal_job(job.render())
    assert again.generators == job.generators


def test_square_job(tmp_path):
    with open("jobs/patch_square.job", "r", encoding="utf-8") as fh:
        job = parse_square_job(fh.read())
    assert job.degree_bound == 8
    assert job.square.a.table.names == ("l1", "l2", "d1", "e")


def test_square_job_missing_hom():
    text = """
[vars]
l1 1
[ring A]
vars = l1
[ring B]
vars = l1
[ring C]
vars = l1
[ring D]
vars = l1
[hom A->B]
l1 = l1
"""
    with pytest.raises(ParseError):
        parse_square_job(text)
