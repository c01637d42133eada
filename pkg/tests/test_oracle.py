import math
from decimal import Decimal

import pytest

from meanineq.oracle import (ORACLE_OP_TAGS, PUBLISHED_BOUNDS, OracleResult,
                             oracle_eval, oracle_rel_err)


def test_op_tags_and_bounds_cover_each_other():
    assert set(PUBLISHED_BOUNDS) == set(ORACLE_OP_TAGS)


def test_rejects_bad_requests():
    with pytest.raises(ValueError):
        oracle_eval("BOGUS", {"a": 1.0, "b": 2.0})
    with pytest.raises(ValueError):
        oracle_eval("L", {"a": 1.0, "b": 2.0}, digits=10)


def test_requested_digits_and_bound():
    res = oracle_eval("A", {"a": 4.0, "b": 2.0}, digits=35)
    assert isinstance(res, OracleResult)
    assert res.rel_bound == 10.0 ** -34
    assert res.value == Decimal(3)


def test_limit_branches():
    # Lp at exactly 0 and -1 produce the identric / logarithmic closed forms
    i_ref = oracle_eval("I", {"a": 4.0, "b": 2.0}, digits=40).value
    l_ref = oracle_eval("L", {"a": 4.0, "b": 2.0}, digits=40).value
    assert oracle_eval("Lp", {"a": 4.0, "b": 2.0, "p": 0.0}, digits=40).value == i_ref
    assert oracle_eval("Lp", {"a": 4.0, "b": 2.0, "p": -1.0}, digits=40).value == l_ref
    assert oracle_eval("I", {"a": 7.0, "b": 7.0}, digits=40).value == Decimal(7)


def test_precision_scales_with_digits():
    lo = oracle_eval("L", {"a": 4.0, "b": 2.0}, digits=30).value
    hi = oracle_eval("L", {"a": 4.0, "b": 2.0}, digits=60).value
    assert abs(Decimal(str(lo)) - hi) / hi < Decimal(10) ** -28


def test_ratio_ops_consistent():
    # f'/f == g' and g == ln f at a generic point, all within the oracle
    from decimal import localcontext
    inp = {"a": 4.0, "b": 3.0, "c": 2.0, "d": 1.0, "x": 1.7}
    f = oracle_eval("f", inp, digits=45).value
    g = oracle_eval("g", inp, digits=45).value
    fp = oracle_eval("f_prime", inp, digits=45).value
    gp = oracle_eval("g_prime", inp, digits=45).value
    with localcontext() as ctx:
        ctx.prec = 60
        assert abs(f.ln() - g) < Decimal(10) ** -40
        assert abs(fp / f - gp) < Decimal(10) ** -40


def test_cancellation_guard_near_equal_pair():
    # 15 base guard digits alone would not survive a/b - 1 = 1e-12
    from decimal import localcontext
    a = 1.0 + 1e-12
    res = oracle_eval("L", {"a": a, "b": 1.0}, digits=40)
    # L(1+d, 1) = 1 + d/2 - d^2/12 + O(d^3) with d the stored spacing
    with localcontext() as ctx:
        ctx.prec = 45
        d = Decimal(a) - 1
        expect = 1 + d / 2 - d * d / 12
        assert abs(res.value - expect) < Decimal(10) ** -33


def test_rel_err_helper():
    res = oracle_eval("A", {"a": 4.0, "b": 2.0}, digits=40)
    assert oracle_rel_err(3.0, res) == 0.0
    assert oracle_rel_err(3.0 + 3e-13, res) == pytest.approx(1e-13, rel=1e-2)
