"""Hypercomplex sequence elements and their identity verifiers across the
builtin algebras, plus the one-dimensional specialization."""

import random
from fractions import Fraction

import pytest

from hxfib.algebra import (
    AlgebraTable,
    complex_table,
    dual_table,
    octonion_table,
    quaternion_table,
    scalar_table,
    split_complex_table,
)
from hxfib.fibseq import FibContext, IndexConstraintViolated, ZeroH
from hxfib.hyperfib import HyperContext
from hxfib.scalars import ONE, X, ZERO, Poly
from hxfib.suite import random_h_polys

F = Fraction

ALGEBRAS = [
    complex_table(),
    split_complex_table(),
    dual_table(),
    quaternion_table(),
    quaternion_table(2, -3),
    octonion_table(),
]


def consts(*vals):
    return [Poly([v]) for v in vals]


# -- the elements -----------------------------------------------------------------

def test_element_coordinates_quaternion():
    ctx = HyperContext(1, quaternion_table())
    assert list(ctx.q(0).coords) == consts(0, 1, 1, 2)
    assert list(ctx.q(2).coords) == consts(1, 2, 3, 5)


def test_element_coordinates_complex():
    ctx = HyperContext(X, complex_table())
    assert list(ctx.q(1).coords) == [ONE, X]


def test_starred_roots_structure():
    ctx = HyperContext(X, quaternion_table())
    astar, bstar = ctx.stars()
    for k in range(4):
        assert astar.coords[k] == ctx.fib.alpha_pow(k)
        assert bstar.coords[k] == ctx.fib.beta_pow(k)


def test_star_products_do_not_commute_for_quaternions():
    ctx = HyperContext(1, quaternion_table())
    ab, ba = ctx.star_products()
    assert ab != ba


def test_q_mul_matches_element_product():
    rng = random.Random(5)
    for table in (quaternion_table(), octonion_table(), dual_table()):
        ctx = HyperContext(Poly([1, 1]), table)
        for _ in range(6):
            a, b = rng.randint(0, 8), rng.randint(0, 8)
            assert ctx._q_mul(a, b) == ctx.q(a) * ctx.q(b)


# -- recurrence and partial sums ----------------------------------------------------

def test_recurrence_hand_example():
    ctx = HyperContext(1, quaternion_table())
    assert ctx.q(2) == ctx.q(1) * ONE + ctx.q(0)
    assert list(ctx.q(2).coords) == consts(1, 2, 3, 5)


@pytest.mark.parametrize("table", ALGEBRAS, ids=lambda t: t.name)
def test_recurrence_across_algebras(table):
    ctx = HyperContext(X, table)
    for n in range(0, 19):
        assert ctx.recurrence_check(n).ok


def test_recurrence_dual_example():
    ctx = HyperContext(Poly([1, 0, 1]), dual_table())
    assert ctx.recurrence_check(5).ok


def test_partial_sum_small_cases():
    assert HyperContext(1, quaternion_table()).partial_sum_check(1).ok
    assert HyperContext(1, quaternion_table()).partial_sum_check(4).ok
    assert HyperContext(X, octonion_table()).partial_sum_check(10).ok


def test_partial_sum_rejects_zero_h():
    with pytest.raises(ZeroH):
        HyperContext(ZERO, complex_table()).partial_sum_check(2)


# -- the closed form ------------------------------------------------------------------

def test_binet_alignment_at_zero():
    for table in ALGEBRAS:
        assert HyperContext(Poly([2, 1]), table).binet_check(0).ok


def test_binet_quaternion_example():
    ctx = HyperContext(1, quaternion_table())
    assert list(ctx.q(5).coords) == consts(5, 8, 13, 21)
    assert ctx.binet_check(5).ok


def test_binet_octonion_example():
    assert HyperContext(Poly([2, 0, 1]), octonion_table()).binet_check(12).ok


@pytest.mark.parametrize("table", ALGEBRAS, ids=lambda t: t.name)
def test_binet_across_corpus(table):
    for h in random_h_polys(3, 2):
        ctx = HyperContext(h, table)
        for n in range(0, 21):
            assert ctx.binet_check(n).ok


# -- generating function ---------------------------------------------------------------

def test_genfun_small_and_medium():
    assert HyperContext(1, quaternion_table()).genfun_check(1).ok
    assert HyperContext(1, quaternion_table()).genfun_check(12).ok


def test_genfun_custom_three_dimensional_table():
    # unital but otherwise arbitrary: e1*e1 = e2, e1*e2 = -e0, e2*e2 = e1
    constants = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [-1, 0, 0]],
        [[0, 0, 1], [-1, 0, 0], [0, 1, 0]],
    ]
    table = AlgebraTable("threefold", constants)
    table.validate()
    ctx = HyperContext(X, table)
    assert ctx.genfun_check(15).ok
    assert ctx.binet_check(9).ok
    assert ctx.catalan_check(5, 3).ok


@pytest.mark.parametrize("table", ALGEBRAS, ids=lambda t: t.name)
def test_genfun_truncation_twenty(table):
    assert HyperContext(Poly([F(1, 2), 1]), table).genfun_check(20).ok


# -- quadratic identities ----------------------------------------------------------------

def test_catalan_r_zero_both_sides_vanish():
    verdict = HyperContext(1, quaternion_table()).catalan_check(4, 0)
    assert verdict.ok and verdict.printed_matches is None


def test_catalan_printed_form_agrees_at_r_one():
    verdict = HyperContext(1, quaternion_table()).catalan_check(2, 1)
    assert verdict.ok and verdict.printed_matches is True


def test_catalan_printed_form_differs_at_r_two():
    verdict = HyperContext(1, quaternion_table()).catalan_check(3, 2)
    assert verdict.ok and verdict.printed_matches is False


@pytest.mark.parametrize("table", ALGEBRAS, ids=lambda t: t.name)
def test_catalan_derived_form_across_corpus(table):
    for h in random_h_polys(15, 2):
        ctx = HyperContext(h, table)
        for n in range(0, 11):
            for r in range(0, n + 1):
                verdict = ctx.catalan_check(n, r)
                assert verdict.ok, (table.name, h, n, r)
                if r == 1:
                    assert verdict.printed_matches is True


def test_cassini_equals_catalan_at_r_one():
    for table in (quaternion_table(), octonion_table()):
        ctx = HyperContext(Poly([1, 1]), table)
        for n in range(1, 10):
            assert ctx.cassini_check(n).ok
            assert ctx.catalan_check(n, 1).ok


def test_cassini_examples():
    assert HyperContext(1, quaternion_table()).cassini_check(1).ok
    assert HyperContext(X, octonion_table()).cassini_check(8).ok


def test_cassini_rejects_zero():
    with pytest.raises(IndexConstraintViolated):
        HyperContext(1, quaternion_table()).cassini_check(0)


def test_docagne_examples():
    assert HyperContext(1, quaternion_table()).docagne_check(0, 1).ok
    assert HyperContext(Poly([2, 3]), complex_table()).docagne_check(4, 5).ok
    assert HyperContext(X, octonion_table()).docagne_check(2, 7).ok


@pytest.mark.parametrize("table", ALGEBRAS, ids=lambda t: t.name)
def test_docagne_across_corpus(table):
    for h in random_h_polys(8, 2):
        ctx = HyperContext(h, table)
        for n in range(0, 10):
            for r in range(n + 1, 11):
                assert ctx.docagne_check(n, r).ok, (table.name, h, n, r)


def test_docagne_enforces_strict_inequality():
    ctx = HyperContext(1, quaternion_table())
    with pytest.raises(IndexConstraintViolated):
        ctx.docagne_check(3, 3)
    with pytest.raises(IndexConstraintViolated):
        ctx.docagne_check(3, 2)


def test_docagne_boundary_holds_when_lifted_by_hand():
    # at r = n the right side reduces to a*b* - b*a*, scaled by s; the
    # identity still holds even though the verifier's precondition is
    # strict, so lifting it by direct computation must agree.
    ctx = HyperContext(Poly([1, 1]), quaternion_table())
    n = r = 4
    lhs = ctx._q_mul(r, n + 1) - ctx._q_mul(r + 1, n)
    ab, ba = ctx.star_products()
    numerator = (ab - ba) if n % 2 == 0 else (ba - ab)
    for k in range(ctx.dim):
        quotient = numerator.coords[k].divexact_by_s()
        assert not quotient.b
        assert quotient.a == lhs.coords[k]


# -- dimension-one specialization ------------------------------------------------------

def test_dim1_reduces_to_the_scalar_sequence():
    fib = FibContext(Poly([2, 1]))
    ctx = HyperContext(fib, scalar_table())
    for n in range(0, 15):
        assert ctx.q(n).coords[0] == fib.fib(n)
        assert ctx.binet_check(n).ok
        assert ctx.recurrence_check(n).ok
    for n in range(1, 10):
        assert ctx.cassini_check(n).ok
        for r in range(n + 1, 11):
            assert ctx.docagne_check(n, r).ok
    assert ctx.genfun_check(12).ok
    assert ctx.partial_sum_check(9).ok
