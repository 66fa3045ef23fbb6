import random
from fractions import Fraction

import pytest

from qhcontract.coeffring import Coeff, NotAUnit, NotDivisible, PoleAtQ1, QHPoly

from conftest import random_coeff

Q = Coeff.q()
H = Coeff.h()
ONE = Coeff.one()
F = H / (Q - ONE)  # h/(q-1)


def test_mul_cancels_q1_denominator():
    assert F * (Q - ONE) == H


def test_add_inverse_is_zero():
    assert (Q**-1 + (-(Q**-1))).is_zero()


def test_mul_clears_q_denominator():
    assert (Q - Q**-1) * Q == Q * Q - ONE


def test_try_inv_of_q_inverse():
    assert (Q**-1).try_inv() == Q


def test_try_inv_rejects_q_minus_qinv():
    # numerator (q-1)(q+1) carries the non-unit factor q+1
    with pytest.raises(NotAUnit):
        (Q - Q**-1).try_inv()


def test_try_inv_rejects_zero():
    with pytest.raises(NotAUnit):
        Coeff.zero().try_inv()


def test_limit_cancellation():
    assert ((Q * Q - ONE) / (Q - ONE)).limit_q1() == Coeff.rational(2)


def test_limit_pole():
    with pytest.raises(PoleAtQ1):
        F.limit_q1()


def test_limit_after_exact_cancellation():
    # (q - q^-1) * h/(q-1) = h(q+1)/q, which is 2h at q = 1
    assert ((Q - Q**-1) * F).limit_q1() == Coeff.rational(2) * H


def test_exact_div_cases():
    q2m1 = QHPoly({(2, 0): 1, (0, 0): -1})
    qm1 = QHPoly.q_minus_1()
    assert q2m1.exact_div(qm1) == QHPoly({(1, 0): 1, (0, 0): 1})
    qh_h = QHPoly({(1, 1): 1, (0, 1): 1})
    assert qh_h.exact_div(QHPoly.h()) == QHPoly({(1, 0): 1, (0, 0): 1})
    with pytest.raises(NotDivisible):
        QHPoly({(1, 0): 1, (0, 0): 1}).exact_div(qm1)


def test_canonicalization_is_idempotent(rng):
    for _ in range(300):
        c = random_coeff(rng)
        again = Coeff(c.num, c.qpow, c.q1pow)
        assert again == c


def test_ring_laws(rng):
    for _ in range(300):
        a, b, c = (random_coeff(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_limit_linearity_and_kill(rng):
    for _ in range(300):
        a = random_coeff(rng, q1_free=True)
        b = random_coeff(rng, q1_free=True)
        assert (a + b).limit_q1() == a.limit_q1() + b.limit_q1()
        assert (a * (Q - ONE)).limit_q1().is_zero()


def test_try_inv_roundtrip(rng):
    for _ in range(200):
        r = Fraction(rng.randint(1, 5), rng.randint(1, 5)) * rng.choice([1, -1])
        u = Coeff(
            QHPoly.const(r).mul_qpow(rng.randint(0, 2)).mul_q1pow(rng.randint(0, 2)),
            rng.randint(0, 2),
            rng.randint(0, 2),
        )
        assert u * u.try_inv() == ONE


def test_zero_normalizes_denominators():
    z = Coeff(QHPoly.zero(), 3, 2)
    assert z.is_zero() and z.qpow == 0 and z.q1pow == 0


def test_printing():
    assert str(F) == "h/(q-1)"
    assert str(Q - Q**-1) == "(q^2 - 1)/q"
    assert str(Coeff.zero()) == "0"
    assert str(Coeff.rational(Fraction(-3, 2)) * H) == "-3/2*h"
