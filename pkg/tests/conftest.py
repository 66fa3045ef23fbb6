"""Shared oracles and randomized-value helpers for the test suite."""

import random
from fractions import Fraction

import pytest

from qhcontract.coeffring import Coeff, QHPoly
from qhcontract.contract import _poly_rows, _rank
from qhcontract.superalgebra import Element


def random_coeff(rng: random.Random, q1_free: bool = False) -> Coeff:
    """Small random element of the localized ring."""
    terms = {}
    for _ in range(rng.randint(1, 3)):
        mono = (rng.randint(0, 2), rng.randint(0, 2))
        terms[mono] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    qpow = rng.randint(0, 2)
    q1pow = 0 if q1_free else rng.randint(0, 2)
    return Coeff(QHPoly(terms), qpow, q1pow)


def random_element(rng: random.Random, spec, max_degree: int = 2,
                   max_terms: int = 3) -> Element:
    n = len(spec.generators)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        length = rng.randint(0, max_degree)
        word = tuple(rng.randrange(n) for _ in range(length))
        terms[word] = random_coeff(rng)
    return Element(spec, terms)


def naive_fixpoint_reduce(e: Element, rs) -> Element:
    """Independent reducer: smallest reducible word first, rightmost redex.

    Deliberately the opposite strategy of RuleSystem.normal_form; on a
    confluent system both must reach the same fixpoint.
    """
    key = rs.ambient.word_key
    terms = dict(e.terms)
    while True:
        chosen = None
        for w in sorted(terms, key=key):
            redexes = [i for i in range(len(w) - 1) if w[i : i + 2] in rs.rules]
            if redexes:
                chosen = (w, redexes[-1])
                break
        if chosen is None:
            return Element(rs.ambient, terms)
        w, i = chosen
        c = terms.pop(w)
        step = rs.reduce_at(w, i, c)
        for w2, c2 in step.terms.items():
            s = terms.get(w2, Coeff.zero()) + c2
            if s:
                terms[w2] = s
            else:
                terms.pop(w2, None)


def degree_component_span(spec, degree: int):
    """Rows spanning the given degree component of the relation ideal.

    For quadratic relations the degree-d slice of the ideal is spanned by
    u * r * v over all relations r and words u, v with len(u)+len(v)+2 = d.
    Used as a rewriting-free membership oracle.
    """
    import itertools

    n = len(spec.generators)
    words = sorted(
        itertools.product(range(n), repeat=degree), key=spec.word_key
    )
    index = {w: i for i, w in enumerate(words)}
    rows = []
    for r in spec.relations:
        for pre_len in range(degree - 1):
            post_len = degree - 2 - pre_len
            for pre in itertools.product(range(n), repeat=pre_len):
                for post in itertools.product(range(n), repeat=post_len):
                    row = [Coeff.zero()] * len(words)
                    for w, c in r.terms.items():
                        row[index[pre + w + post]] = c
                    rows.append(row)
    return words, rows


def in_ideal_component(spec, e: Element) -> bool:
    """Exact membership of a homogeneous element in the relation ideal."""
    deg = e.degree()
    assert e.is_homogeneous(deg)
    words, rows = degree_component_span(spec, deg)
    vec = [e.coefficient(w) for w in words]
    base = _rank(_poly_rows(rows))
    return _rank(_poly_rows(rows + [vec])) == base


@pytest.fixture(scope="session")
def rng():
    return random.Random(20260810)
