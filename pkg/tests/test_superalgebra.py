import pytest

from qhcontract.coeffring import Coeff
from qhcontract.superalgebra import AlgebraSpec, free_mul, scale
from qhcontract.grgroup import gr_h2, h_plane

from conftest import random_element


@pytest.fixture
def mixed():
    """Odd entries plus even coordinates in one ambient algebra."""
    return AlgebraSpec.build(
        "mixed",
        [
            ("alpha", "odd", "entry", 0),
            ("x", "even", "coord", 1),
            ("y", "even", "coord", 2),
        ],
        {("entry", "coord"): 1},
    )


def test_free_mul_concatenates(mixed):
    al, x, y = mixed.gen_elements("alpha x y")
    prod = free_mul(al * x, y)
    assert list(prod.terms) == [(0, 1, 2)]


def test_free_mul_is_bilinear(mixed):
    al, x, y = mixed.gen_elements("alpha x y")
    assert free_mul(al + x, y) == al * y + x * y


def test_unit_word_is_identity(mixed):
    e = mixed.gen_element("x") + mixed.scalar(2)
    one = mixed.unit()
    assert free_mul(one, e) == e
    assert free_mul(e, one) == e


def test_add_cancels(mixed):
    al, x = mixed.gen_elements("alpha x")
    assert (al * x + (-(al * x))).is_zero()


def test_scale(mixed):
    al, x = mixed.gen_elements("alpha x")
    assert scale(Coeff.h(), al * x) == Coeff.h() * (al * x)
    assert scale(0, x).is_zero()


def test_free_mul_associative(rng):
    spec = gr_h2()
    for _ in range(200):
        a = random_element(rng, spec)
        b = random_element(rng, spec)
        c = random_element(rng, spec)
        assert (a * b) * c == a * (b * c)


def test_canonical_printing_is_injective(rng):
    spec = gr_h2()
    for _ in range(200):
        a = random_element(rng, spec)
        b = random_element(rng, spec)
        assert (a == b) == (str(a) == str(b))


def test_words_stored_largest_first():
    spec = h_plane()
    x, y = spec.gen_elements("x y")
    e = y * x + x * y + y * y
    keys = list(e.terms)
    assert keys == sorted(keys, key=spec.word_key, reverse=True)


def test_rejects_mixed_algebras():
    a = gr_h2()
    b = gr_h2()
    with pytest.raises(ValueError):
        a.gen_element("alpha") + b.gen_element("alpha")


def test_relation_degree_validation(mixed):
    x, y = mixed.gen_elements("x y")
    with pytest.raises(ValueError):
        mixed.add_relation(x)  # degree 1
    with pytest.raises(ValueError):
        mixed.add_relation(x * y - y)  # inhomogeneous


def test_reserved_generator_names():
    with pytest.raises(ValueError):
        AlgebraSpec.build("bad", [("q", "even", "f", 0)])


def test_precedence_must_be_permutation():
    with pytest.raises(ValueError):
        AlgebraSpec.build("bad", [("u", "even", "f", 0), ("v", "even", "f", 2)])
