import itertools

import numpy as np
import pytest

from syzkit.gf import (
    FieldElement,
    FieldError,
    SubfieldEmbedding,
    default_modulus,
    field_arith,
    field_of_order,
    find_irreducible,
    frobenius,
    is_irreducible,
    is_squarefree,
    make_field,
    parse_field_descriptor,
    poly_deriv,
    poly_gcd,
    subfield_expand,
)


def test_prime_field_gf2():
    F = make_field(2, 1)
    assert F.q == 2
    assert F.add(1, 1) == 0
    assert F.mul(1, 1) == 1


def test_gf8_given_modulus():
    F = make_field(2, 3, (1, 1, 0, 1))  # x^3 + x + 1
    a = FieldElement(F, 2)  # the class of x
    assert int(a * (a * a)) == 3  # x^3 = x + 1


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError, match="reducible modulus"):
        make_field(2, 3, (1, 0, 0, 1))  # x^3 + 1 = (x + 1)(x^2 + x + 1)


def test_order_limit():
    with pytest.raises(FieldError):
        make_field(2, 21)
    with pytest.raises(FieldError):
        make_field(4, 1)


def test_default_modulus_is_smallest_encoding():
    assert default_modulus(2, 3) == (1, 1, 0, 1)
    assert default_modulus(2, 2) == (1, 1, 1)
    assert default_modulus(3, 2) == (1, 0, 1)


def test_inverse_and_division_by_zero():
    F = field_of_order(9)
    for v in range(1, 9):
        a = FieldElement(F, v)
        assert int(a * a.inverse()) == 1
        assert int(field_arith("inv", a) * a) == 1
    with pytest.raises(ZeroDivisionError):
        FieldElement(F, 0).inverse()


def test_field_mismatch():
    a = FieldElement(field_of_order(4), 1)
    b = FieldElement(field_of_order(8), 1)
    with pytest.raises(FieldError):
        a + b


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 16])
def test_axioms_exhaustive(q):
    F = field_of_order(q)
    x = F.elements()
    A, B = np.meshgrid(x, x, indexing="ij")
    # commutativity
    assert np.array_equal(F.mul(A, B), F.mul(B, A))
    assert np.array_equal(F.add(A, B), F.add(B, A))
    for c in x:
        # distributivity and associativity against a third element
        assert np.array_equal(F.mul(A, F.add(B, c)), F.add(F.mul(A, B), F.mul(A, c)))
        assert np.array_equal(F.mul(F.mul(A, B), c), F.mul(A, F.mul(B, c)))
    assert np.array_equal(F.pow(x, q), x)


def test_gf256_frobenius_fixes_everything():
    F = field_of_order(256)
    x = F.elements()
    assert np.array_equal(F.frobenius(x, 2, 8), x)


def test_frobenius_examples():
    F4 = field_of_order(4)
    w = FieldElement(F4, 2)
    assert int(frobenius(w, 2, 1)) == 3  # w^2 = w + 1
    small, big = field_of_order(4), field_of_order(64)
    emb = SubfieldEmbedding(small, big)
    for v in range(4):
        z = emb.inject(v)
        assert big.frobenius(z, 4, 1) == z
    for v in range(64):
        assert big.frobenius(v, 4, 3) == v


@pytest.mark.parametrize("q,Q", [(2, 8), (2, 64), (4, 16), (4, 64), (3, 27), (3, 9)])
def test_embedding_homomorphism(q, Q):
    small, big = field_of_order(q), field_of_order(Q)
    emb = SubfieldEmbedding(small, big)
    for x, y in itertools.product(range(q), repeat=2):
        assert emb.inject(small.add(x, y)) == big.add(emb.inject(x), emb.inject(y))
        assert emb.inject(small.mul(x, y)) == big.mul(emb.inject(x), emb.inject(y))


@pytest.mark.parametrize("q,Q", [(2, 1024), (4, 256), (3, 81), (2, 1 << 16)])
def test_expand_round_trip(q, Q):
    small, big = field_of_order(q), field_of_order(Q)
    emb = SubfieldEmbedding(small, big)
    z = big.elements()
    assert np.array_equal(emb.recombine(emb.expand(z)), z)
    assert not emb.expand(0).any()
    e = emb.expand(emb.basis[1])
    assert e.tolist() == [0, 1] + [0] * (emb.m - 2)
    # b_1 = 1, so a subfield element expands to (x, 0, ..., 0)
    for v in range(q):
        assert emb.expand(emb.inject(v)).tolist() == [v] + [0] * (emb.m - 1)


def test_subfield_expand_wrapper():
    small, big = field_of_order(2), field_of_order(16)
    emb = SubfieldEmbedding(small, big)
    coords = subfield_expand(emb, FieldElement(big, 5))
    assert [int(c) for c in coords] == [1, 0, 1, 0]


def test_find_irreducible():
    F = field_of_order(2)
    rng = np.random.default_rng(0)
    assert find_irreducible(F, 2, rng).tolist() == [1, 1, 1]
    big = field_of_order(16)
    for t in (2, 3, 4):
        g = find_irreducible(big, t, rng)
        assert len(g) == t + 1 and g[-1] == 1
        assert is_irreducible(big, g)
        s = find_irreducible(big, t, rng, mode="sqfr")
        assert is_squarefree(big, s)
        assert len(poly_gcd(big, s, poly_deriv(big, s))) == 1


def test_descriptor_round_trip():
    for q in (2, 7, 8, 9, 256):
        F = field_of_order(q)
        assert parse_field_descriptor(F.descriptor()) == F


def test_element_encoding_round_trip():
    F = field_of_order(27)
    for v in range(27):
        assert int(FieldElement(F, v)) == v
        assert np.array_equal(F.from_digits(F.to_digits(v)), v)


def test_large_field_without_tables():
    F = make_field(2, 18)
    rng = np.random.default_rng(1)
    x = F.random(rng, size=50, nonzero=True)
    assert np.all(F.mul(x, F.inv(x)) == 1)
