"""GF(4) arithmetic underpinning the block constructions.

The field is {0, 1, x, x^2} with x^2 = x + 1 over GF(2), encoded as the
integers 0..3.  Addition is bitwise xor; multiplication runs through the
discrete log of the generator x, whose powers cycle with period 3.
"""

from hwp4m.algebra import GF4_ELEMENTS, ONE, X, X2, ZERO, gf4_add, gf4_mul, gf4_pow_x


def test_elements_and_constants():
    assert GF4_ELEMENTS == (0, 1, 2, 3)
    assert (ZERO, ONE, X, X2) == (0, 1, 2, 3)


def test_addition_is_xor():
    for a in GF4_ELEMENTS:
        for b in GF4_ELEMENTS:
            assert gf4_add(a, b) == (a ^ b)
            assert gf4_add(a, b) == gf4_add(b, a)
        assert gf4_add(a, a) == ZERO
        assert gf4_add(a, ZERO) == a


def test_multiplication_table_key_entries():
    assert gf4_mul(X, X) == X2
    assert gf4_mul(X, X2) == ONE
    assert gf4_mul(X2, X2) == X
    for a in GF4_ELEMENTS:
        assert gf4_mul(a, ZERO) == ZERO
        assert gf4_mul(a, ONE) == a


def test_field_axioms_exhaustive():
    for a in GF4_ELEMENTS:
        for b in GF4_ELEMENTS:
            assert gf4_mul(a, b) == gf4_mul(b, a)
            if a != ZERO and b != ZERO:
                assert gf4_mul(a, b) != ZERO
            for c in GF4_ELEMENTS:
                assert gf4_mul(a, gf4_mul(b, c)) == gf4_mul(gf4_mul(a, b), c)
                assert gf4_mul(a, gf4_add(b, c)) == gf4_add(gf4_mul(a, b), gf4_mul(a, c))


def test_nonzero_elements_form_cyclic_group_of_order_three():
    assert [gf4_pow_x(i) for i in range(7)] == [ONE, X, X2, ONE, X, X2, ONE]
    for a in (ONE, X, X2):
        assert gf4_mul(a, gf4_mul(a, a)) == ONE
    # explicit inverses: 1*1 = x*x^2 = 1
    assert gf4_mul(ONE, ONE) == ONE
    assert gf4_mul(X, X2) == ONE
