import random

import pytest

from mdsconv.errors import (
    DegreeMismatch,
    DivisionByZero,
    EvenOrderField,
    FactorizationUnavailable,
    FieldMismatch,
    NotPrime,
    OrderNotDividing,
    ReducibleModulus,
    ZeroElement,
)
from mdsconv.galois import (
    Field,
    element_order,
    factorize,
    field_create,
    find_element_of_order,
    find_nonsquare,
    find_primitive,
    is_prime,
    is_square,
    prime_power,
)

PRIME_POWERS_64 = [
    q for q in range(2, 65) if prime_power(q) is not None
]


# ---------------------------------------------------------------------------
# creation

def test_create_prime_field():
    f = field_create(3)
    assert (f.p, f.N, f.q) == (3, 1, 3)
    assert f.modulus is None


def test_create_rejects_composite_characteristic():
    with pytest.raises(NotPrime):
        field_create(6)


def test_default_modulus_gf16_is_x4_x_1():
    f = field_create(2, 4)
    assert f.modulus == (1, 1, 0, 0, 1)


def test_default_modulus_deterministic_across_instances():
    assert field_create(2, 16).modulus == field_create(2, 16).modulus
    assert field_create(3, 3).modulus == field_create(3, 3).modulus


def _poly_divides(d, f):
    # GF(2) long division on bit-packed polynomials, independent oracle
    while f.bit_length() >= d.bit_length() and f:
        f ^= d << (f.bit_length() - d.bit_length())
    return f == 0


def test_default_modulus_is_first_irreducible_gf8():
    f = field_create(2, 3)
    packed = sum(c << i for i, c in enumerate(f.modulus))

    def irreducible(m):
        return not any(
            _poly_divides(d, m) for d in range(2, 1 << 3) if d.bit_length() >= 2
        )

    firsts = [m | (1 << 3) for m in range(1 << 3)]
    # degree-descending coefficient comparison equals ascending packed value here
    expected = next(m for m in sorted(firsts) if irreducible(m))
    assert packed == expected == 0b1011  # x^3 + x + 1


def test_explicit_modulus_accepted_after_root_and_factor_check():
    # x^4 + x + 1 has no roots in GF(2) and is not divisible by x^2+x+1
    m = 0b10011
    assert m & 1 and bin(m).count("1") % 2  # no root at 0 or 1
    assert not _poly_divides(0b111, m)
    f = field_create(2, 4, modulus=[1, 1, 0, 0, 1])
    assert f.modulus == (1, 1, 0, 0, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(ReducibleModulus):
        field_create(2, 4, modulus=[1, 0, 1, 0, 1])  # (x^2+x+1)^2


def test_modulus_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        field_create(2, 4, modulus=[1, 1, 1])
    with pytest.raises(DegreeMismatch):
        field_create(3, 2, modulus=[1, 1, 2])  # not monic


def test_field_equality_is_by_value():
    assert field_create(7) == field_create(7)
    assert field_create(2, 4) == field_create(2, 4)
    assert field_create(2, 4) != field_create(2, 5)


# ---------------------------------------------------------------------------
# arithmetic

def test_gf7_inverse_against_brute_force_table():
    f = field_create(7)
    table = {a: next(b for b in range(1, 7) if a * b % 7 == 1) for a in range(1, 7)}
    assert table[5] == 3
    for a in range(1, 7):
        assert f.inv(a) == table[a]


def test_inverse_of_one_is_one():
    for q in [(2, 1), (5, 1), (2, 4), (3, 2)]:
        f = field_create(*q)
        assert f.inv(1) == 1


def test_gf3_addition_wraps():
    f = field_create(3)
    assert (f.element(2) + f.element(2)).val == 1


def test_division_by_zero():
    f = field_create(5)
    with pytest.raises(DivisionByZero):
        f.inv(0)
    with pytest.raises(DivisionByZero):
        f.element(3) / f.element(0)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        field_create(5).element(1) + field_create(7).element(1)


@pytest.mark.parametrize("p,n", [(7, 1), (2, 4), (3, 2), (2, 8), (19, 1)])
def test_inverse_and_group_order_randomized(p, n):
    f = field_create(p, n)
    rng = random.Random(0xC0DE + p * 100 + n)
    for _ in range(1000):
        x = rng.randrange(1, f.q)
        assert f.mul(x, f.inv(x)) == 1
        assert f.pow(x, f.q - 1) == 1


def test_extension_field_axioms_spot():
    f = field_create(2, 4)
    rng = random.Random(7)
    for _ in range(200):
        a, b, c = (rng.randrange(f.q) for _ in range(3))
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)


def test_pow_matches_repeated_multiplication():
    rng = random.Random(99)
    for p, n in [(7, 1), (2, 8), (3, 2)]:
        f = field_create(p, n)
        for _ in range(40):
            x = rng.randrange(1, f.q)
            e = rng.randrange(0, 1 << 10)
            acc = 1
            for _ in range(e):
                acc = f.mul(acc, x)
            assert f.pow(x, e) == acc


def test_pow_big_exponent_reduces_mod_group_order():
    f = field_create(2, 16)
    a = find_primitive(f).val
    e = 1 << 100
    assert f.pow(a, e) == f.pow(a, e % (f.q - 1))


def test_element_reprs_roundtrip():
    f = field_create(2, 4)
    x = f.element([1, 0, 1, 1])
    assert x.repr_json() == [1, 0, 1, 1]
    assert f.element(x.repr_json()) == x
    g = field_create(11)
    assert g.element(13).repr_json() == 2


# ---------------------------------------------------------------------------
# multiplicative structure

def _order_by_iteration(f, x):
    d, y = 1, x
    while y != 1:
        y = f.mul(y, x)
        d += 1
    return d


def test_element_order_gf7():
    f = field_create(7)
    assert element_order(f.element(2)) == _order_by_iteration(f, 2) == 3
    assert element_order(f.element(3)) == _order_by_iteration(f, 3) == 6
    assert element_order(f.element(1)) == 1


def test_element_order_rejects_zero():
    with pytest.raises(ZeroElement):
        element_order(field_create(5).element(0))


@pytest.mark.parametrize("q", PRIME_POWERS_64)
def test_order_divides_group_order_exhaustive(q):
    p, e = prime_power(q)
    f = field_create(p, e)
    for x in range(1, q):
        assert (q - 1) % element_order(f.element(x)) == 0


def test_find_primitive_gf7_smallest():
    f = field_create(7)
    smallest = next(
        x for x in range(1, 7) if _order_by_iteration(f, x) == 6
    )
    assert find_primitive(f).val == smallest == 3


def test_find_primitive_gf2():
    assert find_primitive(field_create(2)).val == 1


def test_find_primitive_gf2_16_verified_against_factors():
    assert factorize(65535) == {3: 1, 5: 1, 17: 1, 257: 1}
    f = field_create(2, 16)
    a = find_primitive(f)
    for r in (3, 5, 17, 257):
        assert f.pow(a.val, 65535 // r) != 1
    assert element_order(a) == 65535
    assert find_primitive(field_create(2, 16)).val == a.val  # deterministic


def test_find_primitive_is_first_in_enumeration():
    f = field_create(2, 8)
    a = find_primitive(f)
    for idx in range(1, a.val):
        assert element_order(f.element(idx)) != 255


def test_find_element_of_order():
    f7 = field_create(7)
    assert find_element_of_order(f7, 3).val == 2
    assert find_element_of_order(f7, 1).val == 1
    f19 = field_create(19)
    x = find_element_of_order(f19, 9)
    assert x.val == 4
    assert _order_by_iteration(f19, x.val) == 9


def test_find_element_of_order_rejects_nondivisor():
    with pytest.raises(OrderNotDividing):
        find_element_of_order(field_create(7), 4)


def test_find_nonsquare_gf7():
    squares = {x * x % 7 for x in range(1, 7)}
    assert squares == {1, 2, 4}
    b = find_nonsquare(field_create(7))
    assert b.val == 3 and b.val not in squares


def test_find_nonsquare_gf3():
    assert find_nonsquare(field_create(3)).val == 2


def test_find_nonsquare_even_field_rejected():
    with pytest.raises(EvenOrderField):
        find_nonsquare(field_create(2, 4))


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 19])
def test_euler_criterion_exhaustive(q):
    p, e = prime_power(q)
    f = field_create(p, e)
    squares = {f.mul(x, x) for x in range(f.q)}
    for x in range(f.q):
        assert is_square(f.element(x)) == (x in squares)


# ---------------------------------------------------------------------------
# factor supply for huge fields

F128_FACTORS = [3, 5, 17, 257, 641, 65537, 274177, 6700417, 67280421310721]


def test_huge_field_requires_factors():
    f = field_create(2, 128)
    with pytest.raises(FactorizationUnavailable):
        find_primitive(f)


def test_huge_field_with_supplied_factors():
    f = field_create(2, 128, q_minus_1_factors=F128_FACTORS)
    a = find_primitive(f)
    assert element_order(a) == f.q - 1


def test_supplied_factors_validated():
    with pytest.raises(FactorizationUnavailable):
        field_create(2, 128, q_minus_1_factors=[3, 5])  # incomplete
    with pytest.raises(FactorizationUnavailable):
        field_create(2, 4, q_minus_1_factors=[15])  # not prime


def test_json_roundtrip():
    for f in [
        field_create(7),
        field_create(2, 16),
        field_create(2, 128, q_minus_1_factors=F128_FACTORS),
    ]:
        assert Field.from_json_dict(f.to_json_dict()) == f


def test_is_prime_spot():
    assert is_prime(2) and is_prime(59) and is_prime(137)
    assert not is_prime(1) and not is_prime(57) and not is_prime(35)
    assert prime_power(9) == (3, 2) and prime_power(35) is None
