import itertools

import numpy as np
import pytest
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_mul, gf_rem

from eaqmds.field import (
    FieldElement,
    FieldError,
    ResourceCapError,
    _build_field,
    conjugate,
    field_arith,
    field_for,
    make_field,
    primitive_nth_root,
    smallest_irreducible,
)


def poly_oracle(F):
    """Multiply/add via coefficient polynomials, bypassing the log tables."""
    p, e = F.p, F.e
    mod_hf = list(F.modulus[::-1])

    def to_hf(a):
        return [(a // p**i) % p for i in range(e)][::-1]

    def from_hf(c):
        return sum(int(x) * p**i for i, x in enumerate(c[::-1]))

    def mul(a, b):
        return from_hf(gf_rem(gf_mul(to_hf(a), to_hf(b), p, ZZ), mod_hf, p, ZZ))

    def add(a, b):
        return from_hf(gf_add(to_hf(a), to_hf(b), p, ZZ))

    return add, mul


def trial_division_irreducible(poly_low, p):
    e = len(poly_low) - 1
    f_hf = list(poly_low[::-1])
    for deg in range(1, e // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            if not gf_rem(f_hf, [1, *tail], p, ZZ):
                return False
    return True


@pytest.mark.parametrize("p,e,sub", [(3, 2, 3), (7, 2, 7), (29, 2, 29)])
def test_make_field_examples(p, e, sub):
    F = make_field(p, e)
    assert F.order == p**e
    assert F.q_sub == sub
    assert F.modulus[-1] == 1 and len(F.modulus) == e + 1


def test_modulus_is_smallest_irreducible():
    assert make_field(3, 2).modulus == (1, 0, 1)  # x^2 + 1
    assert make_field(29, 2).modulus == (2, 0, 1)  # -1 is a square mod 29, -2 is not
    for p, e in [(3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (7, 4)]:
        mod = smallest_irreducible(p, e)
        assert trial_division_irreducible(mod, p)
        code = sum(c * p**i for i, c in enumerate(mod[:-1]))
        for smaller in range(code):
            low = tuple((smaller // p**i) % p for i in range(e)) + (1,)
            assert not trial_division_irreducible(low, p)


def test_make_field_errors():
    with pytest.raises(FieldError):
        make_field(9, 2)
    with pytest.raises(FieldError):
        make_field(2, 3)
    with pytest.raises(ResourceCapError):
        make_field(3, 15)
    with pytest.raises(ResourceCapError):
        make_field(7, 4, cap=1000)


def test_deterministic_tables():
    a = make_field(7, 2)
    _build_field.cache_clear()
    b = make_field(7, 2)
    assert a is not b
    assert a == b
    assert np.array_equal(a.exp_table, b.exp_table)
    assert np.array_equal(a.log_table, b.log_table)
    assert a.primitive == b.primitive


@pytest.mark.parametrize("p,e", [(3, 2), (7, 2), (3, 4)])
def test_arithmetic_matches_polynomial_oracle(p, e):
    F = make_field(p, e)
    add, mul = poly_oracle(F)
    els = range(F.order)
    for a in els:
        for b in els:
            assert F.add(a, b) == add(a, b)
            assert F.mul(a, b) == mul(a, b)


def test_vectorized_matches_scalar():
    F = make_field(7, 2)
    a = np.arange(F.order)[:, None]
    b = np.arange(F.order)[None, :]
    add = F.add_arr(a, b)
    mul = F.mul_arr(a, b)
    sub = F.sub_arr(a, b)
    for x in range(F.order):
        for y in range(0, F.order, 5):
            assert add[x, y] == F.add(x, y)
            assert mul[x, y] == F.mul(x, y)
            assert sub[x, y] == F.sub(x, y)
    assert np.array_equal(F.pow_arr(np.arange(F.order), 7), [F.pow(x, 7) for x in range(F.order)])


def test_gf9_group_laws():
    F = make_field(3, 2)
    for a in range(9):
        assert F.add(a, F.neg(a)) == 0
    for a in range(1, 9):
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, 8) == 1
    generators = [g for g in range(1, 9) if F.order_of(g) == 8]
    assert len(generators) == 4  # phi(8)
    for g in generators:
        assert len({F.pow(g, k) for k in range(8)}) == 8


def test_pow_negative_and_errors():
    F = make_field(7, 2)
    for a in range(1, 49):
        assert F.pow(a, -3) == F.inv(F.pow(a, 3))
    with pytest.raises(FieldError):
        F.inv(0)
    with pytest.raises(FieldError):
        F.pow(0, -1)
    with pytest.raises(FieldError):
        F.arith(50, 1, "add")
    with pytest.raises(FieldError):
        F.arith(1, 1, "frobnicate")


def test_field_element_and_mixed_fields():
    F, G = make_field(3, 2), make_field(5, 2)
    a = F.element(5)
    assert (a + (-a)).value == 0
    assert (a * a.inverse()).value == 1
    assert field_arith(a, a, "sub").value == 0
    assert field_arith(a, 8, "pow").value == 1
    assert field_arith(a, None, "inv") == a.inverse()
    with pytest.raises(FieldError):
        a + G.element(1)
    with pytest.raises(FieldError):
        field_arith(a, G.element(1), "mul")


def test_conjugation_gf9():
    F = make_field(3, 2)
    assert F.conjugate(0) == 0 and F.conjugate(1) == 1
    for a in range(3):  # prime subfield GF(3) is encoded as 0, 1, 2
        assert F.conjugate(a) == a
    fixed = [a for a in range(9) if F.conjugate(a) == a]
    assert fixed == [0, 1, 2]
    for a in range(9):
        assert F.conjugate(F.conjugate(a)) == a
    assert conjugate(F.element(4)).value == F.conjugate(4)


def test_conjugate_requires_even_degree():
    with pytest.raises(FieldError):
        make_field(3, 3).conjugate(2)


@pytest.mark.parametrize("p,e", [(3, 2), (5, 2), (7, 2), (3, 4)])
def test_conjugation_is_automorphism_exhaustive(p, e):
    F = make_field(p, e)
    els = np.arange(F.order)
    a, b = els[:, None], els[None, :]
    conj = F.pow_arr(els, F.q_sub)
    assert np.array_equal(conj[F.add_arr(a, b)], F.add_arr(conj[a], conj[b]))
    assert np.array_equal(conj[F.mul_arr(a, b)], F.mul_arr(conj[a], conj[b]))


def test_conjugation_is_automorphism_random_large():
    F = make_field(29, 2)
    rng = np.random.default_rng(7)
    a, b = rng.integers(0, F.order, 5000), rng.integers(0, F.order, 5000)
    conj = lambda x: F.pow_arr(x, 29)
    assert np.array_equal(conj(F.add_arr(a, b)), F.add_arr(conj(a), conj(b)))
    assert np.array_equal(conj(F.mul_arr(a, b)), F.mul_arr(conj(a), conj(b)))


def test_primitive_nth_root_examples():
    F9 = make_field(3, 2)
    assert primitive_nth_root(F9, 8) == F9.primitive
    assert primitive_nth_root(F9, 1) == 1
    F49 = make_field(7, 2)
    alpha = primitive_nth_root(F49, 48)
    assert F49.pow(alpha, 48) == 1
    assert F49.pow(alpha, 24) != 1 and F49.pow(alpha, 16) != 1
    with pytest.raises(FieldError):
        primitive_nth_root(F49, 50)


@pytest.mark.parametrize("q", [3, 5, 7, 9, 13])
def test_primitive_root_orders(q):
    from sympy import divisors, primefactors

    F = field_for(q)
    for n in divisors(F.order - 1):
        a = primitive_nth_root(F, n)
        assert F.pow(a, n) == 1
        assert all(F.pow(a, n // ell) != 1 for ell in primefactors(n))


def test_subfield_elements():
    F = make_field(7, 4)
    sub = F.subfield_elements(49)
    assert len(sub) == 49
    assert all(F.pow(int(a), 49) == int(a) for a in sub)
    with pytest.raises(FieldError):
        F.subfield_elements(343)


def test_field_for_rejects_non_prime_power():
    with pytest.raises(FieldError):
        field_for(15)
    assert field_for(9).order == 81
