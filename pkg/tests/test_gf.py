import numpy as np
import pytest

from quasiherm.gf import FieldCtx, factor_prime_power, field_for_q, make_field

ALL_Q = [3, 5, 7, 9, 11, 13]


@pytest.fixture(params=[3, 5, 9], ids=lambda q: f"q{q}")
def F(request):
    return field_for_q(request.param)


def test_make_field_rejects_bad_input():
    with pytest.raises(ValueError):
        make_field(2, 1)  # even characteristic
    with pytest.raises(ValueError):
        make_field(4, 1)  # not prime
    with pytest.raises(ValueError):
        make_field(17, 1)  # beyond the bound
    with pytest.raises(ValueError):
        factor_prime_power(12)


def test_deterministic_construction():
    a = FieldCtx(3, 1)
    b = FieldCtx(3, 1)
    assert a.prim_poly == b.prim_poly
    assert (a.exp == b.exp).all()
    assert (a.xi, a.s, a.i_elem) == (b.xi, b.s, b.i_elem)


@pytest.mark.parametrize("q", ALL_Q)
def test_distinguished_constants(q):
    F = field_for_q(q)
    n = F.q2 - 1
    assert F.pow(F.xi, n) == 1
    orders = {F.pow(F.xi, m) for m in range(1, n)}
    assert 1 not in orders  # xi is primitive
    assert F.pow(F.s, (q - 1) // 2) != 1  # nonsquare witness in GF(q)
    assert F.mul(F.i_elem, F.i_elem) == F.s
    assert F.add(F.i_elem, F.frobenius(F.i_elem)) == 0


def test_q3_smallest_nonsquare_is_two():
    F = field_for_q(3)
    assert F.s == 2  # -1 is the only nonsquare of GF(3)
    assert F.pow(F.xi, 4) == 2  # xi^((q^2-1)/2) = -1


def test_field_axioms_exhaustive(F):
    els = range(F.q2)
    for a in els:
        assert F.add(a, 0) == a
        assert F.mul(a, 1) == a
        assert F.mul(a, 0) == 0
        assert F.add(a, F.neg(a)) == 0
    for a in els:
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
    rng = np.random.default_rng(0)
    for _ in range(200):
        a, b, c = rng.integers(0, F.q2, size=3)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


def test_inverses_and_powers(F):
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    with pytest.raises(ZeroDivisionError):
        F.pow(0, -1)
    for a in range(1, F.q2):
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.q2 - 1) == 1
        assert F.inv(a) == F.pow(a, F.q2 - 2)
    assert F.pow(F.xi, 3 + (F.q2 - 4)) == 1


def test_frobenius_norm_trace(F):
    q = F.q
    for a in range(F.q2):
        assert F.frobenius(F.frobenius(a)) == a
        assert F.norm(a) == F.pow(a, q + 1) if a else F.norm(a) == 0
        assert F.in_gfq[F.norm(a)]
        assert F.in_gfq[F.trace(a)]
    # the norm of the primitive element generates GF(q)*
    nx = F.norm(F.xi)
    powers = {F.pow(nx, m) for m in range(1, q - 1)}
    assert 1 not in powers and F.pow(nx, q - 1) == 1


def test_subfield_is_frobenius_fixed(F):
    fixed = [a for a in range(F.q2) if F.frobenius(a) == a]
    assert sorted(fixed) == sorted(int(c) for c in F.gfq_codes)
    assert len(fixed) == F.q


def test_unique_decomposition(F):
    seen = set()
    for a in range(F.q2):
        x0, x1 = F.components(a)
        assert F.in_gfq[x0] and F.in_gfq[x1]
        assert F.from_components(x0, x1) == a
        seen.add((x0, x1))
    assert len(seen) == F.q2


def test_square_counts_and_zero(F):
    assert F.is_square(0)  # flagged separately from Box_q membership
    squares = [a for a in range(1, F.q2) if F.is_square(a)]
    assert len(squares) == (F.q2 - 1) // 2
    assert not F.is_square(F.xi)
    assert F.is_square(F.mul(F.xi, F.xi))


def test_norm_square_equivalence(F):
    # det(A)^(q+1) in Box_q iff det(A) in Box_(q^2), over every element
    for a in range(1, F.q2):
        assert F.is_square_q(F.norm(a)) == F.is_square(a)


def test_is_square_q_requires_subfield():
    F = field_for_q(3)
    with pytest.raises(ValueError):
        F.is_square_q(F.xi)
