import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddcayley.errors import DegreeTooLarge, NotAHyperplane, NotIrreducible, NotPrimePower
from ddcayley.field import (
    Field,
    FieldSpec,
    field_for,
    hyperplane_index,
    is_irreducible,
    prime_power,
    scale_hyperplane,
)

QR = [(2, 2), (3, 2), (2, 3), (4, 2), (5, 2), (2, 4), (3, 3), (7, 2), (8, 2), (9, 2)]


def poly_mul_oracle(f: Field, a: int, b: int) -> int:
    """Schoolbook product of coefficient vectors reduced by the modulus."""
    p, n, m = f.p, f.degree, f.modulus
    prod = [0] * (2 * n - 1)
    for i, x in enumerate(f.vec(a)):
        for j, y in enumerate(f.vec(b)):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            for k in range(n + 1):
                prod[d - n + k] = (prod[d - n + k] - c * m[k]) % p
    return f.encode(prod[:n])


def gaussian_binomial_hyperplanes(q, r):
    return (q**r - 1) // (q - 1)


@pytest.mark.parametrize("q", [1, 6, 10, 12, 0, -4])
def test_prime_power_rejects(q):
    with pytest.raises(NotPrimePower):
        prime_power(q)


@pytest.mark.parametrize("q,pe", [(2, (2, 1)), (4, (2, 2)), (9, (3, 2)), (27, (3, 3)), (49, (7, 2))])
def test_prime_power(q, pe):
    assert prime_power(q) == pe


def test_default_moduli():
    assert field_for(2, 2).modulus == (1, 1, 1)
    assert field_for(2, 3).modulus == (1, 1, 0, 1)


def test_reducible_modulus_rejected():
    with pytest.raises(NotIrreducible):
        Field(FieldSpec(2, 1, 2, (1, 0, 1)))  # x^2 + 1 = (x + 1)^2
    assert not is_irreducible([0, 0, 1], 2)


def test_too_large():
    with pytest.raises(DegreeTooLarge):
        field_for(2, 17)


@pytest.mark.parametrize("q,r", QR)
def test_mul_matches_polynomial_oracle(q, r):
    f = field_for(q, r)
    rng = np.random.default_rng(q * 100 + r)
    pairs = itertools.product(range(f.order), repeat=2) if f.order <= 64 else rng.integers(0, f.order, (3000, 2))
    for a, b in pairs:
        assert f.mul(int(a), int(b)) == poly_mul_oracle(f, int(a), int(b))


@pytest.mark.parametrize("q,r", QR)
def test_add_matches_digits(q, r):
    f = field_for(q, r)
    a = np.arange(f.order).repeat(f.order) if f.order <= 128 else np.random.default_rng(1).integers(0, f.order, 5000)
    b = np.tile(np.arange(f.order), f.order) if f.order <= 128 else np.random.default_rng(2).integers(0, f.order, 5000)
    assert np.array_equal(f.add_arr(a, b), f.add_digits(a, b))


@pytest.mark.parametrize("q,r", QR)
def test_tau_theta(q, r):
    f = field_for(q, r)
    assert f.element_order(f.tau) == f.order - 1
    assert f.element_order(f.theta) == f.t
    # tau is the least primitive element
    assert all(f.element_order(x) != f.order - 1 for x in range(1, f.tau))


@pytest.mark.parametrize("q,r", QR)
def test_subfield_and_trace(q, r):
    f = field_for(q, r)
    assert len(f.subfield) == q
    sub = f.subfield
    assert all(f.pow(x, q) == x for x in sub)
    # trace is GF(q)-linear and onto
    vals = [f.trace(x) for x in range(f.order)]
    assert set(vals) == set(sub)
    assert all(vals.count(c) == f.order // q for c in sub)


@pytest.mark.parametrize("q,r", QR)
def test_hyperplane_counts(q, r):
    f = field_for(q, r)
    hyps = f.hyperplanes
    assert len(hyps) == f.t == gaussian_binomial_hyperplanes(q, r)
    assert len({h.members for h in hyps}) == f.t
    for h in hyps:
        assert len(h) == q ** (r - 1)
        s = np.asarray(h.members)
        closed = f.add_digits(s[:, None], s[None, :])
        assert np.isin(closed, s).all()
        for c in f.subfield:
            if c:
                assert set(f.mul_arr(s, c).tolist()) == h.member_set
    for x in range(1, f.order):
        assert sum(x in h for h in hyps) == f.t1


@pytest.mark.parametrize("q,r", QR)
def test_hyperplane_shift(q, r):
    f = field_for(q, r)
    c = f.hyperplane_shift
    for h in f.hyperplanes:
        j = hyperplane_index(f, scale_hyperplane(f, h, f.theta))
        assert (j - h.index - c) % f.t == 0


def test_not_a_hyperplane():
    f = field_for(2, 3)
    with pytest.raises(NotAHyperplane):
        hyperplane_index(f, [0, 1])


def test_fieldspec_json_roundtrip():
    f = field_for(4, 2)
    assert FieldSpec.from_json(f.spec.to_json()) == f.spec


small_fields = st.sampled_from(QR[:6]).map(lambda qr: field_for(*qr))


@settings(max_examples=200, deadline=None)
@given(small_fields, st.data())
def test_field_axioms(f, data):
    el = st.integers(0, f.order - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == 0
    assert f.sub(f.add(a, b), b) == a
    if a:
        assert f.mul(a, f.inv(a)) == 1
        assert f.exp(f.log(a)) == a
        assert f.div(f.mul(a, b), a) == b


@settings(max_examples=100, deadline=None)
@given(small_fields, st.data())
def test_trace_linear(f, data):
    el = st.integers(0, f.order - 1)
    a, b = data.draw(el), data.draw(el)
    c = data.draw(st.sampled_from(f.subfield))
    assert f.trace(f.add(a, b)) == f.add(f.trace(a), f.trace(b))
    assert f.trace(f.mul(c, a)) == f.mul(c, f.trace(a))
