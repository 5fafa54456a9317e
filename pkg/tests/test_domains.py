import random
from fractions import Fraction

import pytest

from skewdd.domains import DomainSpec, divide_exact, get_domain, is_unit, norm, sigma_apply

from conftest import rand_ring_elem


def test_domain_spec_validation():
    DomainSpec("int")
    DomainSpec("quad", -5, "conj")
    with pytest.raises(ValueError):
        DomainSpec("quad", 12, "id")  # not squarefree
    with pytest.raises(ValueError):
        DomainSpec("quad", 1, "id")
    with pytest.raises(ValueError):
        DomainSpec("int", sigma="conj")
    with pytest.raises(ValueError):
        DomainSpec("quad", 8, "id")


def test_omega_convention():
    d13 = get_domain(DomainSpec("quad", 13, "id"))
    assert d13.omega_t == 1 and d13.omega_c == 3 and d13.disc == 13
    dm5 = get_domain(DomainSpec("quad", -5, "id"))
    assert dm5.omega_t == 0 and dm5.omega_c == -5 and dm5.disc == -20


def test_sigma_apply_examples(root2, zz):
    w = root2.felem(0, 1)
    assert sigma_apply(w, 1) == root2.felem(0, -1)
    assert sigma_apply(w, 2) == w
    seven = zz.felem(7)
    assert sigma_apply(seven, -3) == seven


def test_norm_examples(z5, root2, zz):
    assert norm(z5.felem(1, 1)) == 6
    assert norm(root2.felem(1, 1)) == -1
    assert norm(zz.felem(-4)) == -4


def test_unit_and_division_examples(root2, z5, gauss):
    assert is_unit(root2.elem(1, 1))
    assert not is_unit(z5.elem(1, 1))
    assert divide_exact(gauss.felem(1, -1), gauss.felem(1, 1)) == gauss.felem(0, -1)
    with pytest.raises(ZeroDivisionError):
        divide_exact(gauss.felem(1), gauss.felem(0))


def test_conjugation_is_an_involution(any_domain):
    rng = random.Random(3)
    for _ in range(50):
        e = rand_ring_elem(any_domain, rng)
        assert e.conj().conj() == e
        # conjugation respects the ring operations
        f = rand_ring_elem(any_domain, rng)
        assert (e * f).conj() == e.conj() * f.conj()
        assert (e + f).conj() == e.conj() + f.conj()


def test_sigma_power_is_multiplicative(any_domain):
    rng = random.Random(4)
    for _ in range(100):
        e = rand_ring_elem(any_domain, rng).to_field()
        f = rand_ring_elem(any_domain, rng).to_field()
        for i in range(-4, 5):
            assert sigma_apply(e * f, i) == sigma_apply(e, i) * sigma_apply(f, i)
            assert sigma_apply(e + f, i) == sigma_apply(e, i) + sigma_apply(f, i)


def test_norm_is_multiplicative(any_domain):
    rng = random.Random(5)
    for _ in range(100):
        e = rand_ring_elem(any_domain, rng).to_field()
        f = rand_ring_elem(any_domain, rng).to_field()
        assert norm(e * f) == norm(e) * norm(f)


def test_field_elem_lowest_terms(z5):
    e = z5.felem(Fraction(2, 4), Fraction(6, 4))
    assert e.den == 2 and e.num.a == 1 and e.num.b == 3
    assert (e * 2).den == 1


def test_complex_embedding_spot_check(any_domain):
    # both embeddings of the field: the tautological one and its composite
    # with conjugation
    embeddings = [lambda v: v.complex_value(),
                  lambda v: v.conj().complex_value()]
    rng = random.Random(6)
    for _ in range(50):
        e = rand_ring_elem(any_domain, rng).to_field()
        f = rand_ring_elem(any_domain, rng, nonzero=True).to_field()
        for emb in embeddings:
            for got, want in (
                (emb(e + f), emb(e) + emb(f)),
                (emb(e * f), emb(e) * emb(f)),
                (emb(e / f), emb(e) / emb(f)),
            ):
                assert abs(got - want) < 1e-9


def test_exact_division_roundtrip(any_domain):
    rng = random.Random(7)
    for _ in range(100):
        e = rand_ring_elem(any_domain, rng).to_field()
        f = rand_ring_elem(any_domain, rng, nonzero=True).to_field()
        assert (e / f) * f == e
