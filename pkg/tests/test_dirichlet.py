import math
import random

import pytest
from hypothesis import given, strategies as st

from resorder.dirichlet import character_group, class_sum, class_sum_characters, h_chi, principal, real_nonprincipal
from resorder.ntkernel import divisors, phi


def test_groups_have_phi_elements():
    for d in range(1, 61):
        chars = character_group(d)
        assert len(chars) == phi(d)
        assert chars[0].is_principal
        assert len(set(chars)) == len(chars)


def test_named_characters():
    psi1, xi1 = real_nonprincipal(4), real_nonprincipal(3)
    assert psi1(3) == -1 and psi1(1) == 1 and psi1(2) == 0
    assert xi1(2) == -1 and xi1(3) == 0
    assert len(character_group(4)) == 2
    assert all(c.is_real for c in character_group(8))
    with pytest.raises(ValueError):
        character_group(0)


def test_character_axioms():
    for d in (5, 7, 8, 9, 12, 15, 16, 24, 63):
        units = [a for a in range(1, d) if math.gcd(a, d) == 1] or [1]
        for chi in character_group(d):
            assert chi(1) == 1
            assert phi(d) % chi.order == 0
            for a in units[:6]:
                for b in units[:6]:
                    assert abs(complex(chi(a * b)) - complex(chi(a)) * complex(chi(b))) < 1e-12
            if not chi.is_principal:
                assert abs(sum(complex(chi(a)) for a in range(d))) < 1e-9


def test_group_closure():
    chars = character_group(24)
    s = set(chars)
    for a in chars:
        assert a.conj() in s
        for b in chars:
            assert a * b in s


def _conductor_brute(chi):
    d = chi.modulus
    for f in divisors(d):
        ok = True
        for a in range(1, d):
            for b in range(1, d):
                if math.gcd(a * b, d) == 1 and (a - b) % f == 0 and chi.exponent(a) != chi.exponent(b):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return f
    return d


def test_conductor_matches_induction_test():
    for d in (3, 4, 5, 8, 9, 12, 16, 20, 24, 27, 32, 36):
        for chi in character_group(d):
            assert chi.conductor == _conductor_brute(chi), (d, chi)


def test_h_chi_examples():
    psi1, psi0 = real_nonprincipal(4), principal(4)
    assert h_chi(psi1, 1) == 1
    assert h_chi(psi1, 3) == -2
    assert h_chi(psi0, 2) == -1
    assert h_chi(psi0, 6) == 0


def test_class_sum_examples():
    assert class_sum(1, 4, 1) == 1
    assert class_sum(3, 4, 3) == 1
    assert class_sum(1, 3, 4) == 1
    with pytest.raises(ValueError):
        class_sum(2, 4, 5)


def test_orthogonality_identity_random_triples():
    rng = random.Random(2024)
    done = 0
    while done < 200:
        d = rng.randint(1, 24)
        a = rng.randrange(d) if d > 1 else 0
        if math.gcd(a, d) != 1:
            continue
        v = rng.randint(1, 10**4)
        rhs = class_sum_characters(a, d, v)
        assert abs(rhs.imag) < 1e-9
        assert class_sum(a, d, v) == round(rhs.real)
        assert abs(rhs.real - round(rhs.real)) < 1e-9
        done += 1


@given(st.integers(1, 3000), st.integers(1, 3000), st.sampled_from([3, 4, 5, 7, 8, 12]))
def test_h_chi_multiplicative(u, v, d):
    if math.gcd(u, v) != 1:
        return
    for chi in character_group(d):
        assert abs(complex(h_chi(chi, u * v)) - complex(h_chi(chi, u)) * complex(h_chi(chi, v))) < 1e-9


@given(st.integers(1, 10**5))
def test_h_chi_bounded_by_divisor_count(v):
    for chi in character_group(5) + character_group(4):
        assert abs(h_chi(chi, v)) <= len(divisors(v)) + 1e-9
        assert abs(complex(h_chi(chi.conj(), v)) - complex(h_chi(chi, v)).conjugate()) < 1e-9
