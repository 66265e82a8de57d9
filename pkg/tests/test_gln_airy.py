import random
from fractions import Fraction

import pytest

from airycheck.arith import GF, FqField
from airycheck.gln_airy import (
    chi_eval,
    chi_geometric,
    e1_matrix,
    exp_section,
    f_poly,
    geometric_section,
    hecke_p1,
    hecke_p2,
    log_section,
    make_params,
    phi_z_values,
    poly_eval,
    section_mul,
    z_element,
)
from airycheck.loopmodel import GLnModel


def test_e1_matrix():
    F = GF(7)
    m = e1_matrix(2, F)
    assert m == [[F(0), F(1)], [F(1), F(0)]]
    from airycheck.linalg import identity, mat_mul

    n = 4
    m = e1_matrix(n, F)
    power = identity(n, F(1))
    for _ in range(n):
        power = mat_mul(power, m)
    assert power == identity(n, F(1))


def test_z_element_levels():
    model = GLnModel(4, 7)
    F = model.field
    z1 = z_element(model, 1)
    # E_{i,i+1} entries at t^0, the wrapped E_{4,1} at t^1
    assert z1[0][0][1] == F(1) and z1[0][1][2] == F(1) and z1[0][2][3] == F(1)
    assert z1[1][3][0] == F(1)
    z5 = z_element(model, 5)
    # E_1^5 = E_1 shifted one full period: everything one t-level up
    assert z5[1][0][1] == F(1) and z5[2][3][0] == F(1)
    with pytest.raises(ValueError):
        z_element(model, 6)


def test_z_mul_relation():
    # the series product of Z_i and Z_j matches Z_{i+j}
    model = GLnModel(4, 11)
    for i in range(1, 4):
        for j in range(1, 5 - i + 1):
            if i + j <= 5:
                assert model.eq(
                    model.mul(z_element(model, i), z_element(model, j)),
                    z_element(model, i + j),
                )


def test_phi_z_values():
    model = GLnModel(4, 7)
    vals = phi_z_values(model)
    F = model.field
    assert vals == [F(0), F(0), F(0), F(0), F(4)]


def test_section_mul_and_exp_log():
    n = 4
    F = GF(11)
    rng = random.Random(5)
    for _ in range(500):
        y = [F(rng.randrange(11)) for _ in range(n + 1)]
        assert log_section(n, F, exp_section(n, F, y)) == y
        x = [F(rng.randrange(11)) for _ in range(n + 1)]
        assert exp_section(n, F, log_section(n, F, x)) == x


def test_exp_log_roundtrip_n2():
    n = 2
    F = GF(11)
    rng = random.Random(6)
    for _ in range(500):
        y = [F(rng.randrange(11)) for _ in range(n + 1)]
        assert log_section(n, F, exp_section(n, F, y)) == y


def test_chi_additive():
    # chi is a homomorphism on the section group
    n = 4
    F = GF(11)
    params = make_params(n, F, (1, 3))
    rng = random.Random(7)
    for _ in range(1000):
        x = [F(rng.randrange(11)) for _ in range(n + 1)]
        y = [F(rng.randrange(11)) for _ in range(n + 1)]
        assert chi_eval(params, section_mul(n, F, x, y)) == chi_eval(
            params, x
        ) + chi_eval(params, y)


def test_chi_geometric_matches_chi_eval():
    n = 2
    for field in (GF(7), FqField(11, 2)):
        params = make_params(n, field, (2,))
        for m1 in field.elements():
            assert chi_geometric(params, m1) == chi_eval(
                params, geometric_section(params, m1)
            )


def test_chi_geometric_matches_chi_eval_n4():
    F = GF(11)
    params = make_params(4, F, (1, 5))
    for m1 in F.elements():
        assert chi_geometric(params, m1) == chi_eval(
            params, geometric_section(params, m1)
        )


def test_hecke_p2_specialization():
    n = 4
    F = GF(11)
    # p_2(m1, m2, m3) = -(m2 m1 + m3)
    m = [F(2), F(3), F(5)]
    assert hecke_p2(n, F, m) == -(F(3) * F(2) + F(5))
    with pytest.raises(ValueError):
        hecke_p2(n, F, [F(1)])


def test_hecke_p1_on_geometric_locus():
    # with m_r = m1^r the corrections vanish against chi_geometric's shape
    n = 4
    F = GF(11)
    params = make_params(n, F, (1, 0))
    f = f_poly(params)
    for m1 in F.elements():
        m = [m1, F(0), F(0)]
        a = hecke_p2(n, F, m)
        # fiber identity: p_1 = f(m1) + m1 * a on the fiber p_2 = a
        assert hecke_p1(params, m) == poly_eval(F, f, m1) + m1 * a


def test_fiber_identity_random():
    n = 4
    F = GF(7)
    params = make_params(n, F, (2, 3))
    f = f_poly(params)
    rng = random.Random(8)
    for _ in range(200):
        m = [F(rng.randrange(7)) for _ in range(1 + n // 2)]
        a = hecke_p2(n, F, m)
        assert hecke_p1(params, m) == poly_eval(F, f, m[0]) + m[0] * a


def test_f_poly_n4():
    F = GF(11)
    params = make_params(4, F, (1, 0))
    f = f_poly(params)
    # f(m) = m - m^5/5 over F_11
    assert f == [F(0), F(1), F(0), F(0), F(0), -F(1) / F(5)]
    assert f[-1]


def test_invalid_params():
    with pytest.raises(ValueError):
        make_params(3, GF(7), (1,))  # odd n
    with pytest.raises(ValueError):
        make_params(4, GF(5), (1, 0))  # p <= n + 1
    with pytest.raises(ValueError):
        make_params(4, GF(11), (1,))  # wrong lambda length
