import random

import pytest

from airycheck.chevalley import a_subspace, build_algebra
from airycheck.loopmodel import (
    AffineRootIndex,
    GLnModel,
    all_lines,
    exp_product_valuation,
    factorize_I1,
    filtration_basis,
    filtration_dim,
    odd_parahoric_check,
    phi_eval,
    phi_generic_check,
    stab_affine_roots,
)
from airycheck.rootdata import Coweight, exponents, get_root_datum, minuscule_coweights


def test_affine_lines_a2():
    rd = get_root_datum("A", 2, "sc")
    alg = build_algebra(rd)
    # depth-1 lines inside Lie I(1)/Lie I(2): the simple roots at level 0
    # plus -theta at level 1
    lines = filtration_basis(alg, 1, 2)
    assert len(lines) == 3
    roots = {(l.root, l.power) for l in lines}
    assert ((1, 0), 0) in roots and ((0, 1), 0) in roots
    assert ((-1, -1), 1) in roots


def test_filtration_dims():
    rd = get_root_datum("A", 2, "sc")
    alg = build_algebra(rd)
    h = alg.h
    # Lie I(1)/Lie I(1 + h/2 rounded up): one line per depth in range
    npos = len(rd.pos_roots)
    k = (h + 1) // 2
    dims = [filtration_dim(alg, r, r + 1) for r in range(1, h)]
    assert all(d >= 1 for d in dims)
    assert filtration_dim(alg, 0, 1) == rd.rank  # only the Cartan sits at depth 0
    total = filtration_dim(alg, 1, 1 + h)
    assert total == rd.num_roots + rd.rank  # one full cyclic period


def test_line_depths():
    rd = get_root_datum("A", 2, "sc")
    assert AffineRootIndex((1, 1), 0).depth(rd) == 2
    assert AffineRootIndex((-1, -1), 1).depth(rd) == 1
    assert AffineRootIndex(None, 2).depth(rd) == 6
    assert len(all_lines(rd)) == (rd.num_roots + 1) * (3 + 2)


@pytest.mark.parametrize("series,rank", [("A", 2), ("C", 2), ("D", 4), ("G", 2)])
def test_phi_generic(series, rank):
    alg = build_algebra(get_root_datum(series, rank, "adjoint"))
    assert phi_generic_check(alg)


def test_phi_values():
    alg = build_algebra(get_root_datum("A", 2, "sc"))
    zero = [None] * (alg.h + 2)
    # phi pairs t^1-level against N^-, t^2-level against E_theta
    Y = list(zero)
    Y[1] = alg.E((1, 0))
    v1 = phi_eval(alg, Y)
    assert v1
    Y = list(zero)
    Y[1] = alg.E((1, 1))  # theta at level 1 has depth h+2-... pairs to zero
    assert not phi_eval(alg, Y)
    Y = list(zero)
    Y[2] = alg.E((-1, -1))
    assert phi_eval(alg, Y)


def test_stab_affine_roots_trivial_mu():
    alg = build_algebra(get_root_datum("A", 2, "sc"))
    lines = stab_affine_roots(alg, Coweight((0, 0)))
    assert lines == {
        AffineRootIndex(a, 0) for a in alg.rd.pos_roots
    }


def test_stab_affine_roots_pgl2():
    alg = build_algebra(get_root_datum("A", 1, "adjoint"))
    lines = stab_affine_roots(alg, Coweight((1,)))
    assert lines == {AffineRootIndex((-1,), 1)}


def test_stab_affine_roots_minuscule_suite():
    for series, rank in (("A", 3), ("C", 2), ("D", 4)):
        rd = get_root_datum(series, rank, "adjoint")
        alg = build_algebra(rd)
        for mu in minuscule_coweights(rd):
            lines = stab_affine_roots(alg, mu)
            assert len(lines) == len(rd.pos_roots)


def test_odd_parahoric():
    assert odd_parahoric_check(build_algebra(get_root_datum("A", 2, "sc")))
    assert odd_parahoric_check(build_algebra(get_root_datum("A", 4, "sc")))
    with pytest.raises(ValueError):
        odd_parahoric_check(build_algebra(get_root_datum("A", 3, "sc")))


# ---------------------------------------------------------------------------
# GL_n matrix model.

def test_model_mul_inv():
    model = GLnModel(3, 7)
    rng = random.Random(0)
    for _ in range(20):
        g = model.random_I1(rng)
        assert model.in_filtration(g, 1)
        assert model.eq(model.mul(g, model.inv(g)), model.identity_series())


def test_model_depth():
    model = GLnModel(2, 5)
    g = model.identity_series()
    assert model.depth(g) is None
    g[1][0][0] = model.field(1)  # diagonal at t^1: depth h = 2
    assert model.depth(g) == 2
    g[0][0][1] = model.field(3)  # entry above diagonal at t^0: depth 1
    assert model.depth(g) == 1


def test_exp_series_terminates():
    model = GLnModel(2, 5)
    Y = model.zero_series()
    Y[1][0][1] = model.field(2)
    g = model.exp_series(Y)
    assert g[0] == [[model.field(1), model.field(0)], [model.field(0), model.field(1)]]
    assert g[1][0][1] == model.field(2)


def test_factorize_identity():
    model = GLnModel(2, 7)
    mu = Coweight((0, 0))
    u, a, s, res = factorize_I1(model, model.identity_series(), mu)
    one = model.identity_series()
    for part in (u, a, s, res):
        assert model.eq(part, one)


@pytest.mark.parametrize("n,p", [(2, 7), (3, 7), (4, 11)])
def test_factorize_random(n, p):
    model = GLnModel(n, p)
    rng = random.Random(100 * n + p)
    half = (model.h + 1) // 2
    rd = model.rd
    window = (0, 0)
    for mu in minuscule_coweights(rd, degree_window=window):
        for _ in range(10):
            g = model.random_I1(rng)
            u, a, s, res = factorize_I1(model, g, mu)
            recon = model.mul(model.mul(model.mul(u, a), s), res)
            assert model.eq(recon, g)
            assert model.in_filtration(res, 1 + half)
            assert model.stabilizes_x_tilde(s)


def test_factorize_rejects_outside_I1():
    model = GLnModel(2, 7)
    g = model.identity_series()
    g[0][1][0] = model.field(1)  # below the diagonal at t^0: depth -1
    with pytest.raises(ValueError):
        factorize_I1(model, g, Coweight((0, 0)))


def test_exp_product_valuation():
    # exp(-(Y1+Y2)t) exp(Y1 t) exp(Y2 t) lands one level deeper than r
    model = GLnModel(4, 11)
    alg = model.alg
    rng = random.Random(9)
    for r in range(2, (model.h + 1) // 2 + 1):
        ar = a_subspace(alg, r)
        lower = []
        for rr in range(2, r + 1):
            lower.extend(a_subspace(alg, rr).basis)
        for _ in range(10):
            Y1 = alg.zero()
            for b in lower:
                c = model.field(rng.randrange(model.p))
                Y1 = [x + c * y for x, y in zip(Y1, b)]
            Y2 = alg.zero()
            for b in ar.basis:
                c = model.field(rng.randrange(model.p))
                Y2 = [x + c * y for x, y in zip(Y2, b)]
            d = exp_product_valuation(model, Y1, Y2, r)
            assert d is None or d >= 1 + r
