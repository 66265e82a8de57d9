import random

import pytest

from airycheck.arith import GF
from airycheck.chevalley import (
    QQ,
    a_subspace,
    build_algebra,
    centralizer_z,
    decomposition_check,
    grading_piece,
    height_piece,
    nilpotent_exp,
    nilpotent_log,
    p_minus_bijective,
    principal_sl2,
    relevance_linear_kernel,
    relevance_quadratic_bruteforce,
    s1_graph,
    s1_graph_check,
    u_mu_piece,
    wP_representative,
    x_minus1,
)
from airycheck.linalg import identity, mat_vec
from airycheck.rootdata import Coweight, get_root_datum, minuscule_coweights


def test_a1_structure():
    alg = build_algebra(get_root_datum("A", 1, "sc"))
    assert alg.dim == 3
    assert alg.check_jacobi()
    assert alg.check_kappa_invariance()
    e, f = alg.E((1,)), alg.E((-1,))
    hcoord = alg.bracket(e, f)
    assert hcoord[alg.cartan_index(0)] == QQ(1)


def test_g2_jacobi_exhaustive():
    alg = build_algebra(get_root_datum("G", 2, "adjoint"))
    assert alg.dim == 14
    assert alg.check_jacobi()
    assert alg.check_kappa_invariance()


def test_gl3_matrix_crosscheck():
    # bracket agrees with the commutator of 3x3 matrices over F_7
    F = GF(7)
    alg = build_algebra(get_root_datum("GL", 3, "gl"), F)
    rng = random.Random(3)
    from airycheck.linalg import mat_mul

    for _ in range(25):
        x = [F(rng.randrange(7)) for _ in range(alg.dim)]
        y = [F(rng.randrange(7)) for _ in range(alg.dim)]
        mx, my = alg.matrix_of(x), alg.matrix_of(y)
        comm = [
            [a - b for a, b in zip(ra, rb)]
            for ra, rb in zip(mat_mul(mx, my), mat_mul(my, mx))
        ]
        assert alg.matrix_of(alg.bracket(x, y)) == comm
        assert alg.from_matrix(mx) == x


def test_principal_sl2_sl3():
    alg = build_algebra(get_root_datum("A", 2, "sc"))
    nminus, H, nplus = principal_sl2(alg)
    # N^+ = 2 e_1 + 2 e_2 since 2 rho-check = 2 (omega-check_1 + omega-check_2)
    for i in (0, 1):
        simple = tuple(1 if j == i else 0 for j in range(2))
        assert nplus[alg.root_index[simple]] == QQ(2)
        assert nminus[alg.root_index[tuple(-c for c in simple)]] == QQ(1)
    assert alg.bracket(nplus, nminus) == H


def test_grading_dims():
    alg = build_algebra(get_root_datum("A", 2, "sc"))
    h = alg.h
    assert h == 3
    assert grading_piece(alg, 0).dim == 2
    # g_r = g(r) + g(r-h); total dim is dim g
    assert sum(grading_piece(alg, r).dim for r in range(h)) == alg.dim
    assert height_piece(alg, h - 1).dim == 1  # highest root line
    with pytest.raises(ValueError):
        height_piece(alg, h)


def test_centralizer_dims():
    # dim z_r = #{exponents congruent to r mod h}
    for series, rank, form in (("A", 2, "sc"), ("D", 4, "adjoint"), ("B", 3, "sc")):
        rd = get_root_datum(series, rank, form)
        alg = build_algebra(rd)
        from airycheck.rootdata import exponents

        exps = exponents(rd)
        zs = centralizer_z(alg)
        for r in range(alg.h):
            assert zs[r].dim == sum(1 for m in exps if m % alg.h == r % alg.h)
    d4 = build_algebra(get_root_datum("D", 4, "adjoint"))
    assert centralizer_z(d4)[3].dim == 2  # exponents 3, 3


def test_centralizer_gl_is_cyclic_powers():
    # for gl_n, z_r is the line through E_1^r (r >= 1)
    F = GF(7)
    alg = build_algebra(get_root_datum("GL", 4, "gl"), F)
    from airycheck.gln_airy import e1_matrix
    from airycheck.linalg import mat_mul

    zs = centralizer_z(alg)
    er = e1_matrix(4, F)
    for r in range(1, alg.h):
        assert zs[r].dim == 1
        v = zs[r].basis[0]
        w = alg.from_matrix(er)
        # v and E_1^r are proportional
        i = next(i for i, c in enumerate(w) if c)
        assert [c * w[i] for c in v] == [c * v[i] for c in w]
        er = mat_mul(er, e1_matrix(4, F))


def test_a_subspace():
    alg = build_algebra(get_root_datum("A", 3, "sc"))
    assert a_subspace(alg, 1).dim == 0
    h = alg.h
    for r in range(2, h):
        ar = a_subspace(alg, r)
        # a_r = [g(r-1-h), N^+] has the dimension of g(r-1-h) when p_- behaves
        assert ar.dim == height_piece(alg, r - 1 - h).dim
        for v in ar.basis:
            assert all(
                not c or alg.height_of_index(i) in (r, r - h)
                for i, c in enumerate(v)
            )
    with pytest.raises(ValueError):
        a_subspace(alg, 0)


@pytest.mark.parametrize("series,rank", [("A", 3), ("B", 2), ("G", 2), ("D", 4)])
def test_p_minus_bijective(series, rank):
    alg = build_algebra(get_root_datum(series, rank, "adjoint"))
    for r in range(1, alg.h):
        assert p_minus_bijective(alg, r)


def test_decomposition_small():
    for series, rank in (("A", 2), ("C", 2), ("G", 2)):
        rd = get_root_datum(series, rank, "adjoint")
        alg = build_algebra(rd)
        for mu in minuscule_coweights(rd):
            for r in range(1, alg.h):
                assert decomposition_check(alg, mu, r)


def test_u_mu_piece_trivial_mu():
    rd = get_root_datum("A", 2, "sc")
    alg = build_algebra(rd)
    mu = Coweight((0, 0))
    # for mu = 0, u_mu = n^- so the piece at r collects heights r-h (mod h)
    total = sum(u_mu_piece(alg, mu, r).dim for r in range(1, alg.h))
    assert total == len(rd.pos_roots)


def test_wp_trivial_mu_identity():
    alg = build_algebra(get_root_datum("A", 2, "sc"))
    M = wP_representative(alg, Coweight((0, 0)))
    assert M == identity(alg.dim, alg.field(1))


def test_wp_conjugates_a_r():
    rd = get_root_datum("A", 2, "adjoint")
    alg = build_algebra(rd)
    mu = next(m for m in minuscule_coweights(rd) if any(m.coords))
    M = wP_representative(alg, mu)
    for v in a_subspace(alg, 2).basis:
        w = mat_vec(M, v)
        assert any(w)


def test_nilpotent_exp_log_roundtrip():
    F = GF(11)
    for datum in (get_root_datum("GL", 3, "gl"), get_root_datum("A", 2, "sc")):
        alg = build_algebra(datum, F)
        rng = random.Random(11)
        for _ in range(20):
            x = alg.zero()
            for a in alg.basis_roots:
                if alg.rd.height(a) > 0:
                    x[alg.root_index[a]] = F(rng.randrange(11))
            u = nilpotent_exp(alg, x)
            assert nilpotent_log(alg, u) == x


def test_relevance_linear():
    for series, rank in (("A", 3), ("B", 2), ("D", 4)):
        alg = build_algebra(get_root_datum(series, rank, "adjoint"))
        for r in range(2, (alg.h + 1) // 2 + 1):
            assert relevance_linear_kernel(alg, r)


def test_relevance_quadratic_gl2():
    alg = build_algebra(get_root_datum("GL", 2, "gl"), GF(5))
    sols = relevance_quadratic_bruteforce(alg)
    assert len(sols) == 1  # only e = 0


def test_relevance_quadratic_sp4():
    alg = build_algebra(get_root_datum("C", 2, "sc"), GF(5))
    sols = relevance_quadratic_bruteforce(alg)
    assert all(not any(c.v for c in s) for s in sols)
    assert len(sols) == 1


def test_s1_graph_sl2():
    alg = build_algebra(get_root_datum("A", 1, "sc"), GF(5))
    graph = s1_graph(alg)
    assert graph.phi_s == [(-1,)]
    assert len(graph.lambda_names) == 1
    assert s1_graph_check(alg, graph, random.Random(1), samples=50)


def test_s1_graph_gl4():
    alg = build_algebra(get_root_datum("GL", 4, "gl"), GF(7))
    graph = s1_graph(alg)
    assert len(graph.phi_s) == len(graph.lambda_names) == 2
    assert s1_graph_check(alg, graph, random.Random(2), samples=50)


def test_s1_graph_d4_doubled_slot():
    # D4 has two exponents equal to h/2 = 3, so two slots at that depth
    alg = build_algebra(get_root_datum("D", 4, "adjoint"), GF(7))
    graph = s1_graph(alg)
    depth3 = [b for b in graph.phi_s if alg.rd.height(b) == 3 - alg.h]
    assert len(depth3) == 2
    assert s1_graph_check(alg, graph, random.Random(4), samples=25)


def test_x_minus1_components():
    alg = build_algebra(get_root_datum("A", 2, "sc"))
    x = x_minus1(alg)
    assert x[alg.root_index[alg.rd.theta]] == QQ(1)
    nz = [alg.height_of_index(i) for i, c in enumerate(x) if c]
    assert sorted(nz) == [-1, -1, 2]
