"""Chevalley-basis Lie algebras with exact structure constants.

Basis order: E_alpha for the positive roots (height/lex order), then E_{-alpha}
in the matching order, then a Cartan basis (simple coroots; for GL_n the
diagonal matrix units).  Structure constants are integers; scalars live in Q
or F_p with p > h.

Signs are fixed by the extraspecial-pair convention on the height/lex root
order and propagated to the remaining constants through the Jacobi and
zero-sum-triple relations; the Jacobi identity is then checkable on all basis
triples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import GF
from .linalg import identity, in_span, mat_mul, mat_vec, nullspace, rank, rref, solve
from .rootdata import (
    Coweight,
    RootDatum,
    coxeter_number,
    exponents,
    u_mu_roots,
    weyl_wP,
)


class RationalField:
    """Field context for Q, mirroring the GF(p) interface."""

    p = None

    def __call__(self, v):
        if isinstance(v, Fraction):
            return v
        return Fraction(v)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vneg(a):
    return tuple(-x for x in a)


@lru_cache(maxsize=None)
def structure_constants(rd: RootDatum):
    """All N_{a,b} for root pairs with a+b a root, as a dict.

    Seeds the extraspecial pairs with +(p+1) and closes under antisymmetry,
    negation, the zero-sum coroot relation and the Jacobi relation.
    """
    roots = list(rd.roots)
    rs = set(roots)
    coroot = {a: rd.coroot_of(a) for a in roots}
    N = {}

    def put(a, b, v):
        for key, val in (((a, b), v), ((b, a), -v)):
            old = N.get(key)
            if old is None:
                N[key] = val
            elif old != val:
                raise AssertionError(f"inconsistent constant at {key}")

    for gamma in rd.pos_roots:
        if sum(gamma) < 2:
            continue
        alpha = next(a for a in rd.pos_roots if _vadd(gamma, _vneg(a)) in rs
                     and sum(_vadd(gamma, _vneg(a))) > 0)
        beta = _vadd(gamma, _vneg(alpha))
        p = 0
        cur = beta
        while True:
            cur = _vadd(cur, _vneg(alpha))
            if cur in rs:
                p += 1
            else:
                break
        put(alpha, beta, p + 1)

    pairs = [(a, b) for a in roots for b in roots if _vadd(a, b) in rs]
    total = len(pairs)
    while len(N) < total:
        progress = False
        for (a, b) in pairs:
            if (a, b) in N and (_vneg(a), _vneg(b)) not in N:
                put(_vneg(a), _vneg(b), -N[(a, b)])
                progress = True
        # zero-sum triples: N_{a,b} h_c + N_{b,c} h_a + N_{c,a} h_b = 0;
        # the coroot vectors of distinct slots are independent, so up to two
        # unknowns are still determined.
        for (a, b) in pairs:
            c = _vneg(_vadd(a, b))
            trip = [(a, b), (b, c), (c, a)]
            hs = [coroot[c], coroot[a], coroot[b]]
            unknown = [k for k in range(3) if trip[k] not in N]
            if not 1 <= len(unknown) <= 2:
                continue
            n = rd.n
            A = [[Fraction(hs[k][j]) for k in unknown] for j in range(n)]
            rhs = [
                Fraction(-sum(N[trip[k]] * hs[k][j] for k in range(3)
                              if k not in unknown))
                for j in range(n)
            ]
            if rank(A) < len(unknown):
                continue
            sol = solve(A, rhs)
            if sol is None or any(x.denominator != 1 for x in sol):
                raise AssertionError("zero-sum relation not solvable")
            for k, val in zip(unknown, sol):
                put(trip[k][0], trip[k][1], int(val))
            progress = True
        # Jacobi on root triples with all sums nonzero
        for (a, b) in pairs:
            ab = _vadd(a, b)
            for c in roots:
                if c == _vneg(ab) or c == _vneg(a) or c == _vneg(b):
                    continue
                s = _vadd(ab, c)
                if s not in rs:
                    continue
                terms = []  # ((pair1, pair2)) contributing N_p1 * N_p2
                for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                    xy = _vadd(x, y)
                    if xy in rs:
                        terms.append(((x, y), (xy, z)))
                unknowns = [
                    (ti, pi)
                    for ti, t in enumerate(terms)
                    for pi, pr in enumerate(t)
                    if pr not in N
                ]
                if len(unknowns) != 1:
                    continue
                ti, pi = unknowns[0]
                cof = N[terms[ti][1 - pi]]
                if cof == 0:
                    continue
                known = sum(
                    N[t[0]] * N[t[1]] for i, t in enumerate(terms) if i != ti
                )
                val, rem = divmod(-known, cof)
                if rem:
                    raise AssertionError("Jacobi relation not exactly solvable")
                pr = terms[ti][pi]
                put(pr[0], pr[1], val)
                progress = True
        if not progress:
            raise AssertionError("sign propagation stalled")
    return N


def _gl_root_interval(root):
    """(i, j) with root = e_i - e_j, 0-based, from simple-root coords."""
    support = [k for k, c in enumerate(root) if c]
    if all(root[k] > 0 for k in support):
        return support[0], support[-1] + 1
    return support[-1] + 1, support[0]


class ChevalleyAlgebra:
    def __init__(self, rd: RootDatum, field=QQ):
        h = coxeter_number(rd)
        if getattr(field, "p", None) is not None and field.p <= h:
            raise ValueError(f"need p > h = {h}")
        self.rd = rd
        self.field = field
        self.h = h
        self.npos = len(rd.pos_roots)
        self.ncartan = rd.rank
        self.dim = 2 * self.npos + self.ncartan
        self.basis_roots = list(rd.roots)  # index -> root, first 2*npos slots
        self.root_index = {a: i for i, a in enumerate(self.basis_roots)}
        self._cache = {}
        self._build_table()
        self._build_kappa()

    # -- construction ----------------------------------------------------

    def _build_table(self):
        rd = self.rd
        table = {}

        def add(i, j, k, c):
            if c:
                table.setdefault((i, j), {})[k] = table.get((i, j), {}).get(k, 0) + c

        if rd.series == "GL":
            ij = {a: _gl_root_interval(a) for a in self.basis_roots}
            for a, ia in enumerate(self.basis_roots):
                i1, j1 = ij[ia]
                for b, ib in enumerate(self.basis_roots):
                    i2, j2 = ij[ib]
                    s = _vadd(ia, ib)
                    if s in self.root_index:
                        k = self.root_index[s]
                        if j1 == i2:
                            add(a, b, k, 1)
                        if j2 == i1:
                            add(a, b, k, -1)
                    elif all(c == 0 for c in s):
                        add(a, b, self.cartan_index(i1), 1)
                        add(a, b, self.cartan_index(j1), -1)
            for i in range(rd.rank):
                hi = self.cartan_index(i)
                for b, ib in enumerate(self.basis_roots):
                    i2, j2 = ij[ib]
                    c = (1 if i == i2 else 0) - (1 if i == j2 else 0)
                    add(hi, b, b, c)
                    add(b, hi, b, -c)
        else:
            N = structure_constants(rd)
            for a, ia in enumerate(self.basis_roots):
                for b, ib in enumerate(self.basis_roots):
                    s = _vadd(ia, ib)
                    if s in self.root_index:
                        add(a, b, self.root_index[s], N[(ia, ib)])
                    elif all(c == 0 for c in s):
                        cr = rd.coroot_of(ia)
                        for i, ci in enumerate(cr):
                            add(a, b, self.cartan_index(i), ci)
            for i in range(rd.n):
                hi = self.cartan_index(i)
                ei = tuple(1 if j == i else 0 for j in range(rd.n))
                for b, ib in enumerate(self.basis_roots):
                    c = rd.root_pairing(ib, ei)
                    add(hi, b, b, c)
                    add(b, hi, b, -c)
        self.table = table

    def _build_kappa(self):
        rd = self.rd
        gram = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        if rd.series == "GL":
            # matrix trace form
            for i, a in enumerate(self.basis_roots):
                gram[i][self.root_index[_vneg(a)]] = Fraction(1)
            for i in range(rd.rank):
                gram[self.cartan_index(i)][self.cartan_index(i)] = Fraction(1)
        else:
            # Killing form / 2h, from the sparse structure constants
            for i in range(self.dim):
                for j in range(i, self.dim):
                    acc = 0
                    for (x, k), row in self.table.items():
                        if x != i:
                            continue
                        for l, c in row.items():
                            c2 = self.table.get((j, l), {}).get(k, 0)
                            acc += c * c2
                    gram[i][j] = gram[j][i] = Fraction(acc, 2 * self.h)
        self.kappa_gram = gram

    # -- basic vectors ----------------------------------------------------

    def cartan_index(self, i):
        return 2 * self.npos + i

    def zero(self):
        z = self.field(0)
        return [z] * self.dim

    def E(self, root):
        v = self.zero()
        v[self.root_index[tuple(root)]] = self.field(1)
        return v

    def coerce(self, vec):
        return [self.field(x) if not self._is_scalar(x) else x for x in vec]

    def _is_scalar(self, x):
        return isinstance(x, type(self.field(0)))

    # -- operations --------------------------------------------------------

    def bracket(self, x, y):
        out = self.zero()
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                row = self.table.get((i, j))
                if row:
                    prod = xi * yj
                    for k, c in row.items():
                        out[k] = out[k] + prod * c
        return out

    def ad(self, x):
        """Matrix of ad_x acting on coordinate columns."""
        cols = []
        for j in range(self.dim):
            col = self.zero()
            for i, xi in enumerate(x):
                if not xi:
                    continue
                row = self.table.get((i, j))
                if row:
                    for k, c in row.items():
                        col[k] = col[k] + xi * c
            cols.append(col)
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def kappa(self, x, y):
        acc = self.field(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, g in enumerate(self.kappa_gram[i]):
                if g and y[j]:
                    acc = acc + xi * y[j] * g
        return acc

    def height_of_index(self, i):
        if i >= 2 * self.npos:
            return 0
        return self.rd.height(self.basis_roots[i])

    def check_jacobi(self):
        """Jacobi identity on all basis triples (exhaustive)."""
        basis = [self.E(a) for a in self.basis_roots]
        for i in range(self.ncartan):
            v = self.zero()
            v[self.cartan_index(i)] = self.field(1)
            basis.append(v)
        for x in basis:
            for y in basis:
                xy = self.bracket(x, y)
                for z in basis:
                    lhs = self.bracket(xy, z)
                    t2 = self.bracket(self.bracket(y, z), x)
                    t3 = self.bracket(self.bracket(z, x), y)
                    if any(a + b + c for a, b, c in zip(lhs, t2, t3)):
                        return False
        return True

    def check_kappa_invariance(self):
        basis = identity(self.dim, self.field(1))
        for x in basis:
            for y in basis:
                xy = self.bracket(x, y)
                for z in basis:
                    if self.kappa(xy, z) != self.kappa(x, self.bracket(y, z)):
                        return False
        return True

    # -- GL matrix model ---------------------------------------------------

    def matrix_of(self, x):
        assert self.rd.series == "GL"
        n = self.rd.rank
        m = [[self.field(0)] * n for _ in range(n)]
        for idx, c in enumerate(x):
            if not c:
                continue
            if idx < 2 * self.npos:
                i, j = _gl_root_interval(self.basis_roots[idx])
                m[i][j] = m[i][j] + c
            else:
                i = idx - 2 * self.npos
                m[i][i] = m[i][i] + c
        return m

    def from_matrix(self, m):
        assert self.rd.series == "GL"
        x = self.zero()
        for idx, a in enumerate(self.basis_roots):
            i, j = _gl_root_interval(a)
            x[idx] = self.field(m[i][j])
        for i in range(self.rd.rank):
            x[self.cartan_index(i)] = self.field(m[i][i])
        return x


@lru_cache(maxsize=None)
def build_algebra(rd: RootDatum, field=QQ) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(rd, field)


@dataclass
class GradedSubspace:
    r: int
    basis: list  # list of coordinate vectors

    @property
    def dim(self):
        return len(self.basis)


# ---------------------------------------------------------------------------
# Principal sl2 and gradings.

def principal_sl2(alg: ChevalleyAlgebra):
    """(N^-, H, N^+) with H = 2 rho-check, [N^+, N^-] = H, [H, N^pm] = pm 2."""
    rd = alg.rd
    n = rd.n
    # c solving sum_i c_i <alpha_j, coroot_i> = 2 for all j
    A = [[Fraction(rd.cartan[i][j]) for i in range(n)] for j in range(n)]
    c = solve(A, [Fraction(2)] * n)
    assert c is not None and all(x.denominator == 1 for x in c)
    c = [int(x) for x in c]
    nminus = alg.zero()
    nplus = alg.zero()
    H = alg.zero()
    for i in range(n):
        simple = tuple(1 if j == i else 0 for j in range(n))
        nminus[alg.root_index[_vneg(simple)]] = alg.field(1)
        nplus[alg.root_index[simple]] = alg.field(c[i])
    if rd.series == "GL":
        prev = 0
        for i in range(rd.rank):
            ci = c[i] if i < n else 0
            H[alg.cartan_index(i)] = alg.field(ci - prev)
            prev = ci
    else:
        for i in range(n):
            H[alg.cartan_index(i)] = alg.field(c[i])
    hm = alg.bracket(nplus, nminus)
    assert hm == H, "[N+, N-] != 2 rho-check"
    two = alg.field(2)
    assert alg.bracket(H, nplus) == [two * x for x in nplus]
    assert alg.bracket(H, nminus) == [-(two * x) for x in nminus]
    return nminus, H, nplus


def height_piece(alg: ChevalleyAlgebra, r: int) -> GradedSubspace:
    """g(r): root spaces of height r; the Cartan when r = 0."""
    h = alg.h
    if not (1 - h <= r <= h - 1):
        raise ValueError("height out of range")
    basis = []
    if r == 0:
        for i in range(alg.ncartan):
            v = alg.zero()
            v[alg.cartan_index(i)] = alg.field(1)
            basis.append(v)
    else:
        for a in alg.basis_roots:
            if alg.rd.height(a) == r:
                basis.append(alg.E(a))
    return GradedSubspace(r, basis)


def grading_piece(alg: ChevalleyAlgebra, r: int) -> GradedSubspace:
    """Cyclic piece g_r = g(r) + g(r-h); g_0 = g(0) = t."""
    h = alg.h
    if not (0 <= r <= h - 1):
        raise ValueError("cyclic degree out of range")
    basis = list(height_piece(alg, r).basis)
    if r != 0:
        basis += height_piece(alg, r - h).basis
    return GradedSubspace(r, basis)


def x_minus1(alg: ChevalleyAlgebra):
    nminus, _, _ = principal_sl2(alg)
    x = list(nminus)
    i = alg.root_index[alg.rd.theta]
    x[i] = x[i] + alg.field(1)
    return x


def centralizer_z(alg: ChevalleyAlgebra):
    """z_r = ker(ad_{X_{-1}}) cap g_r for r = 0..h-1, as graded pieces."""
    ad = alg.ad(x_minus1(alg))
    out = []
    for r in range(alg.h):
        piece = grading_piece(alg, r).basis
        if not piece:
            out.append(GradedSubspace(r, []))
            continue
        rows = [mat_vec(ad, v) for v in piece]
        # kernel of the coefficient-space map c -> sum c_i [X_{-1}, v_i]
        cols = [[row[i] for row in rows] for i in range(alg.dim)]
        ker = nullspace(cols, alg.field(1))
        basis = []
        for coeffs in ker:
            v = alg.zero()
            for c, b in zip(coeffs, piece):
                for i, bi in enumerate(b):
                    v[i] = v[i] + c * bi
            basis.append(v)
        out.append(GradedSubspace(r, basis))
    return out


def a_subspace(alg: ChevalleyAlgebra, r: int, mu: Coweight = None) -> GradedSubspace:
    """a_r = [g(r-1-h), N^+]; zero at r = 1 since g(-h) = 0.

    With mu, returns a_r^mu = Ad_{w_P}(a_r) through the normalized
    representative.  (The space a itself only sums a_r over r <= ceil(h/2).)
    """
    h = alg.h
    if not 1 <= r <= h - 1:
        raise ValueError("r out of range")
    _, _, nplus = principal_sl2(alg)
    basis = []
    if r >= 2:
        src = height_piece(alg, r - 1 - h).basis
        rows = [alg.bracket(v, nplus) for v in src]
        red, pivots = rref(rows)
        basis = [red[i] for i in range(len(pivots))]
    if mu is not None and basis:
        M = wP_representative(alg, mu)
        basis = [mat_vec(M, v) for v in basis]
    return GradedSubspace(r, basis)


def p_minus_project(alg: ChevalleyAlgebra, v):
    """Component of v in negative heights."""
    out = alg.zero()
    for i, c in enumerate(v):
        if c and alg.height_of_index(i) < 0:
            out[i] = c
    return out


def p_minus_bijective(alg: ChevalleyAlgebra, r: int) -> bool:
    """p_-: z_r -> ker(ad_{N^-}|g(r-h)) is an isomorphism."""
    if not (1 <= r <= alg.h - 1):
        raise ValueError("r out of range")
    zr = centralizer_z(alg)[r]
    nminus, _, _ = principal_sl2(alg)
    admat = alg.ad(nminus)
    tgt_basis = height_piece(alg, r - alg.h).basis
    # kernel of ad_{N^-} restricted to g(r-h)
    rows = [mat_vec(admat, v) for v in tgt_basis]
    ker_dim = len(tgt_basis) - (rank(rows) if rows else 0)
    proj = [p_minus_project(alg, v) for v in zr.basis]
    proj_rank = rank(proj) if proj else 0
    if proj_rank != len(zr.basis) or proj_rank != ker_dim:
        return False
    for v in proj:
        img = mat_vec(admat, v)
        if any(img):
            return False
    return True


def u_mu_piece(alg: ChevalleyAlgebra, mu: Coweight, r: int) -> GradedSubspace:
    phi_u, _ = u_mu_roots(alg.rd, mu)
    basis = [alg.E(a) for a in phi_u if alg.rd.height(a) % alg.h == r % alg.h]
    return GradedSubspace(r, basis)


def decomposition_check(alg: ChevalleyAlgebra, mu: Coweight, r: int) -> bool:
    """g_r = z_r + a_r^mu + u_{mu,r}, checked by dimension and rank."""
    if not (1 <= r <= alg.h - 1):
        raise ValueError("r out of range")
    zr = centralizer_z(alg)[r]
    ar = a_subspace(alg, r, mu)
    ur = u_mu_piece(alg, mu, r)
    gr = grading_piece(alg, r)
    combined = zr.basis + ar.basis + ur.basis
    if zr.dim + ar.dim + ur.dim != gr.dim:
        return False
    return rank(combined) == gr.dim if combined else gr.dim == 0


# ---------------------------------------------------------------------------
# Exponentials and the w_P representative.

def _exp_matrix(M, one, max_pow=None):
    """exp of a nilpotent matrix, exact series."""
    n = len(M)
    out = identity(n, one)
    term = identity(n, one)
    k = 0
    while True:
        k += 1
        if max_pow is not None and k > max_pow:
            break
        term = mat_mul(term, M)
        if not any(any(row) for row in term):
            break
        if k > n:
            raise ValueError("matrix is not nilpotent")
        fk = one * 0 + 1
        for i in range(2, k + 1):
            fk = fk * i
        inv = one / fk
        out = [
            [o + inv * t for o, t in zip(orow, trow)]
            for orow, trow in zip(out, term)
        ]
    return out


def _log_matrix(M, one):
    """log of a unipotent matrix, exact series."""
    n = len(M)
    X = [[m - (one if i == j else one * 0) for j, m in enumerate(row)]
         for i, row in enumerate(M)]
    out = [[one * 0] * n for _ in range(n)]
    term = identity(n, one)
    k = 0
    while True:
        k += 1
        term = mat_mul(term, X)
        if not any(any(row) for row in term):
            break
        if k > n:
            raise ValueError("matrix is not unipotent")
        coeff = one / k if k % 2 else -(one / k)
        out = [
            [o + coeff * t for o, t in zip(orow, trow)]
            for orow, trow in zip(out, term)
        ]
    return out


def nilpotent_exp(alg: ChevalleyAlgebra, x, band=None):
    """Group exponential: n x n matrix for GL, Ad-matrix otherwise."""
    if alg.rd.series == "GL":
        return _exp_matrix(alg.matrix_of(x), alg.field(1), band)
    return _exp_matrix(alg.ad(x), alg.field(1), band)


def nilpotent_log(alg: ChevalleyAlgebra, u, band=None):
    """Inverse of nilpotent_exp on unipotent elements."""
    if alg.rd.series == "GL":
        return alg.from_matrix(_log_matrix(u, alg.field(1)))
    ad = _log_matrix(u, alg.field(1))
    # recover the element from its ad-matrix on the root/Cartan basis
    rows = []
    rhs = []
    basis = identity(alg.dim, alg.field(1))
    for j in range(alg.dim):
        col = alg.zero()
        for i in range(alg.dim):
            col[i] = ad[i][j]
        rhs.append(col)
    # solve [x, b_j] = col_j for x: linear in x
    A = []
    bvec = []
    for j in range(alg.dim):
        for i in range(alg.dim):
            A.append([alg.table.get((k, j), {}).get(i, 0) * alg.field(1)
                      for k in range(alg.dim)])
            bvec.append(rhs[j][i])
    x = solve(A, bvec)
    if x is None:
        raise ValueError("not in the image of ad")
    return x


def _simple_reflection_ad(alg: ChevalleyAlgebra, i: int):
    """Ad lift exp(ad e) exp(-ad f) exp(ad e) of s_i, as sparse columns."""
    key = ("refl", i)
    if key not in alg._cache:
        rd = alg.rd
        one = alg.field(1)
        simple = tuple(1 if j == i else 0 for j in range(rd.n))
        e = alg.E(simple)
        f = alg.E(_vneg(simple))
        ni = mat_mul(
            mat_mul(_exp_matrix(alg.ad(e), one), _exp_matrix(alg.ad([-c for c in f]), one)),
            _exp_matrix(alg.ad(e), one),
        )
        cols = [
            [(k, ni[k][j]) for k in range(alg.dim) if ni[k][j]]
            for j in range(alg.dim)
        ]
        alg._cache[key] = cols
    return alg._cache[key]


def wP_representative(alg: ChevalleyAlgebra, mu: Coweight):
    """Ad-matrix of a lift of w_P, torus-corrected to fix X_{-1} exactly."""
    key = ("wP", mu.coords)
    if key in alg._cache:
        return alg._cache[key]
    rd = alg.rd
    wp = weyl_wP(rd, mu)
    one = alg.field(1)
    zero = alg.field(0)
    M = identity(alg.dim, one)
    for i in wp.word:
        cols = _simple_reflection_ad(alg, i)
        out = [[zero] * alg.dim for _ in range(alg.dim)]
        for j in range(alg.dim):
            for k, c in cols[j]:
                col = out
                for r in range(alg.dim):
                    v = M[r][k]
                    if v:
                        col[r][j] = col[r][j] + v * c
        M = out
    x = x_minus1(alg)
    v = mat_vec(M, x)
    # v is supported on -Delta and theta; solve the torus correction
    support = {alg.basis_roots[i]: c for i, c in enumerate(v) if c}
    simples = [tuple(1 if j == i else 0 for j in range(rd.n)) for i in range(rd.n)]
    assert set(support) == {_vneg(s) for s in simples} | {rd.theta}
    xs = [support[_vneg(s)] for s in simples]  # alpha_i(t) = coeff at -alpha_i
    theta_t = one
    for xi, ci in zip(xs, rd.theta):
        for _ in range(ci):
            theta_t = theta_t * xi
    assert theta_t * support[rd.theta] == one, "torus correction infeasible"
    diag = []
    for i in range(alg.dim):
        if i < 2 * alg.npos:
            b = one
            for xi, ci in zip(xs, alg.basis_roots[i]):
                for _ in range(abs(ci)):
                    b = b * xi if ci > 0 else b / xi
            diag.append(b)
        else:
            diag.append(one)
    M = [[diag[i] * M[i][j] for j in range(alg.dim)] for i in range(alg.dim)]
    assert mat_vec(M, x) == x
    alg._cache[key] = M
    return M


# ---------------------------------------------------------------------------
# Relevance checks (linear and quadratic).

def relevance_linear_kernel(alg: ChevalleyAlgebra, r: int) -> bool:
    """{e in a_r : kappa([e, N^-], g(h+1-r)) = 0} is zero."""
    if not (2 <= r <= (alg.h + 1) // 2):
        raise ValueError("r out of range")
    ar = a_subspace(alg, r)
    if ar.dim == 0:
        return True
    nminus, _, _ = principal_sl2(alg)
    tgt = height_piece(alg, alg.h + 1 - r).basis
    rows = []
    for v in ar.basis:
        w = alg.bracket(v, nminus)
        rows.append([alg.kappa(w, b) for b in tgt])
    return rank(rows) == ar.dim


def relevance_quadratic_bruteforce(alg: ChevalleyAlgebra, mu: Coweight = None,
                                   budget: int = 10 ** 7):
    """All e in a(F_p) with kappa([e,N^-] + [e,[e,E_theta]]/2, u_{>=1+h/2}) = 0.

    The w_P-conjugated condition for nonzero minuscule mu reduces to the
    same equation, so the enumeration is mu-independent.
    """
    p = alg.field.p
    if p is None:
        raise ValueError("brute force needs a finite field")
    h = alg.h
    basis = []
    for r in range(2, (h + 1) // 2 + 1):
        basis.extend(a_subspace(alg, r).basis)
    if p ** len(basis) > budget:
        raise ValueError("search space exceeds budget")
    nminus, _, _ = principal_sl2(alg)
    etheta = alg.E(alg.rd.theta)
    cut = h // 2 + 1
    tgt = [alg.E(a) for a in alg.rd.pos_roots if alg.rd.height(a) >= cut]
    half = alg.field(1) / alg.field(2)
    sols = []
    coeffs = [alg.field(0)] * len(basis)

    def rec(i, e):
        if i == len(basis):
            w = alg.bracket(e, nminus)
            q = alg.bracket(e, alg.bracket(e, etheta))
            expr = [a + half * b for a, b in zip(w, q)]
            if all(not alg.kappa(expr, t) for t in tgt):
                sols.append(tuple(coeffs))
            return
        for c in range(p):
            coeffs[i] = alg.field(c)
            e2 = [a + coeffs[i] * b for a, b in zip(e, basis[i])]
            rec(i + 1, e2)

    rec(0, alg.zero())
    return sols


# ---------------------------------------------------------------------------
# The polynomial graph of p_-(S(1)).

@dataclass
class S1Graph:
    phi_s: list  # roots in Phi_S, aligned with var names x0, x1, ...
    var_names: list
    lambda_names: list
    p_minus: dict  # root -> MultiPoly in the lambda variables
    lambda_exprs: dict  # lambda name -> MultiPoly in the x variables
    graphs: dict  # root (not in Phi_S) -> MultiPoly in the x variables


def s1_graph(alg: ChevalleyAlgebra) -> S1Graph:
    """Graph description of p_-(S(1)) in I(1)/I(1+h/2).

    Computes p_-(exp(sum lambda_r v_r)) = proj_{<= -h/2} of
    sum_j (-1)^j/(j+1)! ad_{v+}^j (v-), picks Phi_S per the exponent recipe
    and inverts the triangular change of variables exactly.
    """
    from .arith import MultiPoly

    rd = alg.rd
    h = alg.h
    field = alg.field
    nminus, _, _ = principal_sl2(alg)
    admin = alg.ad(nminus)
    zs = centralizer_z(alg)

    # one slot per exponent <= h/2, doubled at h/2 in type D even rank
    slots = []  # (r, Y_r vector, v_r lift)
    for r in range(1, h // 2 + 1):
        tgt = height_piece(alg, r - h).basis
        if not tgt:
            continue
        rows = [mat_vec(admin, v) for v in tgt]
        cols = [[row[i] for row in rows] for i in range(alg.dim)]
        ker = nullspace(cols, field(1))
        if not ker:
            continue
        ys = []
        for coeffs in ker:
            y = alg.zero()
            for c, b in zip(coeffs, tgt):
                for i, bi in enumerate(b):
                    y[i] = y[i] + c * bi
            ys.append(y)
        assert len(ys) == len(zs[r].basis)
        for y in ys:
            # lift through p_-|z_r
            proj = [p_minus_project(alg, v) for v in zs[r].basis]
            cols = [[pv[i] for pv in proj] for i in range(alg.dim)]
            sol = solve(cols, y)
            assert sol is not None
            v = alg.zero()
            for c, b in zip(sol, zs[r].basis):
                for i, bi in enumerate(b):
                    v[i] = v[i] + c * bi
            slots.append((r, y, v))

    lam = [f"l{i}" for i in range(len(slots))]
    xs = [f"x{i}" for i in range(len(slots))]
    allvars = tuple(lam + xs)

    def mp_const(c):
        return MultiPoly.const(allvars, c)

    def mp_var(name):
        return MultiPoly.var(allvars, name, field(1))

    zero = MultiPoly(allvars)
    vminus = [zero] * alg.dim
    vplus = [zero] * alg.dim
    for name, (r, y, v) in zip(lam, slots):
        lv = mp_var(name)
        for i in range(alg.dim):
            if y[i]:
                vminus[i] = vminus[i] + lv * y[i]
            up = v[i] - y[i]
            if up:
                vplus[i] = vplus[i] + lv * up

    # Z = sum_j (-1)^j/(j+1)! ad_{v+}^j (v-)
    def bracket_poly(x, y):
        out = [zero] * alg.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                row = alg.table.get((i, j))
                if row:
                    prod = xi * yj
                    for k, c in row.items():
                        out[k] = out[k] + prod * c
        return out

    # components above height -h/2 can never come back down, so drop them
    def cut(vec):
        out = list(vec)
        for i in range(alg.dim):
            if out[i] and 2 * alg.height_of_index(i) > -h:
                out[i] = zero
        return out

    Z = [zero] * alg.dim
    term = cut(vminus)
    j = 0
    while any(term):
        fact = field(1)
        for i in range(2, j + 2):
            fact = fact * i
        if not fact:
            raise ValueError("BCH denominator not invertible")
        coeff = (field(1) if j % 2 == 0 else -field(1)) / fact
        Z = [z + t * coeff for z, t in zip(Z, term)]
        j += 1
        if j > h:
            break
        term = cut(bracket_poly(vplus, term))

    cut_roots = [a for a in rd.roots if 2 * rd.height(a) <= -h]
    p_minus = {a: Z[alg.root_index[a]] for a in cut_roots}

    # Phi_S: one beta_r per slot; invertible 2x2 block at a doubled exponent
    phi_s = []
    by_r = {}
    for idx, (r, y, v) in enumerate(slots):
        by_r.setdefault(r, []).append(idx)
    for r, idxs in sorted(by_r.items()):
        cands = [a for a in rd.roots if rd.height(a) == r - h]
        if len(idxs) == 1:
            y = slots[idxs[0]][1]
            beta = next(a for a in cands if y[alg.root_index[a]])
            phi_s.append((idxs[0], beta))
        else:
            assert len(idxs) == 2
            found = None
            for i1, b1 in enumerate(cands):
                for b2 in cands[i1 + 1:]:
                    m = [
                        [slots[k][1][alg.root_index[b]] for b in (b1, b2)]
                        for k in idxs
                    ]
                    if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
                        found = (b1, b2)
                        break
                if found:
                    break
            assert found, "no invertible coefficient pair"
            phi_s.append((idxs[0], found[0]))
            phi_s.append((idxs[1], found[1]))
    phi_s.sort(key=lambda t: t[0])
    phi_s_roots = [b for _, b in phi_s]

    # invert the triangular change of variables lambda_beta = f_beta(lambda)
    lam_exprs = {}
    for r, idxs in sorted(by_r.items()):
        if len(idxs) == 1:
            i = idxs[0]
            beta = phi_s_roots[i]
            f = p_minus[beta]
            c = f.coefficient(lam[i])
            assert c
            rest = f - mp_var(lam[i]) * c
            lam_exprs[lam[i]] = (mp_var(xs[i]) - rest.substitute(lam_exprs)) / c
        else:
            i1, i2 = idxs
            b1, b2 = phi_s_roots[i1], phi_s_roots[i2]
            f1, f2 = p_minus[b1], p_minus[b2]
            a11, a12 = f1.coefficient(lam[i1]), f1.coefficient(lam[i2])
            a21, a22 = f2.coefficient(lam[i1]), f2.coefficient(lam[i2])
            det = a11 * a22 - a12 * a21
            assert det
            g1 = (f1 - mp_var(lam[i1]) * a11 - mp_var(lam[i2]) * a12).substitute(lam_exprs)
            g2 = (f2 - mp_var(lam[i1]) * a21 - mp_var(lam[i2]) * a22).substitute(lam_exprs)
            r1 = mp_var(xs[i1]) - g1
            r2 = mp_var(xs[i2]) - g2
            lam_exprs[lam[i1]] = (r1 * a22 - r2 * a12) / det
            lam_exprs[lam[i2]] = (r2 * a11 - r1 * a21) / det

    graphs = {}
    for a in cut_roots:
        poly = p_minus[a].substitute(lam_exprs)
        if a in phi_s_roots:
            assert poly == mp_var(xs[phi_s_roots.index(a)]), "inversion failed"
        else:
            graphs[a] = poly
    return S1Graph(
        phi_s=phi_s_roots,
        var_names=xs,
        lambda_names=lam,
        p_minus=p_minus,
        lambda_exprs=lam_exprs,
        graphs=graphs,
    )


def s1_graph_check(alg: ChevalleyAlgebra, graph: S1Graph, rng, samples: int = 200) -> bool:
    """Random lambda-samples: the graph polynomials reproduce p_-(s)."""
    p = alg.field.p
    if p is None:
        raise ValueError("sampling needs a finite field")
    m = len(graph.lambda_names)
    for _ in range(samples):
        lam_vals = {n: alg.field(rng.randrange(p)) for n in graph.lambda_names}
        vals = {a: f.evaluate(lam_vals) for a, f in graph.p_minus.items()}
        xvals = {
            x: vals[beta] for x, beta in zip(graph.var_names, graph.phi_s)
        }
        for a, poly in graph.graphs.items():
            if poly.evaluate(xvals) != vals[a]:
                return False
        # the inverse change of variables recovers lambda
        for n in graph.lambda_names:
            if graph.lambda_exprs[n].evaluate(xvals) != lam_vals[n]:
                return False
    return True
