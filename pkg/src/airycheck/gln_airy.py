"""Explicit GL_n (n even) machinery: Z_r, the section, the character chi.

The abelianization S(1)/S(2+n) is modelled by vectors x = (x_1, ..., x_{1+n})
standing for Id + sum x_r Z_r, where Z_r is the loop-group incarnation of the
cyclic shift power E_1^r and Z_i Z_j = Z_{i+j} (zero past n+1).  All scalars
live in a caller-supplied field context (GF(p) or FqField(p, e)).
"""

from __future__ import annotations

from dataclasses import dataclass

from .loopmodel import GLnModel, phi_eval


def _require_even(n: int):
    if n < 2 or n % 2 != 0:
        raise ValueError(
            "only even n is supported: the odd case changes signs that "
            "are not pinned down here"
        )


def _require_char(field, n: int):
    p = field.p
    if p <= n + 1:
        raise ValueError(f"need p > n + 1 = {n + 1}, got p = {p}")


@dataclass(frozen=True)
class CharacterParams:
    n: int
    field: object
    lam: tuple  # (lambda_1, ..., lambda_{n/2})

    def __post_init__(self):
        _require_even(self.n)
        _require_char(self.field, self.n)
        if len(self.lam) != self.n // 2:
            raise ValueError("lambda vector must have length n/2")


def make_params(n: int, field, lam) -> CharacterParams:
    return CharacterParams(n, field, tuple(field(x) for x in lam))


# ---------------------------------------------------------------------------
# E_1 and the Z_r in the loop model.

def e1_matrix(n: int, field):
    """The cyclic shift sum E_{i,i+1} + E_{n,1}; satisfies E_1^n = Id."""
    if n < 2:
        raise ValueError("n >= 2 required")
    m = [[field(0)] * n for _ in range(n)]
    for i in range(n - 1):
        m[i][i + 1] = field(1)
    m[n - 1][0] = field(1)
    return m


def z_element(model: GLnModel, r: int):
    """Z_r as a truncated series: E_1^r split by height, with the
    height-(r mod n) part at t^floor(r/n) and the wrapped part one higher."""
    n = model.n
    if not 1 <= r <= n + 1:
        raise ValueError("r out of range")
    from .linalg import mat_mul

    e1 = e1_matrix(n, model.field)
    er = e1
    for _ in range(r - 1):
        er = mat_mul(er, e1)
    out = model.zero_series()
    for i in range(n):
        for j in range(n):
            if er[i][j]:
                # entry height j - i is congruent to r mod n
                lvl, rem = divmod(r - (j - i), n)
                assert rem == 0
                out[lvl][i][j] = er[i][j]
    return out


def phi_z_values(model: GLnModel):
    """phi(Z_r) for r = 1..n+1; only r = n+1 pairs nontrivially (value n)."""
    alg = model.alg
    vals = []
    for r in range(1, model.n + 2):
        series = z_element(model, r)
        Y = [alg.from_matrix(series[i]) for i in range(model.N)]
        vals.append(phi_eval(alg, Y))
    return vals


# ---------------------------------------------------------------------------
# The section algebra F[Z]/(Z^{n+2}).

def _trunc_mul(n, field, a, b):
    """Multiply two x-vectors of Z-coefficients (index r-1 <-> Z_r)."""
    out = [field(0)] * (n + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if i + j + 2 <= n + 1 and y:
                out[i + j + 1] = out[i + j + 1] + x * y
    return out


def section_mul(n, field, a, b):
    """Group law on Id + sum x_r Z_r vectors."""
    out = [x + y for x, y in zip(a, b)]
    prod = _trunc_mul(n, field, a, b)
    return [x + y for x, y in zip(out, prod)]


def exp_section(n, field, y):
    """Id + sum_{r=1}^{1+n} X^r / r! for X = sum y_r Z_r."""
    _require_char(field, n)
    out = [field(0)] * (n + 1)
    power = list(y)
    fact = field(1)
    for r in range(1, n + 2):
        fact = fact * r if r > 1 else fact
        inv = field(1) / fact
        for i, c in enumerate(power):
            out[i] = out[i] + inv * c
        power = _trunc_mul(n, field, power, y)
    return out


def log_section(n, field, x):
    """sum_{r=1}^{1+n} (-1)^{r+1} X^r / r for X = H - Id."""
    _require_char(field, n)
    out = [field(0)] * (n + 1)
    power = list(x)
    for r in range(1, n + 2):
        coeff = field(1) / field(r) if r % 2 == 1 else -(field(1) / field(r))
        for i, c in enumerate(power):
            out[i] = out[i] + coeff * c
        power = _trunc_mul(n, field, power, x)
    return out


# ---------------------------------------------------------------------------
# The character chi and the Hecke-kernel maps.

def chi_eval(params: CharacterParams, x):
    """chi(Id + sum x_r Z_r) = sum_{r<=n/2} lambda_r y_r + n y_{1+n}."""
    n, field = params.n, params.field
    y = log_section(n, field, x)
    acc = field(0)
    for r in range(1, n // 2 + 1):
        acc = acc + params.lam[r - 1] * y[r - 1]
    return acc + field(n) * y[n]


def _chi_geo_coeffs(params: CharacterParams):
    """Coefficient vector of sum (lambda_r/r) m^r + (n/(1+n)) m^{1+n}."""
    n, field = params.n, params.field
    coeffs = [field(0)] * (n + 2)
    for r in range(1, n // 2 + 1):
        coeffs[r] = params.lam[r - 1] / field(r)
    coeffs[n + 1] = field(n) / field(n + 1)
    return coeffs


_chi_geo_cache = {}


def chi_geometric(params: CharacterParams, m1):
    """Closed form sum (lambda_r/r) m1^r + (n/(1+n)) m1^{1+n}."""
    field = params.field
    m1 = field(m1) if isinstance(m1, int) else m1
    cached = _chi_geo_cache.get(params)
    if cached is None:
        cached = _chi_geo_cache[params] = (_chi_geo_coeffs(params), {})
    coeffs, values = cached
    v = values.get(m1)
    if v is None:
        v = values[m1] = poly_eval(field, coeffs, m1)
    return v


def geometric_section(params: CharacterParams, m1):
    """Id + sum_{r=1}^{n/2} m1^r Z_r, the element chi_geometric evaluates."""
    n, field = params.n, params.field
    m1 = field(m1) if isinstance(m1, int) else m1
    x = [field(0)] * (n + 1)
    for r in range(1, n // 2 + 1):
        x[r - 1] = m1 ** r
    return x


def hecke_p2(n: int, field, m):
    """p_2(m_1, ..., m_{1+n/2}) = -sum_{r=2}^{1+n/2} m_r m_1^{n/2-r+1}."""
    _require_even(n)
    if len(m) != 1 + n // 2:
        raise ValueError("m must have length 1 + n/2")
    powers = [field(1)]
    for _ in range(n // 2 - 1):
        powers.append(powers[-1] * m[0])
    acc = field(0)
    for r in range(2, n // 2 + 2):
        acc = acc - m[r - 1] * powers[n // 2 - r + 1]
    return acc


def hecke_p1(params: CharacterParams, m):
    """p_1(m) = chi_geometric(m_1) - m_1^{n+1} - sum m_r m_1^{n/2-r+2}."""
    n, field = params.n, params.field
    if len(m) != 1 + n // 2:
        raise ValueError("m must have length 1 + n/2")
    powers = [field(1)]
    for _ in range(n + 1):
        powers.append(powers[-1] * m[0])
    acc = chi_geometric(params, m[0]) - powers[n + 1]
    for r in range(2, n // 2 + 2):
        acc = acc - m[r - 1] * powers[n // 2 - r + 2]
    return acc


def f_poly(params: CharacterParams):
    """Coefficients of f(m) = -m^{n+1}/(n+1) + sum (lambda_r/r) m^r,
    index i <-> m^i; degree exactly n+1."""
    n, field = params.n, params.field
    coeffs = [field(0)] * (n + 2)
    for r in range(1, n // 2 + 1):
        coeffs[r] = params.lam[r - 1] / field(r)
    coeffs[n + 1] = -(field(1) / field(n + 1))
    assert coeffs[n + 1]
    return coeffs


def poly_eval(field, coeffs, x):
    acc = field(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
