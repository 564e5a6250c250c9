"""Wheel-condition checks and the level-one vertex-operator extremal component.

On the locus t^(N+1) p = 1 (the k = N, r = 2 specialization) an admissible
E_mu vanishes on every chain z_{i_1} = t^{-1} z_{i_2} = .. = t^{-N} z_{i_{N+1}},
and the extremal component of the vertex-operator matrix element has the
closed product form

    F_delta^{(ij)} = prod_{a <= d_0+..+d_{j-1}} z_a^{-1}
                     * prod_{a < b, delta_a = delta_b} (z_a - q^2 z_b),

with q = -1/s.  checking the two against each other (they are equal on the
nose, both being monic at z^mu) reproduces the level-one matrix element up to
the scalar factors that cancel from the polynomial form.
"""

from __future__ import annotations

from itertools import combinations

from .errors import ConstraintViolation
from .combinat import vertex_data
from .laurent import LaurentPoly
from .macdonald import specialize_e
from .scalars import SpecField


def wheel_field(N):
    """The coefficient field of the wheel locus t^(N+1) p = 1."""
    return SpecField(N, 2)


def wheel_check(f, N):
    """Substitute every increasing chain of length N+1 and report vanishing.

    The coefficients of f must live on the locus t^(N+1) p = 1, i.e. over
    SpecField(k, r) with (r-1)(N+1) = k+1.
    """
    n = f.n
    if N + 1 > n:
        raise ConstraintViolation(f"wheel chains need N+1 <= n, got N={N}, n={n}")
    field = f.field
    if not field.is_specialized or (field.r - 1) * (N + 1) != field.k + 1:
        raise ConstraintViolation(
            f"wheel check needs coefficients on t^{N + 1} p = 1; field is {field.describe()}"
        )
    checks = []
    for chain in combinations(range(1, n + 1), N + 1):
        ok = f.substitute_chain(chain).is_zero()
        checks.append(
            {"condition": "wheel", "indices": {"chain": list(chain)}, "status": "pass" if ok else "fail"}
        )
    return checks


def vertex_extremal(i, j, n, N):
    """The product-form extremal component F_delta^{(ij)} over SpecField(N, 2)."""
    vd = vertex_data(i, j, n, N)
    field = wheel_field(N)
    q2 = field.q_power("-", 2)
    out = LaurentPoly.one(field, n)
    prefix = sum(vd.d[:j])
    for a in range(1, prefix + 1):
        out = out.times_var(a, -1)
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            if vd.delta[a - 1] == vd.delta[b - 1]:
                za = LaurentPoly.variable(field, n, a)
                zb = LaurentPoly.variable(field, n, b)
                out = out * (za - zb * q2)
    return out


def check_vertex_equality(i, j, n, N):
    """Exact comparison of E_mu at t^(N+1) p = 1 with the product formula.

    Returns report entries; the 'vertex-equality' entry is the headline check.
    """
    vd = vertex_data(i, j, n, N)
    E = specialize_e(vd.mu, N, 2)
    F = vertex_extremal(i, j, n, N)
    ok = E.poly == F
    checks = [
        {
            "condition": "vertex-equality",
            "indices": {"i": i, "j": j, "n": n, "N": N, "mu": list(vd.mu)},
            "status": "pass" if ok else "fail",
        }
    ]
    if N + 1 <= n:
        checks.extend(wheel_check(E.poly, N))
        checks.extend(wheel_check(F, N))
    return checks


def vertex_exponent_monomials(i, j, n, N):
    """The predicted family exponents c_eps = (-1)^{n-1} q^{A_eps} with

    A_eps = n - 2N - 2j + 2 eps - [eps < i] - [eps < j] + (i - j + n)/N,

    returned as field elements of SpecField(N, 2)."""
    field = wheel_field(N)
    out = []
    for eps in range(N):
        a = n - 2 * N - 2 * j + 2 * eps - (1 if eps < i else 0) - (1 if eps < j else 0)
        a += (i - j + n) // N
        c = field.q_power("-", a)
        if (n - 1) % 2 == 1:
            c = -c
        out.append(c)
    return out
