"""Sparse multivariate Laurent polynomials in z_1..z_n.

Terms are kept in a dict keyed by exponent vectors (tuples of ints, negative
entries allowed) with nonzero field scalars as values.  Every polynomial
carries the coefficient-field context it lives over (``scalars.GENERIC`` or a
``scalars.SpecField``); the Hecke-operator substitutions read the structural
constants s and p from it.

The deterministic term order used for serialization and printing is
lexicographic on exponent vectors, largest first.
"""

from __future__ import annotations

from .errors import DimensionMismatch, IndexOutOfRange, NotDivisible
from .scalars import GENERIC


class LaurentPoly:
    """Immutable sparse Laurent polynomial over a coefficient field."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field, n, terms):
        clean = {}
        for e, c in terms.items():
            if len(e) != n:
                raise DimensionMismatch(f"exponent {e} has length {len(e)}, expected {n}")
            if not c.is_zero():
                clean[tuple(e)] = c
        self.field = field
        self.n = n
        self.terms = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, {})

    @classmethod
    def one(cls, field, n):
        return cls(field, n, {(0,) * n: field.one()})

    @classmethod
    def monomial(cls, field, n, exps, coeff=None):
        c = field.one() if coeff is None else coeff
        return cls(field, n, {tuple(exps): c})

    @classmethod
    def variable(cls, field, n, i):
        """z_i (1-based)."""
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"variable index {i} not in 1..{n}")
        e = [0] * n
        e[i - 1] = 1
        return cls.monomial(field, n, e)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.field.zero())

    def _check_same(self, other):
        if self.n != other.n:
            raise DimensionMismatch(f"variable counts differ: {self.n} != {other.n}")
        if self.field != other.field:
            raise DimensionMismatch("operands live over different coefficient fields")

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        self._check_same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
        return self._raw(out)

    def __neg__(self):
        return self._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        self._check_same(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = -c if v is None else v - c
            if v.is_zero():
                out.pop(e, None)
            else:
                out[e] = v
        return self._raw(out)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            self._check_same(other)
            out = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    v = out.get(e)
                    v = c1 * c2 if v is None else v + c1 * c2
                    if v.is_zero():
                        out.pop(e, None)
                    else:
                        out[e] = v
            return self._raw(out)
        # scalar multiplication
        if other.is_zero():
            return LaurentPoly.zero(self.field, self.n)
        return self._raw({e: c * other for e, c in self.terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def _raw(self, terms):
        out = object.__new__(LaurentPoly)
        out.field = self.field
        out.n = self.n
        out.terms = terms
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.keys())))

    # -- variable substitutions ---------------------------------------------

    def swap_vars(self, i):
        """Exchange z_i and z_{i+1} (1-based i, 1 <= i <= n-1)."""
        if not 1 <= i <= self.n - 1:
            raise IndexOutOfRange(f"swap index {i} not in 1..{self.n - 1}")
        a = i - 1
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[a], f[a + 1] = f[a + 1], f[a]
            out[tuple(f)] = c
        return self._raw(out)

    def omega(self):
        """f(z_1,..,z_n) -> f(p z_n, z_1, .., z_{n-1}); z^m -> p^{m_1} z^{(m_2..m_n m_1)}."""
        out = {}
        p = self.field.p_power
        for e, c in self.terms.items():
            f = e[1:] + (e[0],)
            v = c * p(e[0])
            cur = out.get(f)
            v = v if cur is None else cur + v
            if v.is_zero():
                out.pop(f, None)
            else:
                out[f] = v
        return self._raw(out)

    def omega_inv(self):
        """Inverse of omega: z^m -> p^{-m_n} z^{(m_n m_1 .. m_{n-1})}."""
        out = {}
        p = self.field.p_power
        for e, c in self.terms.items():
            f = (e[-1],) + e[:-1]
            out[f] = c * p(-e[-1])
        return self._raw(out)

    def p_shift(self, i):
        """Substitute z_i -> p z_i: each term picks up p^{e_i}."""
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"variable index {i} not in 1..{self.n}")
        a = i - 1
        p = self.field.p_power
        return self._raw({e: c * p(e[a]) for e, c in self.terms.items()})

    def times_var(self, i, power=1):
        """Multiply by z_i^power."""
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"variable index {i} not in 1..{self.n}")
        a = i - 1
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[a] += power
            out[tuple(f)] = c
        return self._raw(out)

    def exact_divide_binomial(self, i, j, c):
        """Divide by (z_i - c z_j) exactly; NotDivisible on nonzero remainder.

        i and j are distinct 1-based indices, c a field scalar.
        """
        if not (1 <= i <= self.n and 1 <= j <= self.n):
            raise IndexOutOfRange(f"indices ({i}, {j}) not in 1..{self.n}")
        if i == j:
            raise IndexOutOfRange("binomial indices must be distinct")
        if self.is_zero():
            return self
        a, b = i - 1, j - 1
        lo = min(e[a] for e in self.terms)
        rem = dict(self.terms)
        quot = {}
        while rem:
            k = max(e[a] for e in rem)
            if k < lo:
                raise NotDivisible(f"not divisible by z_{i} - c*z_{j}")
            for e in [e for e in rem if e[a] == k]:
                co = rem.pop(e)
                qe = list(e)
                qe[a] = k - 1
                qe = tuple(qe)
                quot[qe] = co
                be = list(qe)
                be[b] += 1
                be = tuple(be)
                v = rem.get(be)
                v = co * c if v is None else v + co * c
                if v.is_zero():
                    rem.pop(be, None)
                else:
                    rem[be] = v
        return self._raw(quot)

    def substitute_chain(self, indices):
        """Substitute z_{i_a} := t^{a-1} w along an increasing chain.

        ``indices`` are distinct 1-based variable indices; the fresh variable w
        is stored in the slot of the smallest chained index, the other chained
        slots are forced to exponent 0, so the result still has n slots but
        n + 1 - len(indices) effective variables.
        """
        idx = list(indices)
        if len(set(idx)) != len(idx):
            raise IndexOutOfRange("chain indices must be distinct")
        for i in idx:
            if not 1 <= i <= self.n:
                raise IndexOutOfRange(f"chain index {i} not in 1..{self.n}")
        idx.sort()
        slot = idx[0] - 1
        t = self.field.t_power
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            wexp = 0
            texp = 0
            for a, i in enumerate(idx):
                wexp += e[i - 1]
                texp += a * e[i - 1]
                f[i - 1] = 0
            f[slot] = wexp
            f = tuple(f)
            v = c * t(texp)
            cur = out.get(f)
            v = v if cur is None else cur + v
            if v.is_zero():
                out.pop(f, None)
            else:
                out[f] = v
        return self._raw(out)

    # -- serialization -------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def to_json(self):
        return {
            "n": self.n,
            "terms": [{"exp": list(e), "coeff": c.text()} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data, field):
        terms = {}
        for t in data["terms"]:
            e = tuple(int(x) for x in t["exp"])
            if e in terms:
                raise ValueError(f"duplicate exponent {e}")
            terms[e] = field.parse_scalar(t["coeff"])
        return cls(field, int(data["n"]), terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"z{i + 1}^{x}" for i, x in enumerate(e) if x != 0)
            parts.append(f"({c.text()})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"


def binomial(field, n, i, j, ci=None, cj=None):
    """ci*z_i + cj*z_j as a LaurentPoly (defaults: z_i - z_j)."""
    ci = field.one() if ci is None else ci
    cj = -field.one() if cj is None else cj
    out = LaurentPoly.zero(field, n)
    out = out + LaurentPoly.variable(field, n, i) * ci
    out = out + LaurentPoly.variable(field, n, j) * cj
    return out


def random_poly(rng, field, n, nterms=3, max_exp=2, max_coeff=3):
    """Small random Laurent polynomial for seeded property suites."""
    terms = {}
    for _ in range(nterms):
        e = tuple(rng.randint(-max_exp, max_exp) for _ in range(n))
        c = 0
        while c == 0:
            c = rng.randint(-max_coeff, max_coeff)
        cur = terms.get(e)
        v = field.from_fraction(c) if cur is None else cur + field.from_fraction(c)
        if v.is_zero():
            terms.pop(e, None)
        else:
            terms[e] = v
    return LaurentPoly(field, n, terms)


GENERIC_FIELD = GENERIC
