"""Exact coefficient fields for the Hecke-operator pipeline.

Two fields appear:

* ``ParamScalar`` -- the field Q(s, p) of rational functions in two formal
  generators with rational coefficients.  Here ``s`` plays the role of the
  square root of the Hecke parameter (t = s^2 throughout), so every
  half-integer power of t that shows up in eigenvalue formulas is an honest
  integer power of s.  ``p`` is the difference step.

* ``SpecScalar`` -- the field Q(v) reached from Q(s, p) by the substitution
  s -> v^(r-1),  p -> v^(-2(k+1))        (k >= 1, r >= 2, gcd(k+1, r-1) = 1),

  which realises the locus t^(k+1) p^(r-1) = 1 as t = u^(r-1), p = u^(-(k+1))
  with u = v^2; working with v instead of u keeps s = v^(r-1) polynomial.

Both representations are canonical: numerator and denominator share no
polynomial factor, the denominator is a true polynomial (no negative
exponents) and its lexicographically least term has coefficient +1.  As a
consequence ``==`` decides equality of field elements.

Only big-integer rational arithmetic is used; there is no floating point
anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd

from .errors import ConstraintViolation, DivisionByZero, PoleAtSpecialization

_ZERO = Fraction(0)
_ONE = Fraction(1)

# ---------------------------------------------------------------------------
# univariate helpers: dense lists of Fractions, index = exponent
# ---------------------------------------------------------------------------


def _u_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _u_add(a, b):
    out = [_ZERO] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _u_trim(out)


def _u_sub(a, b):
    out = [_ZERO] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _u_trim(out)


def _u_mul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                if d:
                    out[i + j] += c * d
    return _u_trim(out)


def _u_divmod(a, b):
    if not b:
        raise ZeroDivisionError("univariate division by zero polynomial")
    a = list(a)
    q = [_ZERO] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    while len(a) >= len(b):
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for j, d in enumerate(b):
            a[k + j] -= c * d
        _u_trim(a)
        if not a:
            break
    return _u_trim(q), a


def _u_gcd(a, b):
    """Monic gcd in Q[x]."""
    a, b = list(a), list(b)
    while b:
        a, b = b, _u_divmod(a, b)[1]
    if a:
        inv = 1 / a[-1]
        a = [c * inv for c in a]
    return a


def _u_div_exact(a, b):
    q, r = _u_divmod(a, b)
    if r:
        raise ArithmeticError("inexact univariate division")
    return q


# -- integer kernels for the gcd machinery ----------------------------------
#
# Over Q a gcd is only defined up to units, so both operands are first scaled
# to integer-primitive form; all pseudo-remainder work then runs on plain
# Python ints, which is dramatically faster than Fraction arithmetic.


def _zu_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zu_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c:
            for j, d in enumerate(b):
                if d:
                    out[i + j] += c * d
    return _zu_trim(out)


def _zu_scale(a, c):
    return [x * c for x in a]


def _zu_content(a):
    g = 0
    for c in a:
        g = _int_gcd(g, c)
        if g == 1:
            return 1
    return g


def _zu_primitive(a):
    g = _zu_content(a)
    if g > 1:
        return [c // g for c in a]
    return list(a)


def _zu_prem(a, b):
    """Pseudo-remainder of a by b in Z[x] (b nonzero)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        la = a[-1]
        a = _zu_scale(a, lb)
        for j, c in enumerate(b):
            a[da - db + j] -= la * c
        _zu_trim(a)
    return a


def _zu_gcd(a, b):
    """gcd in Z[x] via the primitive PRS, normalized primitive with positive lead."""
    a, b = _zu_trim(list(a)), _zu_trim(list(b))
    if not a:
        a, b = b, a
    if not b:
        out = _zu_primitive(a)
        if out and out[-1] < 0:
            out = [-c for c in out]
        return out
    ca, cb = _zu_content(a), _zu_content(b)
    cont = _int_gcd(ca, cb)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _zu_prem(a, b)
        a, b = b, _zu_primitive(r)
        if b and len(a) < len(b):
            a, b = b, a
    if a[-1] < 0:
        a = [-c for c in a]
    return _zu_scale(a, cont) if cont != 1 else a


def _zu_div_exact(a, b):
    """Exact division in Z[x] (quotient may need rational steps only if inexact)."""
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    lb = b[-1]
    while a and len(a) >= len(b):
        la = a[-1]
        if la % lb:
            raise ArithmeticError("inexact integer univariate division")
        c = la // lb
        k = len(a) - len(b)
        q[k] = c
        for j, d in enumerate(b):
            a[k + j] -= c * d
        _zu_trim(a)
    if a:
        raise ArithmeticError("inexact integer univariate division")
    return q


# ---------------------------------------------------------------------------
# bivariate term dicts: {(e_s, e_p): Fraction}
# ---------------------------------------------------------------------------


def _t2_add(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, _ZERO) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _t2_neg(a):
    return {e: -c for e, c in a.items()}


def _t2_mul(a, b):
    out = {}
    for (ea, eb), c in a.items():
        for (fa, fb), d in b.items():
            e = (ea + fa, eb + fb)
            v = out.get(e, _ZERO) + c * d
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _t2_scale(a, c):
    if not c:
        return {}
    return {e: x * c for e, x in a.items()}


def _t2_shift(a, ds, dp):
    if ds == 0 and dp == 0:
        return dict(a)
    return {(es + ds, ep + dp): c for (es, ep), c in a.items()}


def _t2_min_exps(a):
    return min(e[0] for e in a), min(e[1] for e in a)


def _t2_to_poly(a):
    """Shift a nonzero Laurent term dict so both minimum exponents are 0."""
    ms, mp = _t2_min_exps(a)
    return _t2_shift(a, -ms, -mp), (ms, mp)


def _t2_to_int_recursive(a):
    """Polynomial Fraction term dict -> {s_exp: dense int p-coefficient list}.

    The rational scale factor is dropped (irrelevant for a gcd over Q).
    """
    den_lcm = 1
    for c in a.values():
        den_lcm = den_lcm // _int_gcd(den_lcm, c.denominator) * c.denominator
    rec = {}
    for (es, ep), c in a.items():
        pl = rec.setdefault(es, [])
        if len(pl) <= ep:
            pl.extend([0] * (ep + 1 - len(pl)))
        pl[ep] = int(c * den_lcm)
    num_gcd = 0
    for pl in rec.values():
        for c in pl:
            num_gcd = _int_gcd(num_gcd, c)
        if num_gcd == 1:
            break
    if num_gcd > 1:
        rec = {es: [c // num_gcd for c in pl] for es, pl in rec.items()}
    for es in list(rec):
        _zu_trim(rec[es])
        if not rec[es]:
            del rec[es]
    return rec


def _zrec_content(rec):
    g = []
    for pl in rec.values():
        g = _zu_gcd(g, pl)
        if g == [1]:
            break
    return g


def _zrec_primitive(rec, content):
    if content == [1]:
        return rec
    return {es: _zu_div_exact(pl, content) for es, pl in rec.items()}


def _zrec_prem(a, b):
    """Pseudo-remainder of a by b in (Z[p])[s]; both nonzero, deg a >= deg b."""
    db = max(b)
    lb = b[db]
    r = {es: list(pl) for es, pl in a.items()}
    while r and max(r) >= db:
        dr = max(r)
        lr = r.pop(dr)
        nr = {}
        for es, pl in r.items():
            nr[es] = _zu_mul(pl, lb)
        for es, pl in b.items():
            if es == db:
                continue
            te = es + dr - db
            cur = nr.get(te, [])
            prod = _zu_mul(pl, lr)
            out = [0] * max(len(cur), len(prod))
            for i, c in enumerate(cur):
                out[i] += c
            for i, c in enumerate(prod):
                out[i] -= c
            nr[te] = _zu_trim(out)
        r = {es: pl for es, pl in nr.items() if pl}
    return r


def _is_monomial_dict(a):
    return len(a) == 1


def _poly_gcd2(a, b):
    """gcd of two bivariate Laurent term dicts, as a normalized polynomial dict.

    The result has minimum exponent 0 in each variable and its
    lexicographically least term has coefficient +1 (so it is unique).
    """
    if not a and not b:
        return {}
    if not a or not b:
        src = a or b
        p, _ = _t2_to_poly(src)
        return _gcd_normalize(p)
    # a common factor of a monomial is a unit of the Laurent ring
    if _is_monomial_dict(a) or _is_monomial_dict(b):
        return dict(_T2_ONE)
    pa, _ = _t2_to_poly(a)
    pb, _ = _t2_to_poly(b)
    if pa == pb:
        return _gcd_normalize(pa)
    ra, rb = _t2_to_int_recursive(pa), _t2_to_int_recursive(pb)
    ca, cb = _zrec_content(ra), _zrec_content(rb)
    cont = _zu_gcd(ca, cb)
    fa, fb = _zrec_primitive(ra, ca), _zrec_primitive(rb, cb)
    if max(fa) < max(fb):
        fa, fb = fb, fa
    while fb:
        rem = _zrec_prem(fa, fb)
        fa = fb
        if rem:
            rem = _zrec_primitive(rem, _zrec_content(rem))
        fb = rem
        if fb and max(fa) < max(fb):
            fa, fb = fb, fa
    out = {}
    for es, pl in fa.items():
        full = _zu_mul(pl, cont)
        for ep, c in enumerate(full):
            if c:
                out[(es, ep)] = Fraction(c)
    return _gcd_normalize(out)


def _gcd_normalize(a):
    if not a:
        return a
    c = a[min(a)]
    if c != 1:
        a = _t2_scale(a, 1 / c)
    return a


def _is_unit_poly(a):
    return len(a) == 1 and (0, 0) in a


def _t2_div_exact(a, g):
    """Divide a Laurent term dict by a polynomial dict g (g | a), exactly."""
    if not a:
        return {}
    if _is_unit_poly(g):
        c = g[(0, 0)]
        return a if c == 1 else _t2_scale(a, 1 / c)
    ap, (ms, mp) = _t2_to_poly(a)
    lead = max(g)
    lc = g[lead]
    rem = dict(ap)
    quot = {}
    while rem:
        t = max(rem)
        qe = (t[0] - lead[0], t[1] - lead[1])
        if qe[0] < 0 or qe[1] < 0:
            raise ArithmeticError("inexact bivariate division")
        qc = rem[t] / lc
        quot[qe] = qc
        for e, c in g.items():
            te = (e[0] + qe[0], e[1] + qe[1])
            v = rem.get(te, _ZERO) - qc * c
            if v:
                rem[te] = v
            else:
                rem.pop(te, None)
    return _t2_shift(quot, ms, mp)


_T2_ONE = {(0, 0): _ONE}


def _canonical2(num, den, coprime=False):
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return {}, dict(_T2_ONE)
    if len(den) == 1:
        # unit denominator: fold it into the numerator
        ((es, ep), c), = den.items()
        num = _t2_shift(num, -es, -ep)
        if c != 1:
            num = _t2_scale(num, 1 / c)
        return num, dict(_T2_ONE)
    if not coprime and not _is_monomial_dict(num):
        g = _poly_gcd2(num, den)
        if not _is_unit_poly(g):
            num = _t2_div_exact(num, g)
            den = _t2_div_exact(den, g)
            if len(den) == 1:
                return _canonical2(num, den, coprime=True)
    ms, mp = _t2_min_exps(den)
    if (ms, mp) != (0, 0):
        num = _t2_shift(num, -ms, -mp)
        den = _t2_shift(den, -ms, -mp)
    c = den[min(den)]
    if c != 1:
        inv = 1 / c
        num = _t2_scale(num, inv)
        den = _t2_scale(den, inv)
    return num, den


def _term_text(c, head):
    return f"{c}{head}"


def _t2_text(a, order_key=None):
    if not a:
        return "0"
    parts = []
    for (es, ep) in sorted(a, reverse=True):
        parts.append(f"{a[(es, ep)]}*s^{es}*p^{ep}")
    return " + ".join(parts)


def _t2_parse(text):
    text = text.strip()
    if text == "0":
        return {}
    out = {}
    for part in text.split(" + "):
        coeff, svar, pvar = part.split("*")
        if not svar.startswith("s^") or not pvar.startswith("p^"):
            raise ValueError(f"malformed term {part!r}")
        e = (int(svar[2:]), int(pvar[2:]))
        c = Fraction(coeff)
        if e in out:
            raise ValueError(f"duplicate exponent {e} in {text!r}")
        if c:
            out[e] = c
    return out


class ParamScalar:
    """An element of Q(s, p) in canonical form.

    Instances are immutable and support the usual field operators; ``==``
    decides equality of field elements.  Integers and Fractions mix freely
    on either side of an operator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _coprime=False):
        if den is None:
            den = dict(_T2_ONE)
        self.num, self.den = _canonical2(num, den, coprime=_coprime)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_fraction(cls, c):
        c = Fraction(c)
        return cls({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, c, e_s, e_p):
        c = Fraction(c)
        return cls({(e_s, e_p): c} if c else {})

    @classmethod
    def parse(cls, text):
        numtext, _, dentext = text.partition(" / ")
        num = _t2_parse(numtext)
        den = _t2_parse(dentext) if dentext else dict(_T2_ONE)
        return cls(num, den)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == _T2_ONE and self.den == _T2_ONE

    def as_signed_monomial(self):
        """Return (sign, e_s, e_p) if self = +-s^a p^b, else None."""
        if len(self.num) != 1 or self.den != _T2_ONE:
            return None
        (e, c), = self.num.items()
        if c == 1:
            return (1, e[0], e[1])
        if c == -1:
            return (-1, e[0], e[1])
        return None

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ParamScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ParamScalar.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return ParamScalar(_t2_add(self.num, other.num), dict(self.den))
        g = _poly_gcd2(self.den, other.den)
        if _is_unit_poly(g):
            num = _t2_add(_t2_mul(self.num, other.den), _t2_mul(other.num, self.den))
            return ParamScalar(num, _t2_mul(self.den, other.den))
        da = _t2_div_exact(self.den, g)
        db = _t2_div_exact(other.den, g)
        num = _t2_add(_t2_mul(self.num, db), _t2_mul(other.num, da))
        return ParamScalar(num, _t2_mul(self.den, db))

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(ParamScalar)
        out.num = _t2_neg(self.num)
        out.den = dict(self.den)
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return ParamScalar({})
        # cross-cancel: the factors of each numerator against the opposite
        # denominator; the resulting fraction is already in lowest terms.
        n1, d1 = self.num, self.den
        n2, d2 = other.num, other.den
        g1 = _poly_gcd2(n1, d2)
        if not _is_unit_poly(g1):
            n1 = _t2_div_exact(n1, g1)
            d2 = _t2_div_exact(d2, g1)
        g2 = _poly_gcd2(n2, d1)
        if not _is_unit_poly(g2):
            n2 = _t2_div_exact(n2, g2)
            d1 = _t2_div_exact(d1, g2)
        return ParamScalar(_t2_mul(n1, n2), _t2_mul(d1, d2), _coprime=True)

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return ParamScalar(dict(self.den), dict(self.num), _coprime=True)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e):
        if e == 0:
            return ParamScalar.from_fraction(1)
        base = self if e > 0 else self.inv()
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    # -- serialization -------------------------------------------------------

    def text(self):
        return f"{_t2_text(self.num)} / {_t2_text(self.den)}"

    def __repr__(self):
        return f"ParamScalar({self.text()})"

    # -- specialization ------------------------------------------------------

    def specialize(self, k, r):
        """Substitute s -> v^(r-1), p -> v^(-2(k+1)).

        Raises PoleAtSpecialization if the canonical denominator maps to the
        zero polynomial.
        """
        _check_spec_params(k, r)
        num = _spec_terms(self.num, k, r)
        den = _spec_terms(self.den, k, r)
        if not den:
            raise PoleAtSpecialization(
                f"denominator {_t2_text(self.den)} vanishes at s=v^{r-1}, p=v^-{2 * (k + 1)}"
            )
        return SpecScalar(num, den)


def _check_spec_params(k, r):
    if k < 1 or r < 2:
        raise ConstraintViolation(f"need k >= 1 and r >= 2, got k={k}, r={r}")
    if _int_gcd(k + 1, r - 1) != 1:
        raise ConstraintViolation(f"k+1={k + 1} and r-1={r - 1} must be coprime")


def _spec_terms(a, k, r):
    out = {}
    for (es, ep), c in a.items():
        e = es * (r - 1) - 2 * (k + 1) * ep
        v = out.get(e, _ZERO) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


# ---------------------------------------------------------------------------
# univariate Laurent scalars in v
# ---------------------------------------------------------------------------


def _t1_add(a, b):
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, _ZERO) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _t1_mul(a, b):
    out = {}
    for ea, c in a.items():
        for eb, d in b.items():
            e = ea + eb
            v = out.get(e, _ZERO) + c * d
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _t1_scale(a, c):
    if not c:
        return {}
    return {e: x * c for e, x in a.items()}


def _t1_to_list(a):
    """Nonzero Laurent dict -> (dense list with exponent 0 first, offset)."""
    lo = min(a)
    out = [_ZERO] * (max(a) - lo + 1)
    for e, c in a.items():
        out[e - lo] = c
    return out, lo


def _t1_from_list(lst, off=0):
    return {i + off: c for i, c in enumerate(lst) if c}


_T1_ONE = {0: _ONE}


def _canonical1(num, den):
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return {}, dict(_T1_ONE)
    nl, noff = _t1_to_list(num)
    dl, doff = _t1_to_list(den)
    g = _u_gcd(nl, dl)
    if len(g) > 1:
        nl = _u_div_exact(nl, g)
        dl = _u_div_exact(dl, g)
    num = _t1_from_list(nl, noff)
    den = _t1_from_list(dl, doff)
    shift = min(den)
    if shift:
        num = {e - shift: c for e, c in num.items()}
        den = {e - shift: c for e, c in den.items()}
    c = den[min(den)]
    if c != 1:
        inv = 1 / c
        num = _t1_scale(num, inv)
        den = _t1_scale(den, inv)
    return num, den


def _t1_text(a):
    if not a:
        return "0"
    return " + ".join(f"{a[e]}*v^{e}" for e in sorted(a, reverse=True))


def _t1_parse(text):
    text = text.strip()
    if text == "0":
        return {}
    out = {}
    for part in text.split(" + "):
        coeff, vvar = part.split("*")
        if not vvar.startswith("v^"):
            raise ValueError(f"malformed term {part!r}")
        e = int(vvar[2:])
        if e in out:
            raise ValueError(f"duplicate exponent {e} in {text!r}")
        c = Fraction(coeff)
        if c:
            out[e] = c
    return out


class SpecScalar:
    """An element of Q(v), canonical exactly as ParamScalar is."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = dict(_T1_ONE)
        self.num, self.den = _canonical1(num, den)

    @classmethod
    def from_fraction(cls, c):
        c = Fraction(c)
        return cls({0: c} if c else {})

    @classmethod
    def monomial(cls, c, e_v):
        c = Fraction(c)
        return cls({e_v: c} if c else {})

    @classmethod
    def parse(cls, text):
        numtext, _, dentext = text.partition(" / ")
        num = _t1_parse(numtext)
        den = _t1_parse(dentext) if dentext else dict(_T1_ONE)
        return cls(num, den)

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num == _T1_ONE and self.den == _T1_ONE

    def as_signed_monomial(self):
        """Return (sign, e_v) if self = +-v^e, else None."""
        if len(self.num) != 1 or self.den != _T1_ONE:
            return None
        (e, c), = self.num.items()
        if c == 1:
            return (1, e)
        if c == -1:
            return (-1, e)
        return None

    def _coerce(self, other):
        if isinstance(other, SpecScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return SpecScalar.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return SpecScalar(_t1_add(self.num, other.num), dict(self.den))
        num = _t1_add(_t1_mul(self.num, other.den), _t1_mul(other.num, self.den))
        return SpecScalar(num, _t1_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(SpecScalar)
        out.num = {e: -c for e, c in self.num.items()}
        out.den = dict(self.den)
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return SpecScalar(_t1_mul(self.num, other.num), _t1_mul(self.den, other.den))

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return SpecScalar(dict(self.den), dict(self.num))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e):
        if e == 0:
            return SpecScalar.from_fraction(1)
        base = self if e > 0 else self.inv()
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    def text(self):
        return f"{_t1_text(self.num)} / {_t1_text(self.den)}"

    def __repr__(self):
        return f"SpecScalar({self.text()})"


def specialize(x, k, r):
    """Functional form of ParamScalar.specialize."""
    return x.specialize(k, r)


# ---------------------------------------------------------------------------
# monomial eigenvalue data and field contexts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """A signed monomial +-s^{e_s} p^{e_p}, field-independent eigenvalue data."""

    sign: int
    e_s: int
    e_p: int

    def to_json(self):
        return {"sign": self.sign, "e_s": self.e_s, "e_p": self.e_p}


class ParamField:
    """Context for the generic field Q(s, p)."""

    is_specialized = False
    p_as_q_exponent = None  # p is formally independent of q here

    def zero(self):
        return ParamScalar({})

    def one(self):
        return ParamScalar.from_fraction(1)

    def from_fraction(self, c):
        return ParamScalar.from_fraction(c)

    def monomial(self, c, e_s, e_p):
        return ParamScalar.monomial(c, e_s, e_p)

    def s_power(self, e):
        return ParamScalar.monomial(1, e, 0)

    def p_power(self, e):
        return ParamScalar.monomial(1, 0, e)

    def t_power(self, e):
        return ParamScalar.monomial(1, 2 * e, 0)

    def eval_monomial(self, m):
        return ParamScalar.monomial(m.sign, m.e_s, m.e_p)

    def q_power(self, sign, e):
        """q^e as a field element, where q = s (sign '+') or -1/s (sign '-')."""
        if sign == "+":
            return self.s_power(e)
        c = 1 if e % 2 == 0 else -1
        return ParamScalar.monomial(c, -e, 0)

    def parse_scalar(self, text):
        return ParamScalar.parse(text)

    def q_monomial_log(self, x, sign):
        """Write x = sign_bit * |q|^A * p^B under the convention s > 0, p > 0.

        |q| = s for sign '+' and 1/s for sign '-'.  Returns (sign_bit, A, B)
        with A, B Fractions; raises ValueError if x is not a signed monomial.
        """
        m = x.as_signed_monomial()
        if m is None:
            raise ValueError(f"{x!r} is not a signed monomial")
        sgn, e_s, e_p = m
        if sign == "+":
            return sgn, Fraction(e_s), Fraction(e_p)
        return sgn, Fraction(-e_s), Fraction(e_p)

    def describe(self):
        return {"field": "generic"}

    def __eq__(self, other):
        return isinstance(other, ParamField)

    def __hash__(self):
        return hash("ParamField")

    def __repr__(self):
        return "ParamField()"


@dataclass(frozen=True)
class SpecField:
    """Context for Q(v) with s = v^(r-1), p = v^(-2(k+1))."""

    k: int
    r: int

    def __post_init__(self):
        _check_spec_params(self.k, self.r)

    is_specialized = True

    @property
    def p_as_q_exponent(self):
        # p = q^(2(k+1)/(r-1)) on the positive branch q^x := v^(-x(r-1))
        return Fraction(2 * (self.k + 1), self.r - 1)

    def zero(self):
        return SpecScalar({})

    def one(self):
        return SpecScalar.from_fraction(1)

    def from_fraction(self, c):
        return SpecScalar.from_fraction(c)

    def monomial(self, c, e_s, e_p):
        return SpecScalar.monomial(c, e_s * (self.r - 1) - 2 * (self.k + 1) * e_p)

    def s_power(self, e):
        return SpecScalar.monomial(1, e * (self.r - 1))

    def p_power(self, e):
        return SpecScalar.monomial(1, -2 * (self.k + 1) * e)

    def t_power(self, e):
        return SpecScalar.monomial(1, 2 * e * (self.r - 1))

    def eval_monomial(self, m):
        return self.monomial(m.sign, m.e_s, m.e_p)

    def q_power(self, sign, e):
        if sign == "+":
            return self.s_power(e)
        c = 1 if e % 2 == 0 else -1
        return SpecScalar.monomial(c, -e * (self.r - 1))

    def parse_scalar(self, text):
        return SpecScalar.parse(text)

    def q_monomial_log(self, x, sign):
        """As ParamField.q_monomial_log, under v > 0; |q| = v^(-+(r-1))."""
        m = x.as_signed_monomial()
        if m is None:
            raise ValueError(f"{x!r} is not a signed monomial")
        sgn, e_v = m
        a = Fraction(e_v, self.r - 1)
        return (sgn, a if sign == "+" else -a, Fraction(0))

    def describe(self):
        return {"field": "specialized", "k": self.k, "r": self.r}


GENERIC = ParamField()
