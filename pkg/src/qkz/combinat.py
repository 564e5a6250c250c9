"""Compositions, symmetric-group combinatorics and the special constructions.

Conventions.  A permutation w acts on integer vectors by position,
(w.lam)_i = lam_{w^{-1}(i)}, matching the action used for sorting
compositions.  One-line notation is the tuple (w(1), .., w(n)) with values
1..n.  The shortest sorting permutations are produced by stable sorting
(ties broken by original position); minimality is cross-checked against
exhaustive search in the test suite.

rho is stored doubled (two_rho) so that everything stays integral:
two_rho(lam) = w_lam_plus . (n-1, n-3, .., -(n-1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as _int_gcd

from .errors import ConstraintViolation, DimensionMismatch, ResidueMismatch


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n} in one-line notation."""

    images: tuple

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ConstraintViolation(f"{self.images} is not a permutation of 1..{n}")

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def inverse(self):
        inv = [0] * self.n
        for i, v in enumerate(self.images):
            inv[v - 1] = i + 1
        return Permutation(tuple(inv))

    def compose(self, other):
        """self o other: (self.compose(other))(i) = self(other(i))."""
        return Permutation(tuple(self.images[other.images[i] - 1] for i in range(self.n)))

    def act(self, vec):
        """(w.vec)_i = vec_{w^{-1}(i)}."""
        if len(vec) != self.n:
            raise DimensionMismatch(f"vector length {len(vec)} != {self.n}")
        inv = self.inverse().images
        return tuple(vec[inv[i] - 1] for i in range(self.n))

    def length(self):
        inv = 0
        im = self.images
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if im[i] > im[j]:
                    inv += 1
        return inv

    def reduced_word(self):
        """A reduced word i_1..i_m with self = s_{i_1} ... s_{i_m} (bubble sort)."""
        a = list(self.images)
        performed = []
        changed = True
        while changed:
            changed = False
            for i in range(len(a) - 1):
                if a[i] > a[i + 1]:
                    a[i], a[i + 1] = a[i + 1], a[i]
                    performed.append(i + 1)
                    changed = True
        performed.reverse()
        return performed

    def to_json(self):
        return list(self.images)


def adjacent_transposition(n, i):
    """s_i in S_n (1 <= i <= n-1)."""
    im = list(range(1, n + 1))
    im[i - 1], im[i] = im[i], im[i - 1]
    return Permutation(tuple(im))


def swap_entries(vec, i):
    """s_i applied to a vector by position (1-based i)."""
    out = list(vec)
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


def _stable_sorting_perm(source, target):
    """Shortest w with w.source = target, for target a rearrangement of source.

    Equal values are matched in order of appearance, which yields the unique
    minimal-length permutation.
    """
    positions = {}
    for idx, v in enumerate(source):
        positions.setdefault(v, []).append(idx + 1)
    used = {v: 0 for v in positions}
    images = [0] * len(source)
    for tidx, v in enumerate(target):
        k = used[v]
        used[v] += 1
        images[positions[v][k] - 1] = tidx + 1
    return Permutation(tuple(images))


@dataclass(frozen=True)
class CompositionData:
    """Sorted forms, shortest sorting permutations and doubled rho of lam."""

    lam: tuple
    lam_plus: tuple
    lam_minus: tuple
    w_plus: Permutation
    w_minus: Permutation
    two_rho: tuple


def analyze(lam):
    """Dominant/anti-dominant data of an integer vector (Definition-level contract:
    w_plus.lam_plus = lam and w_minus.lam = lam_minus, both shortest)."""
    lam = tuple(lam)
    n = len(lam)
    lam_plus = tuple(sorted(lam, reverse=True))
    lam_minus = tuple(sorted(lam))
    # w_plus: shortest with w_plus . lam_plus = lam
    w_plus = _stable_sorting_perm(lam_plus, lam)
    # w_minus: shortest with w_minus . lam = lam_minus
    w_minus = _stable_sorting_perm(lam, lam_minus)
    rho2 = tuple(n - 1 - 2 * i for i in range(n))
    two_rho = w_plus.act(rho2)
    return CompositionData(lam, lam_plus, lam_minus, w_plus, w_minus, two_rho)


# ---------------------------------------------------------------------------
# orders
# ---------------------------------------------------------------------------


def dominance_geq(a, b):
    """a >= b in dominance: every prefix sum of a dominates that of b."""
    if len(a) != len(b):
        raise DimensionMismatch("length mismatch in dominance comparison")
    sa = sb = 0
    for x, y in zip(a, b):
        sa += x
        sb += y
        if sa < sb:
            return False
    return True


def prec_compare(lam, mu):
    """Compare under the order: lam > mu iff lam+ > mu+, or lam+ = mu+ and lam > mu.

    Returns one of 'less', 'greater', 'equal', 'incomparable'.
    """
    lam, mu = tuple(lam), tuple(mu)
    if len(lam) != len(mu):
        raise DimensionMismatch("length mismatch in composition comparison")
    if lam == mu:
        return "equal"
    lp = tuple(sorted(lam, reverse=True))
    mp = tuple(sorted(mu, reverse=True))
    if lp != mp:
        if dominance_geq(lp, mp):
            return "greater"
        if dominance_geq(mp, lp):
            return "less"
        return "incomparable"
    if dominance_geq(lam, mu):
        return "greater"
    if dominance_geq(mu, lam):
        return "less"
    return "incomparable"


def multiset_permutations(values):
    """All distinct rearrangements of a multiset, in lexicographic order."""
    values = sorted(values)
    n = len(values)
    out = []

    def rec(prefix, rest):
        if not rest:
            out.append(tuple(prefix))
            return
        prev = None
        for k in range(len(rest)):
            if rest[k] == prev:
                continue
            prev = rest[k]
            rec(prefix + [rest[k]], rest[:k] + rest[k + 1 :])

    rec([], values)
    return out


def lower_set(lam):
    """All mu with |mu| = |lam| and mu strictly below lam (or equal) in the
    E-polynomial support order: mu+ < lam+, or mu+ = lam+ and mu <= lam.

    Finite because dominance at fixed sum boxes all entries into
    [min lam+, max lam+].
    """
    lam = tuple(lam)
    n = len(lam)
    total = sum(lam)
    lp = tuple(sorted(lam, reverse=True))
    hi, lo = lp[0], lp[-1]
    prefix = []
    acc = 0
    for x in lp:
        acc += x
        prefix.append(acc)

    doms = []

    def rec(cur, rem, prev):
        idx = len(cur)
        if idx == n:
            if rem == 0:
                doms.append(tuple(cur))
            return
        vmax = min(prev, hi, prefix[idx] - (total - rem))
        for v in range(vmax, lo - 1, -1):
            rest = rem - v
            left = n - idx - 1
            if rest < left * lo or rest > left * v:
                continue
            cur.append(v)
            rec(cur, rest, v)
            cur.pop()

    rec([], total, hi)

    out = []
    for nu in doms:
        if nu == lp:
            for arr in multiset_permutations(nu):
                if dominance_geq(lam, arr):
                    out.append(arr)
        else:
            out.extend(multiset_permutations(nu))
    return out


# ---------------------------------------------------------------------------
# admissibility and the specialized constructions
# ---------------------------------------------------------------------------


def is_admissible(lam, k, r):
    """lam+_i - lam+_{i+k} >= r-1 for all i, equality only if
    w_lam_plus(i) < w_lam_plus(i+k)."""
    lam = tuple(lam)
    n = len(lam)
    if not 1 <= k <= n:
        raise ConstraintViolation(f"need 1 <= k <= {n}, got k={k}")
    data = analyze(lam)
    lp, wp = data.lam_plus, data.w_plus
    for i in range(1, n - k + 1):
        gap = lp[i - 1] - lp[i + k - 1]
        if gap < r - 1:
            return False
        if gap == r - 1 and not wp(i) < wp(i + k):
            return False
    return True


def build_special_mu(a, dlist, k, r, n):
    """The admissible pair (lam, mu) built from a dominant a and a block-length
    vector dlist = w_a_minus . ((m+1)^l, m^(k-l)), where n = k m + l.

    lam extends a by arithmetic steps lam_i - lam_{i+k} = r-1; mu interleaves
    the k columns of lam in the order prescribed by w_a_minus, column j
    contributing b_j + 1 = dlist_j entries.
    """
    a = tuple(a)
    dlist = tuple(dlist)
    if len(a) != k:
        raise ConstraintViolation(f"a must have length k={k}, got {len(a)}")
    if len(dlist) != k:
        raise ConstraintViolation(f"dlist must have length k={k}, got {len(dlist)}")
    if k < 1 or r < 2:
        raise ConstraintViolation(f"need k >= 1, r >= 2, got k={k}, r={r}")
    if any(a[i] < a[i + 1] for i in range(k - 1)):
        raise ConstraintViolation(f"a={a} is not dominant")
    if a[0] - a[-1] > r - 1:
        raise ConstraintViolation(f"need a_1 - a_k <= r-1, got {a[0] - a[-1]} > {r - 1}")
    m, l = divmod(n, k)
    if m < 1:
        raise ConstraintViolation(f"need n >= k, got n={n}, k={k}")
    base = tuple([m + 1] * l + [m] * (k - l))
    if tuple(sorted(dlist, reverse=True)) != base:
        raise ConstraintViolation(f"dlist={dlist} is not a permutation of {base}")
    w = analyze(a).w_minus
    if w.act(base) != dlist:
        raise ConstraintViolation(
            f"w_a_minus applied to {base} gives {w.act(base)}, not dlist={dlist}"
        )

    lam = list(a)
    for i in range(k, n):
        lam.append(lam[i - k] - (r - 1))
    lam = tuple(lam)

    winv = w.inverse()
    mu = []
    for j in range(1, k + 1):
        col = winv(j)
        b_j = m - (1 if col > l else 0)
        for step in range(b_j + 1):
            mu.append(lam[col - 1 + step * k])
    mu = tuple(mu)

    if not is_admissible(lam, k, r) or not is_admissible(mu, k, r):
        raise ConstraintViolation("constructed composition failed admissibility")
    return lam, mu


@dataclass(frozen=True)
class VertexData:
    """Multiplicities, extremal spin word and compositions for residues (i, j)."""

    d: tuple
    delta: tuple
    a: tuple
    lam: tuple
    mu: tuple


def vertex_data(i, j, n, N):
    """Multiplicity vector d, delta, the column-height vector a and the
    composition mu attached to boundary residues (i, j) at k = N, r = 2.

    The d-vector is computed both from the cyclic recursion
    d_l = d_{l-1} + [l = i] - [l = j] with sum n, and from the closed form in
    terms of m = n // N; the two must agree.
    """
    if N < 1:
        raise ConstraintViolation(f"need N >= 1, got {N}")
    if not (0 <= i < N and 0 <= j < N):
        raise ConstraintViolation(f"residues must lie in 0..{N - 1}, got i={i}, j={j}")
    if n < N:
        raise ConstraintViolation(f"need n >= N, got n={n}, N={N}")
    if (i - j + n) % N != 0:
        raise ResidueMismatch(f"i - j + n = {i - j + n} is not divisible by N = {N}")
    m = n // N

    if i <= j:
        d = tuple([m] * i + [m + 1] * (j - i) + [m] * (N - j))
        a = tuple([m - 1] * (N - i) + [m - 2] * i)
    else:
        d = tuple([m + 1] * j + [m] * (i - j) + [m + 1] * (N - i))
        a = tuple([m] * (N - i) + [m - 1] * i)

    # cyclic recursion cross-check
    steps = [(1 if l == i else 0) - (1 if l == j else 0) for l in range(N)]
    c = [0] * N
    for l in range(1, N):
        c[l] = c[l - 1] + steps[l]
    if (n - sum(c)) % N != 0:
        raise ConstraintViolation("recursion for d has no integral solution")
    d0 = (n - sum(c)) // N
    d_rec = tuple(d0 + c[l] for l in range(N))
    if d_rec != d or d_rec[0] != d_rec[N - 1] + steps[0] or any(x <= 0 for x in d_rec):
        raise ConstraintViolation(f"d-vector forms disagree: closed {d}, recursive {d_rec}")

    delta = tuple(val for val, mult in enumerate(d) for _ in range(mult))
    lam, mu = build_special_mu(a, d, N, 2, n)
    return VertexData(d=d, delta=delta, a=a, lam=lam, mu=mu)


def spin_indices(d):
    """All elements of I_{d_0..d_{N-1}} in lexicographic order."""
    delta = [val for val, mult in enumerate(d) for _ in range(mult)]
    return multiset_permutations(delta)


def check_spec_exponents(k, r):
    if _int_gcd(k + 1, r - 1) != 1:
        raise ConstraintViolation(f"k+1={k + 1} and r-1={r - 1} must be coprime")
