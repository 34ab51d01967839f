"""Exact truncated power series and homogeneous polynomials over the rationals.

Exponents are plain tuples of non-negative ints (multi-indices).  Monomials are
ordered graded-lexicographically with ``s1`` greatest: first by total degree,
then by decreasing exponent tuple.  All coefficients are :class:`Fraction`.

Objects here are treated as immutable values; no method mutates its receiver.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from operator import add
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, InsufficientOrderError, NotAUnitError

Exponent = tuple


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a coefficient")
    return Fraction(x)


# ---------------------------------------------------------------------------
# multi-indices


def weight(alpha: Sequence[int]) -> int:
    return sum(alpha)


def unit_index(n: int, i: int, k: int = 1) -> tuple:
    """The exponent ``k * e_i`` (``i`` is 0-based)."""
    e = [0] * n
    e[i] = k
    return tuple(e)


@lru_cache(maxsize=None)
def exponents_of_degree(n: int, d: int) -> tuple:
    """All exponents of total degree ``d`` in ``n`` variables, s1 greatest first."""
    if n == 0:
        return ((),) if d == 0 else ()
    if n == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in exponents_of_degree(n - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def exponents_between(n: int, lo: int, hi: int) -> tuple:
    out = []
    for d in range(lo, hi + 1):
        out.extend(exponents_of_degree(n, d))
    return tuple(out)


def ambient_dimension(n: int, q: int) -> int:
    """N = C(n+q, n) - 1, the number of coordinates x_alpha with 1 <= |alpha| <= q."""
    return comb(n + q, n) - 1


def coordinate_indices(n: int, q: int) -> tuple:
    """The multi-indices 1 <= |alpha| <= q in canonical coordinate order."""
    return exponents_between(n, 1, q)


@lru_cache(maxsize=None)
def _index_table(n: int, q: int) -> dict:
    return {a: i for i, a in enumerate(coordinate_indices(n, q))}


def canonical_index(alpha: Sequence[int], n: int, q: int) -> int:
    alpha = tuple(alpha)
    if len(alpha) != n or any(a < 0 for a in alpha):
        raise DomainError(f"{alpha!r} is not a multi-index in {n} variables")
    if not 1 <= weight(alpha) <= q:
        raise DomainError(f"weight of {alpha!r} is outside 1..{q}")
    return _index_table(n, q)[alpha]


def monomial_str(e: Sequence[int], var: str = "s") -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"{var}{i + 1}")
        elif k > 1:
            parts.append(f"{var}{i + 1}^{k}")
    return "*".join(parts) or "1"


def _terms_str(items, var="s") -> str:
    if not items:
        return "0"
    out = []
    for e, c in items:
        mono = monomial_str(e, var)
        if mono == "1":
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        out.append((sign, body))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def _sort_key(e):
    return (sum(e), tuple(-x for x in e))


# ---------------------------------------------------------------------------
# multivariate jets


class MJet:
    """Power series in ``n`` variables, known exactly up to total degree ``trunc``."""

    __slots__ = ("n", "trunc", "terms", "_layers", "_hash")

    def __init__(self, n: int, trunc: int, terms: Mapping | None = None):
        if n < 1 or trunc < 0:
            raise DomainError(f"bad jet shape n={n}, trunc={trunc}")
        self.n = n
        self.trunc = trunc
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n or any(k < 0 for k in e):
                    raise DomainError(f"exponent {e!r} does not fit {n} variables")
                if sum(e) > trunc:
                    continue
                c = to_rational(c)
                if c:
                    clean[e] = c
        self.terms = clean
        self._layers = None
        self._hash = None

    @classmethod
    def _raw(cls, n, trunc, terms):
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.n = n
        obj.trunc = trunc
        obj.terms = terms
        obj._layers = None
        obj._hash = None
        return obj

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n, trunc):
        return cls._raw(n, trunc, {})

    @classmethod
    def constant(cls, n, trunc, c):
        return cls(n, trunc, {(0,) * n: c})

    @classmethod
    def one(cls, n, trunc):
        return cls.constant(n, trunc, 1)

    @classmethod
    def var(cls, n, trunc, i):
        """The coordinate ``s_{i+1}``."""
        return cls(n, trunc, {unit_index(n, i): 1})

    @classmethod
    def monomial(cls, n, trunc, e, c=1):
        return cls(n, trunc, {tuple(e): c})

    # basic queries ------------------------------------------------------

    def __repr__(self):
        return f"MJet({self}, n={self.n}, T={self.trunc})"

    def __str__(self):
        return _terms_str(self.sorted_terms())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __eq__(self, other):
        if not isinstance(other, MJet):
            return NotImplemented
        return self.n == other.n and self.trunc == other.trunc and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.trunc, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coeff((0,) * self.n)

    def order(self) -> int | None:
        """Lowest degree carrying a nonzero term, None for the zero jet."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def layers(self):
        """List indexed by degree of ``[(exponent, coeff), ...]``."""
        if self._layers is None:
            layers = [[] for _ in range(self.trunc + 1)]
            for e, c in self.terms.items():
                layers[sum(e)].append((e, c))
            self._layers = layers
        return self._layers

    def truncate(self, trunc: int) -> "MJet":
        if trunc > self.trunc:
            raise InsufficientOrderError(f"cannot extend a jet known to order {self.trunc}")
        return MJet._raw(self.n, trunc, {e: c for e, c in self.terms.items() if sum(e) <= trunc})

    def homogeneous_part(self, d: int) -> "HomogeneousPoly":
        if d < 0 or d > self.trunc:
            raise DomainError(f"degree {d} is not known for a jet truncated at {self.trunc}")
        return HomogeneousPoly(self.n, d, dict(self.layers()[d]))

    def low_part(self, d: int) -> "MJet":
        """Terms of degree <= d, kept at the same truncation."""
        return MJet._raw(self.n, self.trunc, {e: c for e, c in self.terms.items() if sum(e) <= d})

    def evaluate(self, point: Sequence) -> Fraction:
        """Evaluate the stored polynomial part at ``point``."""
        pt = [to_rational(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    # ring operations ------------------------------------------------------

    def _check(self, other):
        if self.n != other.n or self.trunc != other.trunc:
            raise DomainError(
                f"jets of shape (n={self.n}, T={self.trunc}) and (n={other.n}, T={other.trunc}) do not mix"
            )

    def _coerce(self, other):
        if isinstance(other, MJet):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return MJet.constant(self.n, self.trunc, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MJet._raw(self.n, self.trunc, out)

    __radd__ = __add__

    def __neg__(self):
        return MJet._raw(self.n, self.trunc, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "MJet":
        c = to_rational(c)
        if not c:
            return MJet.zero(self.n, self.trunc)
        return MJet._raw(self.n, self.trunc, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, MJet):
            return NotImplemented
        self._check(other)
        return MJet._raw(self.n, self.trunc, _mul_terms(self.terms, other.layers(), self.trunc))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError("only non-negative integer powers are supported")
        result = MJet.one(self.n, self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "MJet":
        return mjet_inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(Fraction(1) / to_rational(other))
        if isinstance(other, MJet):
            return self * mjet_inverse(other)
        return NotImplemented

    def compose(self, psi: Sequence["MJet"]) -> "MJet":
        return mjet_compose(self, psi)

    def substitute_line(self, sigma: Sequence) -> "UJet":
        return substitute_line(self, sigma)


def _mul_terms(a_terms, b_layers, trunc):
    out = {}
    get = out.get
    for ea, ca in a_terms.items():
        room = trunc - sum(ea)
        for d in range(room + 1):
            for eb, cb in b_layers[d]:
                e = tuple(map(add, ea, eb))
                out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def mjet_mul(a: MJet, b: MJet) -> MJet:
    if not isinstance(a, MJet) or not isinstance(b, MJet):
        raise DomainError("mjet_mul expects two jets")
    return a * b


def mjet_inverse(a: MJet) -> MJet:
    """Multiplicative inverse of a unit jet, degree layer by degree layer."""
    c0 = a.constant_term()
    if not c0:
        raise NotAUnitError("jet with zero constant term is not invertible")
    n, T = a.n, a.trunc
    inv0 = 1 / c0
    a_layers = a.layers()
    # inv_d = -inv0 * sum_{k=1..d} a_k * inv_{d-k}
    inv_layers = [{(0,) * n: inv0}]
    for d in range(1, T + 1):
        acc = {}
        for k in range(1, d + 1):
            for ea, ca in a_layers[k]:
                for eb, cb in inv_layers[d - k].items():
                    e = tuple(map(add, ea, eb))
                    acc[e] = acc.get(e, 0) + ca * cb
        inv_layers.append({e: -inv0 * c for e, c in acc.items() if c})
    terms = {}
    for layer in inv_layers:
        terms.update(layer)
    return MJet._raw(n, T, terms)


def _check_substitution(psi: Sequence[MJet], n: int):
    psi = list(psi)
    if len(psi) != n:
        raise DomainError(f"substitution needs {n} jets, got {len(psi)}")
    T = psi[0].trunc
    m = psi[0].n
    for p in psi:
        if not isinstance(p, MJet) or p.trunc != T or p.n != m:
            raise DomainError("substitution jets must share variable count and truncation")
        if p.constant_term():
            raise DomainError("substituted jets must vanish at the origin")
    return psi


def compose_many(fs: Sequence[MJet], psi: Sequence[MJet]) -> list:
    """Substitute ``s_i := psi_i`` into every jet of ``fs``, sharing monomial powers."""
    fs = list(fs)
    if not fs:
        return []
    n = fs[0].n
    psi = _check_substitution(psi, n)
    m, T = psi[0].n, psi[0].trunc
    for f in fs:
        if f.n != n:
            raise DomainError("all composed jets must share the variable count")
        if f.trunc < T:
            raise InsufficientOrderError("outer jet truncated below the substitution order")
    zero_exp = (0,) * n
    cache = {zero_exp: {(0,) * m: Fraction(1)}}
    psi_layers = [p.layers() for p in psi]

    def power(beta):
        # psi^beta as a term dict, built from a smaller exponent
        got = cache.get(beta)
        if got is not None:
            return got
        i = next(k for k, b in enumerate(beta) if b)
        lower = list(beta)
        lower[i] -= 1
        val = _mul_terms(power(tuple(lower)), psi_layers[i], T)
        cache[beta] = val
        return val

    out = []
    for f in fs:
        acc = {}
        for beta, c in f.terms.items():
            if sum(beta) > T:
                continue  # psi^beta = O(|s|^{|beta|})
            for e, v in power(beta).items():
                acc[e] = acc.get(e, 0) + c * v
        out.append(MJet._raw(m, T, {e: c for e, c in acc.items() if c}))
    return out


def mjet_compose(f: MJet, psi: Sequence[MJet]) -> MJet:
    return compose_many([f], psi)[0]


def identity_substitution(n: int, trunc: int) -> list:
    return [MJet.var(n, trunc, i) for i in range(n)]


def linear_part_matrix(psi: Sequence[MJet]) -> list:
    """Jacobian at 0 of a substitution: row i holds d psi_i / d s_j."""
    n = psi[0].n
    return [[p.coeff(unit_index(n, j)) for j in range(n)] for p in psi]


def mjet_reverse(psi: Sequence[MJet]) -> list:
    """Compositional inverse ``phi`` of an origin-preserving substitution:
    ``psi(phi(s)) = s`` up to the common truncation."""
    from .linalg import mat_inverse  # local: linalg has no dependency on jets

    psi = _check_substitution(psi, psi[0].n if psi else 0)
    n, T = psi[0].n, psi[0].trunc
    if len(psi) != n:
        raise DomainError("only square substitutions can be inverted")
    L = linear_part_matrix(psi)
    Linv = mat_inverse(L)  # raises on singular linear part
    nonlinear = [p - p.low_part(1) for p in psi]
    ident = identity_substitution(n, T)
    phi = [_lincomb(Linv[i], ident) for i in range(n)]
    # phi <- L^{-1} (s - N(phi)); each pass fixes one more degree
    for _ in range(T):
        n_phi = compose_many(nonlinear, phi)
        rhs = [ident[i] - n_phi[i] for i in range(n)]
        phi = [_lincomb(Linv[i], rhs) for i in range(n)]
    return phi


def _lincomb(coeffs, jets):
    acc = MJet.zero(jets[0].n, jets[0].trunc)
    for c, j in zip(coeffs, jets):
        if c:
            acc = acc + j.scale(c)
    return acc


def substitute_line(f: MJet, sigma: Sequence) -> "UJet":
    """Restrict ``f`` to the line ``s = sigma * t``."""
    sigma = [to_rational(x) for x in sigma]
    if len(sigma) != f.n:
        raise DomainError(f"direction needs {f.n} entries")
    coeffs = [Fraction(0)] * (f.trunc + 1)
    for e, c in f.terms.items():
        v = c
        for x, k in zip(sigma, e):
            if k:
                v *= x ** k
        coeffs[sum(e)] += v
    return UJet(f.trunc, coeffs)


def homogeneous_part(f: MJet, d: int) -> "HomogeneousPoly":
    return f.homogeneous_part(d)


# ---------------------------------------------------------------------------
# univariate jets


class UJet:
    """Power series in one variable ``t``, coefficients of degrees 0..trunc."""

    __slots__ = ("trunc", "coeffs")

    def __init__(self, trunc: int, coeffs: Iterable = ()):
        if trunc < 0:
            raise DomainError("negative truncation")
        cs = [to_rational(c) for c in coeffs]
        if len(cs) > trunc + 1:
            cs = cs[: trunc + 1]
        cs.extend([Fraction(0)] * (trunc + 1 - len(cs)))
        self.trunc = trunc
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls, trunc, k=1, c=1):
        cs = [0] * (trunc + 1)
        if k <= trunc:
            cs[k] = c
        return cls(trunc, cs)

    def __repr__(self):
        return f"UJet({self}, T={self.trunc})"

    def __str__(self):
        return _terms_str([((k,), c) for k, c in enumerate(self.coeffs) if c], var="t").replace("t1", "t")

    def __eq__(self, other):
        if not isinstance(other, UJet):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.trunc, self.coeffs))

    def __getitem__(self, k):
        return self.coeffs[k]

    def is_zero(self):
        return not any(self.coeffs)

    def order(self):
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def _coerce(self, other):
        if isinstance(other, UJet):
            if other.trunc != self.trunc:
                raise DomainError("univariate jets of different truncation do not mix")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return UJet(self.trunc, [other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return UJet(self.trunc, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return UJet(self.trunc, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = to_rational(other)
            return UJet(self.trunc, [c * a for a in self.coeffs])
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        T = self.trunc
        out = [Fraction(0)] * (T + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(T + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return UJet(T, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UJet(self.trunc, [1])
        for _ in range(k):
            result = result * self
        return result

    def inverse(self) -> "UJet":
        c0 = self.coeffs[0]
        if not c0:
            raise NotAUnitError("univariate jet with zero constant term is not invertible")
        T = self.trunc
        inv = [Fraction(0)] * (T + 1)
        inv[0] = 1 / c0
        for d in range(1, T + 1):
            acc = sum((self.coeffs[k] * inv[d - k] for k in range(1, d + 1)), Fraction(0))
            inv[d] = -acc / c0
        return UJet(T, inv)

    def __truediv__(self, other):
        if isinstance(other, UJet):
            return self * other.inverse()
        return self * (1 / to_rational(other))

    def compose(self, g: "UJet") -> "UJet":
        """``self(g(t))`` for ``g`` vanishing at 0 (Horner scheme)."""
        if g.coeffs[0]:
            raise DomainError("inner series must vanish at 0")
        T = min(self.trunc, g.trunc)
        g = UJet(T, g.coeffs)
        acc = UJet(T, [self.coeffs[T]] if T <= self.trunc else [])
        for k in range(T - 1, -1, -1):
            acc = acc * g + self.coeffs[k]
        return acc

    def derivative_at_zero(self, mu: int) -> Fraction:
        from math import factorial

        return self.coeffs[mu] * factorial(mu)


def ujet_reverse(f: UJet) -> UJet:
    """Compositional inverse: ``f(g(t)) = t`` up to ``f.trunc``."""
    T = f.trunc
    if f.coeffs[0]:
        raise DomainError("reversion needs f(0) = 0")
    if T < 1 or not f.coeffs[1]:
        raise DomainError("reversion needs f'(0) != 0")
    lead = f.coeffs[1]
    t = UJet.t(T)
    g = t * (1 / lead)
    # Newton-free fixed point: each pass corrects one more coefficient
    for _ in range(T):
        g = g - (f.compose(g) - t) * (1 / lead)
    return g


# ---------------------------------------------------------------------------
# homogeneous polynomials


class HomogeneousPoly:
    """Homogeneous polynomial of a fixed degree in ``n`` variables.

    A negative degree is allowed only for the zero polynomial; it shows up as
    the quotient of the zero polynomial by a high power of ``s1``.
    """

    __slots__ = ("n", "degree", "terms")

    def __init__(self, n: int, degree: int, terms: Mapping | None = None):
        self.n = n
        self.degree = degree
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n or any(k < 0 for k in e):
                raise DomainError(f"exponent {e!r} does not fit {n} variables")
            if sum(e) != degree:
                raise DomainError(f"term {e!r} is not of degree {degree}")
            c = to_rational(c)
            if c:
                clean[e] = c
        self.terms = clean

    @classmethod
    def zero(cls, n, degree):
        return cls(n, degree)

    @classmethod
    def monomial(cls, e, c=1):
        e = tuple(e)
        return cls(len(e), sum(e), {e: c})

    def __repr__(self):
        return f"HomogeneousPoly({self}, n={self.n}, deg={self.degree})"

    def __str__(self):
        return _terms_str(sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0])))

    def __eq__(self, other):
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.n != other.n:
            return False
        if not self.terms and not other.terms:
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def coeff(self, e):
        return self.terms.get(tuple(e), Fraction(0))

    def _same(self, other):
        if not isinstance(other, HomogeneousPoly):
            raise DomainError("expected a homogeneous polynomial")
        if other.n != self.n:
            raise DomainError("variable counts differ")
        if self.terms and other.terms and other.degree != self.degree:
            raise DomainError(f"degrees {self.degree} and {other.degree} differ")

    def __add__(self, other):
        self._same(other)
        deg = self.degree if self.terms or not other.terms else other.degree
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return HomogeneousPoly(self.n, deg, out)

    def __neg__(self):
        return HomogeneousPoly(self.n, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            c = to_rational(other)
            return HomogeneousPoly(self.n, self.degree, {e: c * v for e, v in self.terms.items()})
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if other.n != self.n:
            raise DomainError("variable counts differ")
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(map(add, ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return HomogeneousPoly(self.n, self.degree + other.degree, out)

    __rmul__ = __mul__

    def times_monomial(self, e, c=1) -> "HomogeneousPoly":
        return self * HomogeneousPoly.monomial(e, c)

    def s1_degree(self) -> int:
        """Degree in s1; -1 for the zero polynomial."""
        return max((e[0] for e in self.terms), default=-1)

    def split_s1(self, m: int):
        """Return ``(low, high)`` with ``low`` of s1-degree <= m and every term of
        ``high`` divisible by ``s1^(m+1)``."""
        low = {e: c for e, c in self.terms.items() if e[0] <= m}
        high = {e: c for e, c in self.terms.items() if e[0] > m}
        return (HomogeneousPoly(self.n, self.degree, low), HomogeneousPoly(self.n, self.degree, high))

    def evaluate(self, point) -> Fraction:
        pt = [to_rational(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def to_mjet(self, trunc: int) -> MJet:
        if self.terms and self.degree > trunc:
            raise InsufficientOrderError("polynomial degree exceeds truncation")
        return MJet(self.n, trunc, self.terms)


def s1_divide(p: HomogeneousPoly, k: int) -> HomogeneousPoly | None:
    """Quotient of ``p`` by ``s1^k`` when the division is exact, else None."""
    if k < 0:
        raise DomainError("k must be non-negative")
    out = {}
    for e, c in p.terms.items():
        if e[0] < k:
            return None
        out[(e[0] - k,) + e[1:]] = c
    return HomogeneousPoly(p.n, p.degree - k, out)


def monomial_derivative(alpha: Sequence[int], j: int):
    """``(alpha_j, alpha - e_j)`` so that ``alpha_j s^alpha / s_j`` is a monomial;
    None when ``alpha_j = 0``."""
    if alpha[j] == 0:
        return None
    e = list(alpha)
    e[j] -= 1
    return alpha[j], tuple(e)
