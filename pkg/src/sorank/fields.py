"""Arithmetic in GF(p^e) and in extensions GF(q^m).

Elements are plain ints.  An element of GF(p^e) packs its polynomial-basis
coefficients base p into one integer; an element of GF(q^m) packs its
GF(q)-coefficients base q.  Multiplication goes through log/antilog tables
built once per field (a primitive element is found at construction), so a
product is two table lookups.  Irreducible moduli are chosen
deterministically (least packed encoding among monic irreducibles) so
element encodings are reproducible across runs and platforms.

The non-goal ceiling is q^m <= 2^20; table construction refuses anything
larger.
"""

from __future__ import annotations

import random
from functools import lru_cache

from . import linalg
from .errors import BudgetError, ParamError

_MAX_ORDER = 1 << 20
_ADD_TABLE_LIMIT = 512


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomial helpers over an abstract scalar field ------------------------
# Polynomials are lists of scalar-encoded coefficients, low degree first.


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, S):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = S.add(out[i + j], S.mul(ai, bj))
    return _poly_trim(out)


def _poly_rem(a, mod, S):
    """Remainder of a modulo a monic polynomial ``mod``."""
    a = list(a)
    d = len(mod) - 1
    while len(a) > d:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - d
            for i in range(d):
                if mod[i]:
                    a[shift + i] = S.sub(a[shift + i], S.mul(lead, mod[i]))
        a.pop()
    return _poly_trim(a)


def _poly_is_irreducible(mod, S):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(mod) - 1
    if deg == 1:
        return True
    if mod[0] == 0:  # divisible by x
        return False
    s = S.order
    for d in range(1, deg // 2 + 1):
        for t in range(s**d):
            div = _digits(t, s, d) + [1]
            if not _poly_rem(mod, div, S):
                return False
    return True


def _digits(x, base, width):
    out = []
    for _ in range(width):
        out.append(x % base)
        x //= base
    return out


def _undigits(ds, base):
    x = 0
    for d in reversed(ds):
        x = x * base + d
    return x


class _PrimeOps:
    """Mod-p scalar arithmetic; the digit field underneath GF(p^e)."""

    def __init__(self, p):
        self.order = p
        self.char = p

    def add(self, a, b):
        return (a + b) % self.order

    def sub(self, a, b):
        return (a - b) % self.order

    def neg(self, a):
        return (-a) % self.order

    def mul(self, a, b):
        return (a * b) % self.order

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.order - 2, self.order)


class _PackedField:
    """Common machinery for GF(p^e) and GF(q^m): packed encoding + tables."""

    def __init__(self, scalar, deg, modulus=None):
        if deg < 1:
            raise ParamError("extension degree must be >= 1")
        order = scalar.order**deg
        if order > _MAX_ORDER:
            raise ParamError(f"field order {order} exceeds supported limit 2^20")
        self.scalar = scalar
        self.deg = deg
        self.order = order
        self.char = scalar.char
        if modulus is None:
            modulus = self._least_irreducible(scalar, deg)
        else:
            modulus = list(modulus)
            if len(modulus) != deg + 1 or modulus[-1] != 1:
                raise ParamError("modulus must be monic of the stated degree")
            if not _poly_is_irreducible(modulus, scalar):
                raise ParamError("modulus is reducible")
        self.modulus = tuple(modulus)
        self._build_tables()

    @staticmethod
    def _least_irreducible(scalar, deg):
        s = scalar.order
        for t in range(s**deg):
            cand = _digits(t, s, deg) + [1]
            if _poly_is_irreducible(cand, scalar):
                return cand
        raise ParamError("no irreducible modulus found")  # pragma: no cover

    # slow-path arithmetic used only while building the tables
    def _raw_mul(self, a, b):
        s = self.scalar
        pa = _digits(a, s.order, self.deg)
        pb = _digits(b, s.order, self.deg)
        return _undigits(_poly_rem(_poly_mul(pa, pb, s), list(self.modulus), s), s.order)

    def _raw_pow(self, a, k):
        r = 1
        while k:
            if k & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            k >>= 1
        return r

    def _find_primitive(self):
        o1 = self.order - 1
        if o1 == 1:
            return 1
        factors = _prime_factors(o1)
        for g in range(2, self.order):
            if all(self._raw_pow(g, o1 // f) != 1 for f in factors):
                return g
        raise ParamError("no primitive element found")  # pragma: no cover

    def _build_tables(self):
        order = self.order
        o1 = order - 1
        g = self._find_primitive()
        exp = [0] * (2 * o1 if o1 else 1)
        log = [0] * order
        x = 1
        for i in range(o1):
            exp[i] = x
            exp[i + o1] = x
            log[x] = i
            x = self._raw_mul(x, g)
        if o1 == 0:  # pragma: no cover - GF(1) impossible
            raise ParamError("degenerate field")
        self._exp = exp
        self._log = log
        self.generator = g

        def mul(a, b):
            if a == 0 or b == 0:
                return 0
            return exp[log[a] + log[b]]

        def inv(a):
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            la = log[a]
            return exp[o1 - la] if la else 1

        def div(a, b):
            return mul(a, inv(b))

        def power(a, k):
            if a == 0:
                if k == 0:
                    return 1
                if k < 0:
                    raise ZeroDivisionError("inverse of zero")
                return 0
            return exp[(log[a] * k) % o1]

        self.mul = mul
        self.inv = inv
        self.div = div
        self.pow = power

        # Addition: XOR in characteristic 2, a cached table for other small
        # fields, digitwise fallback otherwise.
        if self.char == 2:
            self.add = lambda a, b: a ^ b
            self.sub = self.add
            self.neg = lambda a: a
        elif self.deg == 1 and isinstance(self.scalar, _PrimeOps):
            p = self.char
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.neg = lambda a: (-a) % p
        else:
            s = self.scalar
            base = s.order
            deg = self.deg

            def add_slow(a, b):
                da = _digits(a, base, deg)
                db = _digits(b, base, deg)
                return _undigits([s.add(x, y) for x, y in zip(da, db)], base)

            def neg_slow(a):
                return _undigits([s.neg(x) for x in _digits(a, base, deg)], base)

            if order <= _ADD_TABLE_LIMIT:
                table = [[add_slow(a, b) for b in range(order)] for a in range(order)]
                negs = [neg_slow(a) for a in range(order)]
                self.add = lambda a, b: table[a][b]
                self.sub = lambda a, b: table[a][negs[b]]
                self.neg = lambda a: negs[a]
            else:
                self.add = add_slow
                self.neg = neg_slow
                self.sub = lambda a, b: add_slow(a, neg_slow(b))

    def elements(self):
        return range(self.order)

    def to_digits(self, x):
        return _digits(x, self.scalar.order, self.deg)

    def from_digits(self, ds):
        return _undigits(list(ds), self.scalar.order)


class Field(_PackedField):
    """GF(p^e) for prime p, elements encoded as ints in [0, p^e)."""

    def __init__(self, p, e=1, modulus=None):
        if not is_prime(p):
            raise ParamError(f"characteristic {p} is not prime")
        super().__init__(_PrimeOps(p), e, modulus)
        self.p = p
        self.e = e
        self.q = self.order

    def __repr__(self):
        return f"Field(GF({self.p}^{self.e}))" if self.e > 1 else f"Field(GF({self.p}))"


class ExtField(_PackedField):
    """GF(q^m) built on a base Field for GF(q).

    Elements encode their coefficients over the polynomial basis of the
    chosen modulus, base q.  A different working basis may be attached for
    coordinate maps; the default is the polynomial basis.
    """

    def __init__(self, base: Field, m, modulus=None, basis=None):
        super().__init__(base, m, modulus)
        self.base = base
        self.m = m
        self.q = base.order
        if basis is None:
            basis = tuple(self.q**i for i in range(m))
        basis = tuple(basis)
        if len(basis) != m or not self._basis_independent(basis):
            raise ParamError("basis is not an F_q-basis of the extension")
        self.basis = basis
        self._coords_inv_cache = {}

    def __repr__(self):
        return f"ExtField(GF({self.q}^{self.m})/GF({self.q}))"

    def _basis_independent(self, basis):
        rows = [self.to_digits(b) for b in basis]
        return linalg.rank(self.base, rows) == self.m

    def embed(self, c):
        """Embed a GF(q) element as the constant it encodes."""
        if not 0 <= c < self.q:
            raise ParamError("not a base-field element")
        return c

    def frobenius(self, x, i=1):
        """x ** (q ** (i mod m)) by repeated q-th powering."""
        for _ in range(i % self.m):
            x = self.pow(x, self.q)
        return x

    def trace(self, x):
        """Field trace down to GF(q): sum of the m Frobenius conjugates."""
        s = 0
        y = x
        for _ in range(self.m):
            s = self.add(s, y)
            y = self.pow(y, self.q)
        ds = self.to_digits(s)
        assert all(d == 0 for d in ds[1:]), "trace left the base field"
        return ds[0]

    def _coords_inverse(self, basis):
        Minv = self._coords_inv_cache.get(basis)
        if Minv is None:
            M = [[self.to_digits(b)[i] for b in basis] for i in range(self.m)]
            Minv = linalg.invert_matrix(self.base, M)
            self._coords_inv_cache[basis] = Minv
        return Minv

    def coords(self, x, basis=None):
        """Expansion of x over the given (default: attached) basis."""
        basis = self.basis if basis is None else tuple(basis)
        Minv = self._coords_inverse(basis)
        ds = self.to_digits(x)
        badd, bmul = self.base.add, self.base.mul
        out = []
        for row in Minv:
            s = 0
            for c, d in zip(row, ds):
                if c and d:
                    s = badd(s, bmul(c, d))
            out.append(s)
        return tuple(out)

    def from_coords(self, cs, basis=None):
        basis = self.basis if basis is None else tuple(basis)
        s = 0
        for c, b in zip(cs, basis):
            if c:
                s = self.add(s, self.mul(c, b))
        return s

    def gram(self, basis=None):
        """Trace Gram matrix [tr(b_i b_j)] over GF(q)."""
        basis = self.basis if basis is None else tuple(basis)
        return [[self.trace(self.mul(bi, bj)) for bj in basis] for bi in basis]

    def dual_basis(self, basis=None):
        """Trace-dual basis: tr(b_i b*_j) is the Kronecker delta."""
        basis = self.basis if basis is None else tuple(basis)
        Ginv = linalg.invert_matrix(self.base, self.gram(basis))
        out = []
        for row in Ginv:
            s = 0
            for c, b in zip(row, basis):
                if c:
                    s = self.add(s, self.mul(c, b))
            out.append(s)
        return tuple(out)

    def is_self_dual_basis(self, basis=None):
        basis = self.basis if basis is None else tuple(basis)
        G = self.gram(basis)
        return all(G[i][j] == (1 if i == j else 0) for i in range(self.m) for j in range(self.m))


def self_dual_basis_exists(q, m):
    """Existence condition: q even, or both q and m odd."""
    return q % 2 == 0 or m % 2 == 1


def find_self_dual_basis(ext: ExtField, rng=None, budget=100_000):
    """A basis equal to its trace dual, or None when none exists.

    Randomized search first; for field order <= 4096 a deterministic
    backtracking sweep guarantees an answer.  Raises BudgetError only when
    a basis must exist but the randomized budget ran out and the field is
    too large for the sweep.
    """
    q, m = ext.q, ext.m
    if not self_dual_basis_exists(q, m):
        return None
    rng = random.Random(0) if rng is None else rng
    order = ext.order
    for _ in range(budget):
        cand = tuple(rng.randrange(1, order) for _ in range(m))
        if ext.is_self_dual_basis(cand) and ext._basis_independent(cand):
            return cand
    if order <= 4096:
        found = _self_dual_backtrack(ext)
        if found is not None:
            return found
    raise BudgetError(f"self-dual basis search budget exhausted for GF({q}^{m})")


def _self_dual_backtrack(ext):
    unit_sq = [x for x in range(1, ext.order) if ext.trace(ext.mul(x, x)) == 1]

    def rec(chosen, rows):
        if len(chosen) == ext.m:
            return tuple(chosen)
        for x in unit_sq:
            if any(ext.trace(ext.mul(x, c)) != 0 for c in chosen):
                continue
            new_rows = rows + [ext.to_digits(x)]
            if linalg.rank(ext.base, new_rows) != len(new_rows):
                continue
            r = rec(chosen + [x], new_rows)
            if r is not None:
                return r
        return None

    return rec([], [])


@lru_cache(maxsize=None)
def field_from_q(q):
    """The field GF(q) with the deterministic modulus, q any prime power."""
    if q < 2:
        raise ParamError(f"{q} is not a prime power")
    p = min(_prime_factors(q))
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise ParamError(f"{q} is not a prime power")
    return Field(p, e)


@lru_cache(maxsize=None)
def ext_field(q, m):
    """GF(q^m) over GF(q), deterministic moduli, polynomial basis."""
    return ExtField(field_from_q(q), m)


def field_header(f: Field) -> str:
    mod = ",".join(str(c) for c in reversed(f.modulus))
    return f"q={f.p}^{f.e} modulus={mod}"


def parse_field_header(line: str) -> Field:
    from .errors import FormatError

    try:
        parts = dict(tok.split("=", 1) for tok in line.split())
        p_s, e_s = parts["q"].split("^")
        mod = [int(c) for c in parts["modulus"].split(",")]
        mod.reverse()
        return Field(int(p_s), int(e_s), mod)
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad field header: {line!r}") from exc
