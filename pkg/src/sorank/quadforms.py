"""Quadratic forms over a finite field: evaluation, rank, root counts.

Coefficients are stored upper-triangular (the (i,j) and (j,i) monomials
folded together) so a form has one canonical representation.  The rank
computation splits by characteristic: in odd characteristic it is the rank
of the symmetrized coefficient matrix; in characteristic 2 the symmetric
matrix lies (x1^2 + x2^2 has symmetric-matrix rank 2 but form rank 1), so
we use the alternating bilinear part plus a separate check of the form on
its radical.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import BudgetError, ParamError, SizeError

BRUTE_LIMIT = 1 << 24
EXHAUSTIVE_SAMPLE_LIMIT = 1 << 20


@dataclass(frozen=True)
class QuadraticForm:
    """sum_{i<=j} a_ij x_i x_j with coefficients in ``field``.

    ``coeffs`` is the flat upper-triangular list, row order:
    a_00..a_0(N-1), a_11..a_1(N-1), ...
    """

    nvars: int
    coeffs: tuple
    field: object = dc_field(repr=False)

    def __post_init__(self):
        N = self.nvars
        if N < 1:
            raise ParamError("form needs at least one variable")
        if len(self.coeffs) != N * (N + 1) // 2:
            raise ParamError("wrong coefficient count")
        o = self.field.order
        if any(not 0 <= c < o for c in self.coeffs):
            raise ParamError("coefficient out of range")
        object.__setattr__(
            self, "_terms", tuple((i, j, a) for (i, j), a in zip(_index_pairs(N), self.coeffs) if a)
        )

    def coeff(self, i, j):
        if i > j:
            i, j = j, i
        return self.coeffs[_flat_index(self.nvars, i, j)]

    def is_zero(self):
        return not self._terms

    def evaluate(self, x):
        if len(x) != self.nvars:
            raise ParamError("point length mismatch")
        F = self.field
        add, mul = F.add, F.mul
        s = 0
        for i, j, a in self._terms:
            xi, xj = x[i], x[j]
            if xi and xj:
                s = add(s, mul(a, mul(xi, xj)))
        return s


def _index_pairs(N):
    for i in range(N):
        for j in range(i, N):
            yield i, j


def _flat_index(N, i, j):
    return i * N - i * (i - 1) // 2 + (j - i)


def from_full_matrix(field, M):
    """Fold a full coefficient matrix (f = x^T M x) upper-triangular."""
    N = len(M)
    coeffs = []
    for i in range(N):
        for j in range(i, N):
            coeffs.append(M[i][j] if i == j else field.add(M[i][j], M[j][i]))
    return QuadraticForm(N, tuple(coeffs), field)


def sum_of_squares(field, N):
    """x_1^2 + ... + x_N^2."""
    coeffs = [1 if i == j else 0 for i, j in _index_pairs(N)]
    return QuadraticForm(N, tuple(coeffs), field)


def transform(f: QuadraticForm, M):
    """The equivalent form g(y) = f(M y); M must be N x N over f.field."""
    F = f.field
    N = f.nvars
    G = [[0] * N for _ in range(N)]
    add, mul = F.add, F.mul
    for i, j, a in f._terms:
        Mi, Mj = M[i], M[j]
        for s in range(N):
            if not Mi[s]:
                continue
            am = mul(a, Mi[s])
            row = G[s]
            for t in range(N):
                if Mj[t]:
                    row[t] = add(row[t], mul(am, Mj[t]))
    return from_full_matrix(F, G)


def rank_of_form(f: QuadraticForm) -> int:
    """Minimum variable count over all equivalent forms (0 for the zero form)."""
    if f.is_zero():
        return 0
    F = f.field
    N = f.nvars
    if F.char != 2:
        # Symmetrize: S = A + A^T for the upper-triangular A.
        S = [[0] * N for _ in range(N)]
        for i, j, a in f._terms:
            if i == j:
                S[i][i] = F.add(a, a)
            else:
                S[i][j] = a
                S[j][i] = a
        return linalg.rank(F, S)
    # Characteristic 2: alternating part B (zero diagonal), then the form
    # restricted to the radical of B is additive in each basis vector; it
    # contributes one more to the rank iff it is not identically zero.
    B = [[0] * N for _ in range(N)]
    for i, j, a in f._terms:
        if i != j:
            B[i][j] = a
            B[j][i] = a
    rb = linalg.rank(F, B)
    radical = linalg.nullspace(F, B)
    extra = 1 if any(f.evaluate(w) for w in radical) else 0
    return rb + extra


def count_roots_brute(f: QuadraticForm) -> int:
    """Exact root count by exhaustive enumeration (space capped at 2^24)."""
    import itertools

    o = f.field.order
    space = o**f.nvars
    if space > BRUTE_LIMIT:
        raise SizeError(f"search space {space} exceeds 2^24")
    count = 0
    for x in itertools.product(range(o), repeat=f.nvars):
        if f.evaluate(x) == 0:
            count += 1
    return count


def count_roots_formula(f: QuadraticForm):
    """Closed-form root-count candidates as a tuple.

    One candidate when the rank determines the count (rank 0 or odd), two
    when the rank is even and the form's type picks the sign; the caller
    disambiguates against the brute-force oracle or accepts either.
    """
    Q = f.field.order
    N = f.nvars
    r = rank_of_form(f)
    if r == 0:
        return (Q**N,)
    if r % 2 == 1:
        return (Q ** (N - 1),)
    spread = (Q - 1) * Q ** (N - r // 2 - 1)
    return tuple(sorted((Q ** (N - 1) - spread, Q ** (N - 1) + spread)))


def iter_roots(f: QuadraticForm, nonzero=False):
    import itertools

    o = f.field.order
    for x in itertools.product(range(o), repeat=f.nvars):
        if nonzero and not any(x):
            continue
        if f.evaluate(x) == 0:
            yield x


def sample_root(f, rng, nonzero=False, exhaustive_limit=EXHAUSTIVE_SAMPLE_LIMIT, budget=100_000):
    """A uniformly random (optionally nonzero) root of f.

    Small spaces are enumerated and sampled exactly; larger ones use
    rejection sampling on uniform points, which is uniform over the root
    set by construction.
    """
    o = f.field.order
    space = o**f.nvars
    if space <= exhaustive_limit:
        roots = list(iter_roots(f, nonzero=nonzero))
        if not roots:
            raise ParamError("no root exists" + (" (nonzero)" if nonzero else ""))
        return roots[rng.randrange(len(roots))]
    for _ in range(budget):
        x = tuple(rng.randrange(o) for _ in range(f.nvars))
        if nonzero and not any(x):
            continue
        if f.evaluate(x) == 0:
            return x
    raise BudgetError(f"root sampling budget {budget} exhausted")


def serialize_form(f: QuadraticForm) -> str:
    head = f"N={f.nvars} field={f.field.order}"
    return head + "\n" + " ".join(str(c) for c in f.coeffs) + "\n"
