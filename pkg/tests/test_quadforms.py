import itertools
import random

import pytest

from sorank import linalg
from sorank.errors import ParamError, SizeError
from sorank.fields import ext_field, field_from_q
from sorank.quadforms import (
    QuadraticForm,
    count_roots_brute,
    count_roots_formula,
    from_full_matrix,
    iter_roots,
    rank_of_form,
    sample_root,
    sum_of_squares,
    transform,
)

F2 = field_from_q(2)
F3 = field_from_q(3)
F5 = field_from_q(5)


def _random_form(field, N, rng):
    ncoef = N * (N + 1) // 2
    return QuadraticForm(N, tuple(rng.randrange(field.order) for _ in range(ncoef)), field)


def _random_invertible(field, N, rng):
    while True:
        M = [[rng.randrange(field.order) for _ in range(N)] for _ in range(N)]
        if linalg.rank(field, M) == N:
            return M


def test_evaluate_examples():
    f = QuadraticForm(2, (1, 0, 1), F3)  # x1^2 + x2^2
    assert f.evaluate((0, 0)) == 0
    assert f.evaluate((1, 1)) == 2
    with pytest.raises(ParamError):
        f.evaluate((1, 1, 1))


def test_homogeneity():
    rng = random.Random(19)
    for field in (F2, F3, F5, field_from_q(4)):
        for _ in range(500):
            N = rng.randrange(1, 5)
            f = _random_form(field, N, rng)
            lam = rng.randrange(field.order)
            x = tuple(rng.randrange(field.order) for _ in range(N))
            scaled = tuple(field.mul(lam, v) for v in x)
            assert f.evaluate(scaled) == field.mul(field.mul(lam, lam), f.evaluate(x))


def test_rank_examples():
    assert rank_of_form(QuadraticForm(2, (0, 0, 0), F2)) == 0
    # x1^2 + x2^2 = (x1 + x2)^2 over GF(2): rank 1
    f = QuadraticForm(2, (1, 0, 1), F2)
    assert rank_of_form(f) == 1
    # verify the claimed equivalence by exhaustive evaluation
    g = QuadraticForm(2, (1, 0, 0), F2)  # y1^2
    M = [[1, 0], [1, 0]]  # y1 = x1 + x2 embedded as a square substitution
    for x in itertools.product(range(2), repeat=2):
        y = ((x[0] + x[1]) % 2, 0)
        assert f.evaluate(x) == g.evaluate(y)
    # x1 x2 over GF(3): rank 2
    assert rank_of_form(QuadraticForm(2, (0, 1, 0), F3)) == 2
    # symmetric-matrix rank would wrongly give 2 here
    assert rank_of_form(QuadraticForm(2, (1, 0, 1), field_from_q(4))) == 1


def test_count_roots_brute_examples():
    assert count_roots_brute(QuadraticForm(3, (0,) * 6, F2)) == 8
    assert count_roots_brute(QuadraticForm(2, (1, 0, 1), F3)) == 1
    assert count_roots_brute(QuadraticForm(2, (1, 0, 1), F5)) == 9


def test_count_roots_formula_examples():
    assert count_roots_formula(QuadraticForm(2, (1, 0, 1), F3)) == (1, 5)
    assert count_roots_formula(QuadraticForm(2, (1, 0, 1), F2)) == (2,)
    assert count_roots_formula(QuadraticForm(2, (1, 0, 1), F5)) == (1, 9)
    assert count_roots_formula(QuadraticForm(2, (0, 0, 0), F3)) == (9,)


@pytest.mark.parametrize("field", [F2, F3, F5, field_from_q(4)], ids=lambda f: repr(f))
def test_formula_matches_brute_force(field, trials=60):
    rng = random.Random(field.order)
    for _ in range(trials):
        N = rng.randrange(1, 5)
        f = _random_form(field, N, rng)
        brute = count_roots_brute(f)
        assert brute in count_roots_formula(f)


def test_equivalent_forms_share_root_count_and_rank():
    rng = random.Random(29)
    for field in (F2, F3, field_from_q(4)):
        for _ in range(25):
            N = rng.randrange(2, 4)
            f = _random_form(field, N, rng)
            for _ in range(4):
                M = _random_invertible(field, N, rng)
                g = transform(f, M)
                assert count_roots_brute(g) == count_roots_brute(f)
                assert rank_of_form(g) == rank_of_form(f)


def test_transform_is_evaluation_composition():
    rng = random.Random(37)
    field = F3
    f = _random_form(field, 3, rng)
    M = _random_invertible(field, 3, rng)
    g = transform(f, M)
    for x in itertools.product(range(3), repeat=3):
        Mx = tuple(
            field.add(field.add(field.mul(M[i][0], x[0]), field.mul(M[i][1], x[1])), field.mul(M[i][2], x[2]))
            for i in range(3)
        )
        assert g.evaluate(x) == f.evaluate(Mx)


def test_sample_root_examples():
    f2 = QuadraticForm(2, (1, 0, 1), F2)
    assert sample_root(f2, random.Random(0), nonzero=True) == (1, 1)
    f3 = QuadraticForm(2, (1, 0, 1), F3)
    with pytest.raises(ParamError):
        sample_root(f3, random.Random(0), nonzero=True)


def test_sample_root_rejection_path_is_a_root():
    f = sum_of_squares(F2, 8)
    rng = random.Random(5)
    for _ in range(50):
        x = sample_root(f, rng, nonzero=True, exhaustive_limit=16)
        assert f.evaluate(x) == 0 and any(x)


def test_sample_root_roughly_uniform():
    from scipy import stats

    f5 = QuadraticForm(2, (1, 0, 1), F5)
    roots = [r for r in iter_roots(f5, nonzero=True)]
    assert len(roots) == 8
    rng = random.Random(99)
    counts = {r: 0 for r in roots}
    for _ in range(8000):
        counts[sample_root(f5, rng, nonzero=True)] += 1
    p = stats.chisquare(list(counts.values())).pvalue
    assert p > 0.001


def test_brute_force_size_cap():
    with pytest.raises(SizeError):
        count_roots_brute(sum_of_squares(F5, 12))


def test_ext_field_forms():
    E = ext_field(2, 2)
    f = sum_of_squares(E, 3)
    # z1^2 + z2^2 + z3^2 over GF(4); (1, w, w^2) is a root
    assert f.evaluate((1, 2, 3)) == 0
    brute = count_roots_brute(f)
    assert brute in count_roots_formula(f)


def test_from_full_matrix_folds():
    M = [[1, 2], [1, 1]]
    f = from_full_matrix(F3, M)
    assert f.coeffs == (1, 0, 1)  # x1^2 + (2+1) x1 x2 + x2^2
