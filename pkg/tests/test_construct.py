import random

import pytest

from sorank.construct import (
    construct_fq_so_basis,
    construct_fqm_so_basis,
    max_so_dimension,
    sample_code_star,
    so_code,
    so_flat_vectors,
)
from sorank.errors import ParamError
from sorank.fields import ext_field, field_from_q
from sorank.words import (
    LinearCode,
    dual,
    is_contained_in_dual,
    is_self_orthogonal,
    trace_inner_product,
    vector_inner_product,
)

F2 = field_from_q(2)
F3 = field_from_q(3)


def test_max_so_dimension():
    assert max_so_dimension(4) == 1
    assert max_so_dimension(8) == 3
    assert max_so_dimension(9) == 4


def test_parameter_validation():
    rng = random.Random(0)
    with pytest.raises(ParamError):
        so_flat_vectors(F2, 4, 2, rng)  # limit is (4-1)//2 = 1
    with pytest.raises(ParamError):
        so_flat_vectors(F2, 4, 0, rng)
    with pytest.raises(ParamError):
        sample_code_star(F2, 2, 2, 3, rng)


def test_flat_vectors_are_orthogonal_and_independent():
    from sorank import linalg

    rng = random.Random(13)
    for F in (F2, F3, ext_field(2, 2)):
        for D in (5, 8, 11):
            k = max_so_dimension(D)
            vecs = so_flat_vectors(F, D, k, rng)
            assert linalg.rank(F, vecs) == k
            for u in vecs:
                for v in vecs:
                    s = 0
                    for a, b in zip(u, v):
                        s = F.add(s, F.mul(a, b))
                    assert s == 0


@pytest.mark.parametrize("q", [2, 3, 4])
def test_matrix_codes_self_orthogonal_and_dual_contained(q):
    field = field_from_q(q)
    rng = random.Random(q)
    for seed in range(20):
        code = so_code(field, 2, 4, 3, rng)
        assert code.k == 3
        assert is_self_orthogonal(code)
        assert is_contained_in_dual(code)
        D = dual(code)
        assert D.k == 8 - 3


@pytest.mark.parametrize("q,n", [(2, 5), (3, 4), (4, 3)])
def test_vector_codes_self_orthogonal_and_dual_contained(q, n):
    ext = ext_field(q, 3)
    rng = random.Random(q * 10 + n)
    k = max_so_dimension(n)
    for seed in range(20):
        code = so_code(None, n, 3, k, rng, repr="vector", ext=ext)
        assert code.k == k
        assert is_self_orthogonal(code)
        assert is_contained_in_dual(code)


def test_zero_code():
    code = so_code(F2, 2, 2, 0, random.Random(0))
    assert code.k == 0 and is_self_orthogonal(code)


def test_basis_helpers_match_code_constructor():
    rng = random.Random(7)
    words = construct_fq_so_basis(F3, 2, 3, 2, rng)
    assert all(trace_inner_product(u, v) == 0 for u in words for v in words)
    E = ext_field(3, 2)
    vecs = construct_fqm_so_basis(E, 5, 2, rng)
    assert all(vector_inner_product(u, v) == 0 for u in vecs for v in vecs)


def test_determinism_with_fixed_seed():
    a = so_code(F2, 2, 4, 3, random.Random(42))
    b = so_code(F2, 2, 4, 3, random.Random(42))
    assert a.basis == b.basis


def test_construction_varies_with_seed():
    keys = {so_code(F2, 2, 4, 3, random.Random(s)).canonical_key() for s in range(40)}
    assert len(keys) > 1


def test_code_star_structure():
    rng = random.Random(3)
    for _ in range(30):
        code = sample_code_star(F2, 2, 4, 3, rng)
        assert code.k == 3
        sub = LinearCode.from_matrix_words(list(code.basis[:-1]), F2, 2, 4)
        assert is_self_orthogonal(sub)


def test_code_star_k1_is_any_nonzero_word():
    rng = random.Random(11)
    code = sample_code_star(F2, 2, 2, 1, rng)
    assert code.k == 1
