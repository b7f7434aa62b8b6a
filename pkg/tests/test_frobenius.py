import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tqftkit.exact import SingularMatrix, Tensor, contract, identity, kron, matmul, matrix, vector
from tqftkit.frobenius import (
    FrobeniusAlgebra,
    comultiplication,
    cyclic_group_algebra,
    dual_numbers,
    generator_tensor,
    ground_field,
    handle_element,
    multiplication_matrix,
    pairing,
    pairing_matrix,
    product_algebra,
    random_frobenius,
    standard_algebras,
    surface_invariant,
    swap_matrix,
    truncated_polynomial,
    validate_frobenius,
)

STANDARD = standard_algebras()
seeds = st.integers(0, 10_000)


def random_algebra(seed):
    return random_frobenius(random.Random(seed))


def algebra_ids(a):
    return a.name


# -- validation -----------------------------------------------------------------

def test_standard_algebras_validate():
    for a in STANDARD:
        assert validate_frobenius(a), a.name


def test_ground_field_and_dual_numbers_pass():
    assert validate_frobenius(ground_field()).passed
    assert validate_frobenius(dual_numbers()).passed


def test_degenerate_trace_fails_nondegeneracy():
    a = dual_numbers(trace=(1, 0))
    assert pairing_matrix(a) == matrix([[1, 0], [0, 0]])
    r = validate_frobenius(a)
    assert not r.passed
    assert r.axiom == "nondegeneracy"
    assert r.witness == (1,)


def test_noncommutative_table_fails_commutativity():
    from tqftkit.hochschild import matrix_algebra, matrix_trace

    m = matrix_algebra(2)
    a = FrobeniusAlgebra(4, m.mult, m.unit, matrix_trace(2))
    r = validate_frobenius(a)
    assert r.axiom == "commutativity"


def test_nonassociative_table_fails_associativity():
    # e1 e1 = e2 and e1 e2 = e2 e1 = e1, so (e1 e1) e2 = 0 but e1 (e1 e2) = e2
    items3 = {(0, j, j): 1 for j in range(3)}
    items3.update({(j, 0, j): 1 for j in range(1, 3)})
    items3[(1, 1, 2)] = 1
    items3[(1, 2, 1)] = 1
    items3[(2, 1, 1)] = 1
    a = FrobeniusAlgebra(3, Tensor.from_sparse((3, 3, 3), items3), vector([1, 0, 0]), vector([0, 0, 1]))
    r = validate_frobenius(a)
    assert r.axiom == "associativity"


def test_broken_unit_fails_unit():
    a = dual_numbers()
    bad = FrobeniusAlgebra(2, a.mult, vector([1, 1]), a.trace)
    assert validate_frobenius(bad).axiom == "unit"


def test_shape_mismatch_is_reported():
    a = dual_numbers()
    bad = FrobeniusAlgebra(3, a.mult, a.unit, a.trace)
    assert validate_frobenius(bad).axiom == "shape"


def test_json_round_trip():
    for a in STANDARD:
        b = FrobeniusAlgebra.from_json(a.to_json())
        assert b == a


# -- pairing and structure tensors ----------------------------------------------

def test_pairing_examples():
    assert pairing(ground_field()).g == matrix([[1]])
    p = pairing(dual_numbers())
    assert p.g == matrix([[0, 1], [1, 0]]) == p.g_inv
    assert pairing(cyclic_group_algebra(2)).g == identity(2)


def test_pairing_of_degenerate_algebra_raises():
    with pytest.raises(SingularMatrix):
        pairing(dual_numbers(trace=(1, 0)))


def coproduct_of(a, k):
    d = comultiplication(a)
    return {(i, j): d[k, i, j] for i in range(a.dim) for j in range(a.dim) if d[k, i, j]}


def test_comultiplication_examples():
    assert coproduct_of(ground_field(), 0) == {(0, 0): 1}
    assert coproduct_of(dual_numbers(), 0) == {(0, 1): 1, (1, 0): 1}
    assert coproduct_of(cyclic_group_algebra(2), 0) == {(0, 0): 1, (1, 1): 1}


def test_handle_element_examples():
    assert handle_element(ground_field()) == vector([1])
    assert handle_element(dual_numbers()) == vector([0, 2])
    assert handle_element(cyclic_group_algebra(2)) == vector([2, 0])


def test_surface_invariant_examples():
    assert [surface_invariant(dual_numbers(), g) for g in range(4)] == [0, 2, 0, 0]
    z2 = cyclic_group_algebra(2)
    assert [surface_invariant(z2, g) for g in range(6)] == [2 ** g for g in range(6)]
    with pytest.raises(ValueError):
        surface_invariant(z2, -1)


def test_product_algebra_closed_form():
    weights = [1, 2, -3]
    a = product_algebra(weights)
    for g in range(5):
        assert surface_invariant(a, g) == sum(Fraction(w) ** (1 - g) for w in weights)


@pytest.mark.parametrize("a", STANDARD, ids=algebra_ids)
def test_genus_series_matches_brute_force(a):
    assert [surface_invariant(a, g) for g in range(5)] == oracles.genus_series(a, 4)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_genus_series_matches_brute_force_on_random_algebras(seed):
    a = random_algebra(seed)
    assert [surface_invariant(a, g) for g in range(4)] == oracles.genus_series(a, 3)


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_coproduct_matches_duality_oracle(seed):
    a = random_algebra(seed)
    d = comultiplication(a)
    ref = oracles.coproduct_by_duality(a)
    n = a.dim
    for k in range(n):
        for i in range(n):
            for j in range(n):
                assert d[k, i, j] == oracles.frac(ref[k][i][j])


# -- generator tensors ----------------------------------------------------------

def test_generator_examples():
    assert generator_tensor(ground_field(), "cap") == matrix([[1]])
    a = dual_numbers()
    x = vector([0, 1])
    xx = kron(x.reshape((2, 1)), x.reshape((2, 1)))
    assert matmul(generator_tensor(a, "pants"), xx).is_zero()
    assert generator_tensor(a, "cup") == matrix([[1], [0]])
    with pytest.raises(ValueError):
        generator_tensor(a, "handle")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_swap_exchanges_factors(n):
    s = swap_matrix(n)
    for i in range(n):
        for j in range(n):
            ei = vector([int(k == i) for k in range(n)]).reshape((n, 1))
            ej = vector([int(k == j) for k in range(n)]).reshape((n, 1))
            assert matmul(s, kron(ei, ej)) == kron(ej, ei)
    assert matmul(s, s) == identity(n * n)


# -- properties -----------------------------------------------------------------

def frobenius_sides(a):
    n = a.dim
    m = multiplication_matrix(a)
    delta = generator_tensor(a, "copants")
    i = identity(n)
    return (
        matmul(delta, m),
        matmul(kron(m, i), kron(i, delta)),
        matmul(kron(i, m), kron(delta, i)),
    )


@pytest.mark.parametrize("a", STANDARD, ids=algebra_ids)
def test_frobenius_compatibility(a):
    mid, left, right = frobenius_sides(a)
    assert mid == left == right


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_frobenius_compatibility_random(seed):
    mid, left, right = frobenius_sides(random_algebra(seed))
    assert mid == left == right


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_cap_after_pants_is_the_pairing(seed):
    a = random_algebra(seed)
    n = a.dim
    form = matmul(generator_tensor(a, "cap"), multiplication_matrix(a))
    assert form.reshape((n, n)) == pairing_matrix(a)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_sphere_and_torus_identities(seed):
    a = random_algebra(seed)
    assert surface_invariant(a, 0) == a.tr(a.unit)
    assert surface_invariant(a, 1) == a.dim


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_handle_element_is_central(seed):
    a = random_algebra(seed)
    h = handle_element(a)
    for i in range(a.dim):
        e = a.basis(i)
        assert a.product(h, e) == a.product(e, h)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_counit_law(seed):
    # (tr (x) id) delta = id
    a = random_algebra(seed)
    n = a.dim
    counit = contract(comultiplication(a), a.trace, [(1, 0)])
    assert counit == identity(n)


def test_truncated_polynomial_default_trace():
    a = truncated_polynomial(4)
    assert a.trace == vector([0, 0, 0, 1])
    assert validate_frobenius(a)
    assert [surface_invariant(a, g) for g in range(3)] == [0, 4, 0]
