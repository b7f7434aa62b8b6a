import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from tqftkit.duality1d import (
    DualityDatum,
    IncompatibleTangle,
    OrientedTangle,
    canonical_datum,
    change_of_basis,
    compose_tangles,
    datum_from_pairing,
    dim_invariant,
    disjoint_union,
    evaluate_tangle,
    insert_zigzag,
    random_passing_datum,
    random_tangle,
    tangle_identity,
    validate_tangle,
    zigzag_check,
    zigzag_composites,
    zigzag_tangles,
)
from tqftkit.exact import ShapeError, identity, kron, matmul, matrix, rank
from tqftkit.frobenius import dual_numbers, pairing_matrix

seeds = st.integers(0, 10_000)

CAP = OrientedTangle(("+", "-"), (), ((("in", 0), ("in", 1)),))
CUP = OrientedTangle((), ("+", "-"), ((("out", 0), ("out", 1)),))
CIRCLE = OrientedTangle((), (), (), 1)


def scaled(d, c):
    base = canonical_datum(d)
    return DualityDatum(d, d, base.ev, base.coev.scale(c))


# -- zig-zag --------------------------------------------------------------------

@pytest.mark.parametrize("d", range(1, 5))
def test_canonical_datum_passes(d):
    assert zigzag_check(canonical_datum(d))


def test_scaled_coevaluation_fails_with_composite():
    r = zigzag_check(scaled(3, 2))
    assert not r and r.axiom == "zigzag_V"
    first, _ = zigzag_composites(scaled(3, 2))
    assert first == identity(3).scale(2)


def test_shape_errors():
    bad = DualityDatum(2, 2, identity(3), identity(2))
    with pytest.raises(ShapeError):
        zigzag_check(bad)
    with pytest.raises(ShapeError):
        DualityDatum.from_json({"dim_v": 2, "dim_w": 2, "ev": [[1]], "coev": [[1]]})


def test_rank_deficient_pairing_never_passes_exhaustive_2x2():
    values = (-1, 0, 1)
    grids = [matrix([[a, b], [c, d]]) for a, b, c, d in itertools.product(values, repeat=4)]
    deficient = [m for m in grids if rank(m) < 2]
    for ev in deficient:
        for coev in grids:
            assert not zigzag_check(DualityDatum(2, 2, ev, coev))


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(1, 4))
def test_change_of_basis_preserves_duality_and_dimension(seed, d):
    datum = random_passing_datum(random.Random(seed), d)
    assert zigzag_check(datum)
    assert dim_invariant(datum) == d


def test_json_round_trip():
    datum = random_passing_datum(random.Random(1), 3)
    assert DualityDatum.from_json(datum.to_json()) == datum


# -- dimension ------------------------------------------------------------------

def test_dim_examples():
    assert dim_invariant(canonical_datum(3)) == 3
    assert dim_invariant(scaled(3, 2)) == 6
    d = datum_from_pairing(pairing_matrix(dual_numbers()))
    assert zigzag_check(d)
    assert dim_invariant(d) == 2


# -- tangles --------------------------------------------------------------------

@pytest.mark.parametrize("d", range(1, 5))
def test_circle_is_dimension(d):
    assert evaluate_tangle(CIRCLE, canonical_datum(d)).value() == d


def test_evaluation_pairing():
    # P + Q -> empty: (v, l) -> l(v)
    datum = random_passing_datum(random.Random(5), 2)
    m = evaluate_tangle(CAP, datum)
    assert m.shape == (1, 4)
    for i, a in itertools.product(range(2), repeat=2):
        assert m[0, i * 2 + a] == datum.ev[i, a]
    assert evaluate_tangle(CAP, canonical_datum(3)) == identity(3).reshape((1, 9))


def test_coevaluation_is_the_identity_of_v():
    # empty -> P + Q: x -> x id_V under V (x) V^dual = End(V)
    for d in range(1, 4):
        m = evaluate_tangle(CUP, canonical_datum(d))
        assert m.reshape((d, d)) == identity(d)
    datum = random_passing_datum(random.Random(6), 2)
    m = evaluate_tangle(CUP, datum)
    for i, a in itertools.product(range(2), repeat=2):
        assert m[i * 2 + a, 0] == datum.coev[a, i]


def test_cup_then_cap_closes_a_circle():
    t = compose_tangles(CUP, CAP)
    assert (t.in_points, t.out_points, t.arcs, t.circles) == ((), (), (), 1)
    datum = random_passing_datum(random.Random(2), 3)
    assert evaluate_tangle(t, datum).value() == 3


def test_through_arcs_and_crossings():
    datum = canonical_datum(2)
    assert evaluate_tangle(tangle_identity("+-"), datum) == identity(4)
    cross = OrientedTangle(("+", "+"), ("+", "+"), ((("in", 0), ("out", 1)), (("in", 1), ("out", 0))))
    m = evaluate_tangle(cross, datum)
    assert matmul(m, m) == identity(4)
    assert m != identity(4)


@pytest.mark.parametrize("arcs", [
    ((("in", 0), ("in", 1)),),                    # + joined to + on the same side
    ((("in", 0), ("out", 0)), (("in", 1), ("out", 1))),  # + through to -
])
def test_incompatible_tangles(arcs):
    t = OrientedTangle(("+", "+"), ("-", "+") if len(arcs) == 2 else (), arcs)
    assert not validate_tangle(t)
    with pytest.raises(IncompatibleTangle):
        evaluate_tangle(t, canonical_datum(1))


def test_unmatched_and_doubly_matched_points():
    assert validate_tangle(OrientedTangle(("+",), (), ())).axiom == "matching"
    t = OrientedTangle(("+", "-", "+"), (), ((("in", 0), ("in", 1)), (("in", 2), ("in", 1))))
    assert validate_tangle(t).axiom == "matching"
    assert validate_tangle(OrientedTangle(("x",), ("x",), ())).axiom == "sign"


def test_tangle_json_round_trip():
    t = OrientedTangle.from_json({"in": ["+", "-"], "out": [], "arcs": [[["in", 0], ["in", 1]]],
                                  "circles": 0})
    assert t == CAP
    assert OrientedTangle.from_json(t.to_json()) == t


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_evaluation_matches_entrywise_oracle(seed):
    rng = random.Random(seed)
    t = random_tangle(rng)
    d = rng.randint(1, 3)
    # any shapes will do here; the datum need not pass the zig-zag check
    datum = DualityDatum(d, d, matrix([[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]),
                         matrix([[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)]))
    assert evaluate_tangle(t, datum).to_nested() == oracles.tangle_brute_force(t, datum)


@pytest.mark.parametrize("sign", ["+", "-"])
@pytest.mark.parametrize("d", range(1, 5))
def test_snake_is_identity(sign, d):
    make, kill = zigzag_tangles(sign)
    snake = compose_tangles(make, kill)
    assert snake == tangle_identity(sign)
    datum = random_passing_datum(random.Random(d), d)
    composite = matmul(evaluate_tangle(kill, datum), evaluate_tangle(make, datum))
    assert composite == identity(d)


def test_snake_fails_for_bad_datum():
    make, kill = zigzag_tangles("+")
    datum = scaled(2, 2)
    composite = matmul(evaluate_tangle(kill, datum), evaluate_tangle(make, datum))
    assert composite == identity(2).scale(2)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_zigzag_insertion_leaves_values_unchanged(seed):
    rng = random.Random(seed)
    t = random_tangle(rng)
    datum = random_passing_datum(rng, rng.randint(1, 4) if not t.in_points + t.out_points else rng.randint(1, 2))
    value = evaluate_tangle(t, datum)
    for side, points in (("in", t.in_points), ("out", t.out_points)):
        for j in range(len(points)):
            assert evaluate_tangle(insert_zigzag(t, side, j), datum) == value


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_disjoint_union_is_kronecker(seed):
    rng = random.Random(seed)
    datum = random_passing_datum(rng, rng.randint(1, 2))
    t1, t2 = random_tangle(rng, 3), random_tangle(rng, 3)
    both = evaluate_tangle(disjoint_union(t1, t2), datum)
    assert both == kron(evaluate_tangle(t1, datum), evaluate_tangle(t2, datum))


def tangle_with_inputs(rng, signs):
    """Random compatible tangle whose incoming boundary is ``signs``."""
    free = list(range(len(signs)))
    rng.shuffle(free)
    outs, arcs = [], []
    while free:
        i = free.pop()
        partner = next((j for j in free if signs[j] != signs[i]), None)
        if partner is not None and rng.random() < 0.5:
            free.remove(partner)
            arcs.append((("in", i), ("in", partner)))
        else:
            outs.append(signs[i])
            arcs.append((("in", i), ("out", len(outs) - 1)))
    for _ in range(rng.randint(0, 1)):
        outs.extend(["-", "+"])
        arcs.append((("out", len(outs) - 2), ("out", len(outs) - 1)))
    return OrientedTangle(tuple(signs), tuple(outs), tuple(arcs), rng.randint(0, 1))


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_composition_is_functorial(seed):
    rng = random.Random(seed)
    datum = random_passing_datum(rng, rng.randint(1, 2))
    t1 = random_tangle(rng, 3)
    t2 = tangle_with_inputs(rng, t1.out_points)
    composed = compose_tangles(t1, t2)
    assert validate_tangle(composed)
    assert composed.circles >= t1.circles + t2.circles
    assert evaluate_tangle(composed, datum) == matmul(evaluate_tangle(t2, datum), evaluate_tangle(t1, datum))


def test_composition_needs_matching_boundaries():
    with pytest.raises(IncompatibleTangle):
        compose_tangles(CUP, tangle_identity("++"))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_scaled_data_fail(seed):
    rng = random.Random(seed)
    datum = random_passing_datum(rng, rng.randint(1, 4))
    c = rng.choice([2, -1, 3])
    bad = change_of_basis(datum, identity(datum.dim_v))
    bad = DualityDatum(bad.dim_v, bad.dim_w, bad.ev, bad.coev.scale(c))
    assert not zigzag_check(bad)
