"""Tests for product construction, verification and classification."""

import random
from fractions import Fraction

import pytest

from tpw.algebra import Block, Element, FamilyMismatchError, GeneralizedWitt, WittType
from tpw.halfderiv import assemble, component_vector, solve_degrees
from tpw.lattice import AdditiveMap, BiadditiveForm, Pairing, Window, box_points
from tpw.tpstruct import (
    ExplicitProduct,
    ExtensionByZero,
    LimitExceededError,
    Mutation,
    SingleIdempotent,
    ZeroProduct,
    classify,
    left_mult_table,
    multiply,
    product_from_json,
    product_to_json,
    verify,
)


def witt_spec():
    return WittType(AdditiveMap([1]))


def b0_spec():
    return Block.with_form(BiadditiveForm([[0, -1], [1, 0]]))


def b1_spec():
    return Block.from_gh(AdditiveMap([-1, 0]), AdditiveMap([0, 1]))


def star_product():
    return ExtensionByZero({((0, -2), (0, -2)): Element({(0, -1): Fraction(1)})})


def test_mutation_multiply_examples():
    spec = witt_spec()
    mut = Mutation(Element({(0,): 1}))
    assert multiply(spec, mut, spec.basis((2,)), spec.basis((3,))) == Element({(5,): 1})
    two_term = Mutation(Element({(1,): 1, (-1,): 2}))
    out = multiply(spec, two_term, spec.basis((0,)), spec.basis((0,)))
    assert out == Element({(1,): 1, (-1,): 2})


def test_single_idempotent_multiply():
    spec = b0_spec()
    p = SingleIdempotent()
    u0 = spec.basis((0, 0))
    u1 = spec.basis((0, 1))
    assert multiply(spec, p, u0, u0) == u0
    assert multiply(spec, p, u0, u1).is_zero


def test_extension_by_zero_multiply():
    spec = b1_spec()
    p = star_product()
    u = spec.basis((0, -2))
    assert multiply(spec, p, u, u) == Element({(0, -1): 1})
    assert multiply(spec, p, u, spec.basis((1, 0))).is_zero


def test_extension_by_zero_validates_domain():
    spec = b1_spec()
    bad_key = ExtensionByZero({((1, 0), (1, 0)): Element({(0, -1): Fraction(1)})})
    with pytest.raises(ValueError):
        multiply(spec, bad_key, spec.basis((1, 0)), spec.basis((1, 0)))
    bad_value = ExtensionByZero({((0, -2), (0, -2)): Element({(1, 1): Fraction(1)})})
    with pytest.raises(ValueError):
        multiply(spec, bad_value, spec.basis((0, -2)), spec.basis((0, -2)))


def test_mutation_rejected_on_block():
    with pytest.raises(FamilyMismatchError):
        multiply(b0_spec(), Mutation(Element({(0, 0): 1})),
                 b0_spec().basis((0, 0)), b0_spec().basis((0, 0)))


def test_mutation_passes_tp_axioms_and_fails_poisson():
    spec = witt_spec()
    report = verify(spec, Mutation(Element({(0,): 1})), Window(4, 2))
    assert report.commutative.passed
    assert report.associative.passed
    assert report.trans_leibniz.passed
    assert not report.poisson_leibniz.passed
    labels, lhs, rhs = report.poisson_leibniz.witness
    assert labels == ((0,), (0,), (1,))
    assert lhs == Element({(1,): 1})
    assert rhs == Element({(1,): 2})


def test_random_mutations_pass_exactly():
    rng = random.Random(4242)
    spec = witt_spec()
    for _ in range(6):
        terms = {}
        for _ in range(rng.randint(1, 5)):
            idx = (rng.randint(-3, 3),)
            terms[idx] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        w = Element(terms)
        if w.is_zero:
            continue
        report = verify(spec, Mutation(w), Window(3, 1))
        assert report.tp_pass


def test_zero_product_passes_everything():
    report = verify(b1_spec(), ZeroProduct(), Window(2, 1))
    assert report.all_pass


def test_single_idempotent_passes_all_four():
    report = verify(b0_spec(), SingleIdempotent(), Window(2, 1))
    assert report.all_pass


def test_extension_by_zero_passes_all_four():
    report = verify(b1_spec(), star_product(), Window(3, 2))
    assert report.all_pass


def test_extension_by_zero_both_sides_vanish():
    """The compatibility identity holds because both sides are zero."""
    spec = b1_spec()
    p = star_product()
    pts = box_points(2, 2)
    for x in pts:
        for y in pts:
            for z in pts:
                ux, uy, uz = spec.basis(x), spec.basis(y), spec.basis(z)
                lhs = 2 * multiply(spec, p, uz, spec.bracket(ux, uy))
                rhs = spec.bracket(multiply(spec, p, uz, ux), uy) \
                    + spec.bracket(ux, multiply(spec, p, uz, uy))
                assert lhs.is_zero and rhs.is_zero


def test_scaling_preserves_the_identities():
    spec = b1_spec()
    scaled = ExtensionByZero(
        {((0, -2), (0, -2)): Element({(0, -1): Fraction(-7, 3)})})
    report = verify(spec, scaled, Window(3, 2))
    assert report.all_pass


def test_corrupted_idempotent_fails_with_witness():
    spec = b0_spec()
    bad = ExplicitProduct({((1, 0), (1, 0)): Element({(1, 0): Fraction(1)})})
    report = verify(spec, bad, Window(2, 1))
    assert not report.tp_pass
    assert report.trans_leibniz.witness is not None


def test_verify_respects_max_triples():
    with pytest.raises(LimitExceededError):
        verify(b0_spec(), SingleIdempotent(), Window(2, 1), max_triples=10)


def test_left_mult_table_single_idempotent():
    spec = b0_spec()
    window = Window(2, 1)
    comps = left_mult_table(spec, SingleIdempotent(), (0, 0), window)
    assert list(comps) == [(0, 0)]
    assert comps[(0, 0)].table == {(0, 0): Fraction(1)}


def test_left_mult_table_zero_product():
    assert left_mult_table(b0_spec(), ZeroProduct(), (0, 0), Window(2, 1)) == {}


def test_left_mult_table_mutation_shifts():
    spec = witt_spec()
    comps = left_mult_table(spec, Mutation(Element({(1,): 1, (-1,): 1})),
                            (0,), Window(3, 1))
    assert set(comps) == {(1,), (-1,)}
    for table in (comps[(1,)].table, comps[(-1,)].table):
        assert table == {x: Fraction(1) for x in box_points(3, 1)}


def test_left_mult_components_are_half_derivations():
    """Left multiplication by any element of a passing product solves the
    assembled system at its degree."""
    spec = b0_spec()
    window = Window(2, 1)
    comps = left_mult_table(spec, SingleIdempotent(), (0, 0), window)
    for degree, comp in comps.items():
        system = assemble(spec, degree, window)
        vec = component_vector(spec, window, comp)
        assert all(r == 0 for r in system.matrix.apply(vec))


def test_classify_block_g0():
    spec = b0_spec()
    window = Window(3, 2)
    solved = solve_degrees(spec, window, 2)
    res = classify(spec, {d: b for d, (_, b) in solved.items()}, window, 2,
                   n_samples=4, seed=3)
    assert res.n_parameters == 1
    gen = res.generators[0]
    assert list(gen.table) == [((0, 0), (0, 0))]
    value = gen.table[((0, 0), (0, 0))]
    assert set(value.terms) == {(0, 0)}
    assert res.associativity_pass


def test_classify_b1_extension_family():
    spec = b1_spec()
    window = Window(3, 2)
    solved = solve_degrees(spec, window, 2)
    res = classify(spec, {d: b for d, (_, b) in solved.items()}, window, 2,
                   n_samples=4, seed=3)
    assert res.n_parameters == 1
    gen = res.generators[0]
    assert list(gen.table) == [((0, -2), (0, -2))]
    assert gen.table[((0, -2), (0, -2))] == Element({(0, -1): 1})
    assert res.associativity_pass


def test_classify_generalized_witt_returns_zero_family():
    spec = GeneralizedWitt(Pairing([[1, 0], [0, 1]]))
    window = Window(2, 1)
    solved = solve_degrees(spec, window, 1)
    res = classify(spec, {d: b for d, (_, b) in solved.items()}, window, 1,
                   n_samples=2, seed=1)
    assert res.zero_only


def test_classify_no_center_spec_returns_zero_family():
    # h never takes the values -1 or -2 on the lattice
    spec = Block.from_gh(AdditiveMap([-1, 0]), AdditiveMap([0, 3]))
    window = Window(3, 2)
    solved = solve_degrees(spec, window, 2)
    res = classify(spec, {d: b for d, (_, b) in solved.items()}, window, 2,
                   n_samples=2, seed=1)
    assert res.zero_only


def test_classify_witt_type_finds_the_group_product():
    """Inside a bounded degree box the only mutation whose left
    multiplications all fit is the group product itself (a multiplier at
    c != 0 shifts some degree out of the box). Its truncated table loses
    associativity at the window boundary, which the samples report."""
    spec = witt_spec()
    window = Window(4, 2)
    solved = solve_degrees(spec, window, 2)
    res = classify(spec, {d: b for d, (_, b) in solved.items()}, window, 2,
                   n_samples=1, seed=9)
    assert res.n_parameters == 1
    table = res.generators[0].table
    for (a, b), value in table.items():
        assert value == Element({(a[0] + b[0],): 1})
    ok, witness = res.associativity_samples[0]
    assert not ok
    assert witness is not None


def test_product_json_round_trip():
    for product in (ZeroProduct(), SingleIdempotent(),
                    Mutation(Element({(1,): Fraction(2, 3)})),
                    star_product(),
                    ExplicitProduct({((0, 0), (0, 0)): Element({(0, 0): 1})})):
        data = product_to_json(product)
        back = product_from_json(data)
        assert product_to_json(back) == data


def test_classify_requires_all_degrees():
    from tpw.halfderiv import MissingDegreeError
    spec = b0_spec()
    window = Window(2, 1)
    solved = solve_degrees(spec, window, 1)
    bases = {d: b for d, (_, b) in solved.items()}
    bases.pop((0, 0))
    with pytest.raises(MissingDegreeError):
        classify(spec, bases, window, 1)


def test_mutation_left_mults_are_half_derivations():
    spec = witt_spec()
    window = Window(3, 1)
    w = Element({(1,): Fraction(1, 2), (0,): Fraction(-3)})
    comps = left_mult_table(spec, Mutation(w), (1,), window)
    assert set(comps) == {(2,), (1,)}
    for degree, comp in comps.items():
        system = assemble(spec, degree, window)
        vec = component_vector(spec, window, comp)
        assert all(r == 0 for r in system.matrix.apply(vec))


def test_star_left_mult_is_the_alpha_map():
    spec = b1_spec()
    window = Window(3, 2)
    comps = left_mult_table(spec, star_product(), (0, -2), window)
    assert list(comps) == [(0, 1)]
    assert comps[(0, 1)].table == {(0, -2): Fraction(1)}
    system = assemble(spec, (0, 1), window)
    vec = component_vector(spec, window, comps[(0, 1)])
    assert all(r == 0 for r in system.matrix.apply(vec))
