import itertools
import random

import pytest

from brtjurina.errors import InclusionError, InputError, RankMismatchError
from brtjurina.orders import ModuleOrder, MonomialOrder, OrderKind, Tie
from brtjurina.polynomial import Polynomial, Ring
from brtjurina.standard_basis import (
    Dimension, SubmoduleGens, Vector, apply_relation, colength, ecart,
    is_member, is_submodule, lift, module_intersection, module_sum,
    mora_normal_form, relations, same_module, std, subquotient_dim, syzygies
)


R1 = Ring(('x',))
R2 = Ring(('x', 'y'))
R3 = Ring(('x', 'y', 'z'))


def ideal(ring, *polys):
    return SubmoduleGens.ideal(ring, polys)


def lattice_colength(exps, n):
    """Count monomials outside a monomial ideal by walking the lattice."""
    bounds = [None] * n
    for exp in exps:
        support = [i for i, e in enumerate(exp) if e]
        if not support:
            return 0
        if len(support) == 1:
            i = support[0]
            bounds[i] = exp[i] if bounds[i] is None else min(bounds[i], exp[i])
    if any(b is None for b in bounds):
        return None
    count = 0
    for point in itertools.product(*(range(b) for b in bounds)):
        if not any(all(p >= e for p, e in zip(point, exp)) for exp in exps):
            count += 1
    return count


def random_monomial_ideal(rng, n):
    exps = []
    for i in range(n):
        if rng.random() < 0.9:
            exps.append(tuple(rng.randint(1, 6) if j == i else 0
                              for j in range(n)))
    for _ in range(rng.randint(0, 4)):
        exps.append(tuple(rng.randint(0, 6) for _ in range(n)))
    return exps


def test_monomial_colength_matches_lattice_count():
    rng = random.Random(2024)
    checked = 0
    for _ in range(120):
        n = rng.randint(1, 3)
        ring = Ring(('x', 'y', 'z')[:n])
        exps = random_monomial_ideal(rng, n)
        if not exps:
            continue
        expected = lattice_colength(exps, n)
        result = colength(ideal(ring, *(ring.monomial(e) for e in exps)))
        if expected is None:
            assert result.is_infinite
        else:
            assert result == expected
        checked += 1
    assert checked >= 100


def test_colength_is_local():
    x = R1.var('x')
    # 1 - x is a unit at the origin
    assert colength(ideal(R1, x - x ** 2)) == 1
    assert colength(ideal(R1, x ** 3 * (1 + x))) == 3
    assert colength(ideal(R1, 1 + x)) == 0


def test_colength_of_polynomial_ideals():
    x, y = R2.gens()
    assert colength(ideal(R2, x ** 2 + y ** 3, y ** 2)) == 4
    # Milnor numbers of x^3 + y^4 and of a Morse point
    assert colength(ideal(R2, 3 * x ** 2, 4 * y ** 3)) == 6
    assert colength(ideal(R2, x ** 2 + y ** 3, 2 * x, 3 * y ** 2)) == 2
    a, b, c = R3.gens()
    assert colength(ideal(R3, 2 * a, 2 * b, 2 * c)) == 1
    assert colength(ideal(R2, x * y)).is_infinite
    assert colength(SubmoduleGens(R2, 1)).is_infinite


def test_colength_of_free_modules():
    x, y = R2.gens()
    zero = R2.zero()
    M = SubmoduleGens(R2, 2, (
        Vector.from_polynomials([x, zero]), Vector.from_polynomials([y, zero]),
        Vector.from_polynomials([zero, x]), Vector.from_polynomials([zero, y]),
    ))
    assert colength(M) == 2
    N = SubmoduleGens(R2, 2, (Vector.from_polynomials([x, y]),
                              Vector.from_polynomials([y, x])))
    assert colength(N).is_infinite


@pytest.mark.parametrize('gens', [
    lambda x, y: [x ** 2 + y ** 3, y ** 2],
    lambda x, y: [x ** 3 + x * y ** 2, y ** 3 - x ** 2 * y + x ** 4],
    lambda x, y: [2 * x + y ** 2 * x, 3 * y ** 2 + x ** 3],
    lambda x, y: [x * y + x ** 5, y ** 4 + x ** 2],
])
def test_colength_is_order_and_permutation_invariant(gens):
    polys = gens(*R2.gens())
    expected = colength(ideal(R2, *polys))
    assert expected.is_finite
    assert colength(ideal(R2, *polys), 'neglex') == expected
    assert colength(ideal(R2, *reversed(polys))) == expected
    # same ideal with the variables listed in the other order
    swapped = Ring(('y', 'x'))
    renamed = [Polynomial(swapped, {tuple(reversed(e)): c
                                    for e, c in p.items()}) for p in polys]
    assert colength(ideal(swapped, *renamed)) == expected


def test_truncated_and_exact_bases_agree():
    x, y = R2.gens()
    M = ideal(R2, x ** 3 + y ** 5, y ** 2 + x ** 4)
    exact = std(M, truncate=False)
    truncated = std(M, truncate=True)
    assert truncated.corner is not None
    assert exact.colength() == truncated.colength()
    for p in (x ** 3, x * y ** 2, y ** 2, x ** 2 * y):
        assert exact.contains(p) == truncated.contains(p)


def test_membership():
    x, y = R2.gens()
    assert is_member(x ** 2 * y, ideal(R2, x, y))
    assert is_member((1 + x) * y, ideal(R2, y))
    assert is_member(x, ideal(R2, x + x ** 2))
    assert not is_member(x, ideal(R2, x ** 2, y))
    assert is_member(R2.zero(), ideal(R2, x))
    assert is_submodule(ideal(R2, x ** 2), ideal(R2, x))
    assert not is_submodule(ideal(R2, x), ideal(R2, x ** 2))
    assert same_module(ideal(R2, x, y), ideal(R2, x + y, x - y))


def test_mora_normal_form_and_ecart():
    x = R1.var('x')
    assert ecart(x + x ** 3) == 2
    assert mora_normal_form(x, [x - x ** 2]).is_zero()
    assert mora_normal_form(1 + x, [x ** 2]) == 1 + x
    with pytest.raises(InputError):
        ecart(R1.zero())


def test_syzygies_annihilate():
    rng = random.Random(99)
    x, y, z = R3.gens()
    pool = [x, y, z, x * y, y * z, x ** 2, z ** 2, x * z + y ** 2]
    for _ in range(15):
        gens = rng.sample(pool, rng.randint(2, 4))
        gens = [g + rng.choice(pool) * rng.choice(pool) for g in gens]
        M = ideal(R3, *gens)
        for relation in syzygies(M).gens:
            assert apply_relation(relation, M).is_zero()


def test_koszul_relation_is_a_syzygy():
    x, y = R2.gens()
    M = ideal(R2, x, y)
    syz = syzygies(M)
    assert is_member(Vector.from_polynomials([y, -x]), syz)
    assert colength(syz).is_infinite


def test_relations_keep_zero_columns():
    x, y = R2.gens()
    columns = [Vector.from_polynomial(x), Vector.from_polynomial(R2.zero()),
               Vector.from_polynomial(y)]
    rel = relations(R2, 1, columns)
    assert rel.rank == 3
    assert is_member(Vector.unit(R2, 3, 1), rel)
    assert is_member(Vector.from_polynomials([y, R2.zero(), -x]), rel)
    for relation in rel.gens:
        total = R2.zero()
        for c, column in zip(relation.components(), columns):
            total = total + c * column.to_polynomial()
        assert total.is_zero()


def test_lift():
    x, y = R2.gens()
    M = ideal(R2, x + x ** 2, y)
    p = x * y + y ** 2 + x
    result = lift(p, M)
    assert result.remainder.is_zero()
    assert result.unit.is_unit()
    combination = R2.zero()
    for c, g in zip(result.coefficients, M.polynomials()):
        combination = combination + c * g
    assert result.unit * p == combination
    outside = lift(1 + x, ideal(R2, x, y))
    assert not outside.remainder.is_zero()


def test_intersection_and_subquotient():
    x, y = R2.gens()
    assert same_module(module_intersection(ideal(R2, x), ideal(R2, y)),
                       ideal(R2, x * y))
    assert same_module(
        module_intersection(ideal(R2, x, y ** 2), ideal(R2, x ** 2, y)),
        ideal(R2, x ** 2, x * y, y ** 2))
    assert subquotient_dim(ideal(R2, x, y), ideal(R2, x ** 2, y)) == 1
    assert subquotient_dim(ideal(R2, x), ideal(R2, x ** 2)).is_infinite
    assert subquotient_dim(ideal(R2, x, y), ideal(R2, x, y)) == 0
    with pytest.raises(InclusionError):
        subquotient_dim(ideal(R2, x ** 2), ideal(R2, x))


def check_lift(p, M, result):
    combination = R2.zero()
    for c, g in zip(result.coefficients, M.polynomials()):
        combination = combination + c * g
    assert result.unit.is_unit()
    assert result.unit * p == combination + result.remainder.to_polynomial()


@pytest.mark.timeout(60)
def test_syzygies_of_colength_three_ideal_finish():
    x, y = R2.gens()
    M = ideal(R2, -2 * x + 2 * y - 2 * x * y, -x ** 3 + 2 * y ** 4,
              x ** 3 * y)
    assert colength(M) == 3
    syz = syzygies(M)
    assert syz.gens
    for relation in syz.gens:
        assert apply_relation(relation, M).is_zero()
    p = x ** 2 + y ** 2
    check_lift(p, M, lift(p, M))


@pytest.mark.timeout(120)
def test_random_lifts_satisfy_identity():
    rng = random.Random(7)
    x, y = R2.gens()
    monomials = [x, y, x ** 2, x * y, y ** 2, x ** 3, x ** 2 * y, y ** 4]
    for _ in range(12):
        gens = [sum((rng.randint(-2, 2) * m for m in rng.sample(monomials, 3)),
                    R2.zero()) for _ in range(3)]
        M = ideal(R2, *gens)
        if not M.gens:
            continue
        for p in (x * y + y ** 3, 1 + x, x ** 4):
            result = lift(p, M)
            check_lift(p, M, result)
            assert result.remainder.is_zero() == is_member(p, M)


def test_lift_remainder_is_a_unit_multiple_of_the_normal_form():
    x, y = R2.gens()
    M = ideal(R2, x, y ** 2)
    result = lift(y + x * y, M)
    check_lift(y + x * y, M, result)
    normal_form = std(M, truncate=True).reduce(y + x * y)
    assert not result.remainder.is_zero()
    assert same_module(ideal(R2, result.remainder.to_polynomial()),
                       ideal(R2, normal_form))


def test_lift_of_zero_is_trivial():
    x, y = R2.gens()
    result = lift(R2.zero(), ideal(R2, x, y))
    assert all(c.is_zero() for c in result.coefficients)
    assert result.unit == R2.one()
    assert result.remainder.is_zero()


def test_subquotient_with_infinite_colengths():
    x, y = R2.gens()
    assert subquotient_dim(ideal(R2, x), ideal(R2, x ** 2, x * y)) == 1
    assert subquotient_dim(ideal(R2, x, y ** 3), ideal(R2, x, y ** 5)) == 2


def test_module_sum_checks_rank():
    x, y = R2.gens()
    vectors = SubmoduleGens(R2, 2, (Vector.from_polynomials([x, y]),))
    with pytest.raises(RankMismatchError):
        module_sum(ideal(R2, x), vectors)


def test_position_over_term_basis():
    x, y = R2.gens()
    zero = R2.zero()
    M = SubmoduleGens(R2, 2, (
        Vector.from_polynomials([x, zero]), Vector.from_polynomials([y, zero]),
        Vector.from_polynomials([zero, x ** 2]),
        Vector.from_polynomials([zero, y]),
    ))
    pot = ModuleOrder(MonomialOrder(OrderKind.NEGDEGREVLEX),
                      Tie.POSITION_OVER_TERM)
    basis = std(M, pot)
    assert basis.corner is None
    assert basis.colength() == 3
    assert colength(M) == 3


def test_dimension_values():
    assert Dimension(3) == 3
    assert Dimension.INFINITE.is_infinite
    assert Dimension.INFINITE.to_json() == 'infinite'
    assert Dimension(0).to_json() == 0
    assert str(Dimension.INFINITE) == 'infinite'
    with pytest.raises(InputError):
        Dimension(-1)
    with pytest.raises(InputError):
        int(Dimension.INFINITE)
