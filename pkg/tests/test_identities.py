import random
from fractions import Fraction

import pytest

from brtjurina.errors import ArgumentRangeError, HypothesisError, InputError
from brtjurina.families import emit_case
from brtjurina.identities import (
    ALL_IDENTITIES, HOLDS, UNVERIFIED, identities_for, verify,
    verify_cor_5_4, verify_equality_conditions, verify_foliation_corollary,
    verify_gsv_corollary, verify_prop_5_1, verify_theorem_a
)
from brtjurina.invariants import CaseComputation
from brtjurina.logder import Variety
from brtjurina.parser import parse_case
from brtjurina.polynomial import (
    OneForm, Polynomial, Ring, build_one_form_df_plus_f_eta
)
from brtjurina.standard_basis import SubmoduleGens, colength


R2 = Ring(('x', 'y'))


def builtin(name, rf_cap=None, **params):
    case = parse_case(emit_case(name, {k: str(v) for k, v in params.items()}),
                      name)
    return CaseComputation.from_case(case, rf_cap=rf_cap)


def test_theorem_a_on_example_3_2():
    report = verify_theorem_a(builtin('example-3-2'))
    assert report.status == HOLDS
    assert report.residuals == {'theorem_a': 0}
    assert report.terms['tau_BR'] == 5
    assert report.terms['gsv_XV'] == 5
    assert report.terms['tau0_omega_V'] == 1
    assert report.terms['tau0_X'] == 2
    assert report.terms['intersection_quotient_dim'] == 1


@pytest.mark.parametrize('p, q', [(2, 3), (3, 4), (2, 5)])
@pytest.mark.parametrize('lam', [2, 5])
def test_theorem_a_on_pq_family(p, q, lam):
    report = verify_theorem_a(builtin('pq-family', p=p, q=q, **{'lambda': lam}))
    assert report.status == HOLDS
    assert report.residuals['theorem_a'] == 0
    assert report.terms['tau_BR'] == p + q


@pytest.mark.parametrize('name, params', [
    ('m-family', {'m': 1}),
    ('m-family', {'m': 2}),
    ('pq-family', {'lambda': 2}),
    ('pq-family', {'p': 3, 'q': 4, 'lambda': 5}),
])
def test_prop_5_1_with_direct_quotients(name, params):
    report = verify_prop_5_1(builtin(name, **params))
    assert report.status == HOLDS
    assert report.residuals == {'prop_5_1_mu': 0, 'prop_5_1_tau': 0}


def test_equality_conditions_on_m_family():
    first = verify_equality_conditions(builtin('m-family', m=1))
    assert first.terms['condition_1'] is True
    assert first.terms['condition_2'] is True
    assert first.terms['agreement'] is True
    assert first.status == HOLDS
    second = verify_equality_conditions(builtin('m-family', m=2))
    assert second.terms['condition_1'] is False
    assert second.terms['condition_2'] is False
    assert second.terms['agreement'] is True
    assert second.residuals.get('mubar_minus_taubar', 0) == 0


def _quasihomogeneous_cases(rng, count):
    x, y = R2.gens()
    cases = []
    while len(cases) < count:
        a, b = rng.randint(2, 4), rng.randint(2, 4)
        f = x ** a + rng.choice([1, 2, -1]) * y ** b
        eta = OneForm(R2, (R2.const(rng.randint(-2, 2)) + rng.randint(0, 1) * y,
                           R2.const(rng.randint(-2, 2)) + rng.randint(0, 1) * x))
        omega = build_one_form_df_plus_f_eta(f, eta)
        axis = rng.choice([x, y])
        cases.append(CaseComputation(omega, Variety.hypersurface(axis), f))
    return cases


def test_equality_criterion_agrees_on_random_cases():
    rng = random.Random(17)
    for comp in _quasihomogeneous_cases(rng, 20):
        report = verify_equality_conditions(comp)
        assert report.terms['agreement'] is True
        assert report.status == HOLDS


@pytest.mark.parametrize('m, r', [(1, 1), (2, 2), (3, 2)])
def test_rf_bound_on_m_family(m, r):
    report = verify_cor_5_4(builtin('m-family', m=m))
    assert report.status == HOLDS
    assert report.terms['rf'] == r
    ratio = report.terms['ratio']
    assert Fraction(ratio['numerator'], ratio['denominator']) <= 2


def test_rf_bound_unverified_at_small_cap():
    report = verify_cor_5_4(builtin('m-family', rf_cap=1, m=2))
    assert report.status == UNVERIFIED
    assert report.holds
    assert report.terms['rf'] == '>=2'


def test_gsv_corollary_on_pq_family():
    report = verify_gsv_corollary(builtin('pq-family', **{'lambda': 2}))
    assert report.status == HOLDS
    assert report.residuals == {'mubar': 0, 'taubar': 0, 'mu_BR': 0}


def test_foliation_identity():
    report = verify_foliation_corollary(builtin('pq-family', **{'lambda': 5}))
    assert report.status == HOLDS
    assert report.terms['gsv_foliation'] == 0
    with pytest.raises(ArgumentRangeError):
        verify_foliation_corollary(builtin('example-3-2'))


def test_hypotheses_are_checked_first():
    x, y = R2.gens()
    comp = CaseComputation(OneForm(R2, (y, 2 * x)), x, x * y)
    with pytest.raises(HypothesisError) as info:
        verify_theorem_a(comp)
    assert 'not invariant' in str(info.value)
    bad_v = CaseComputation(OneForm(R2, (y, 2 * x)), y ** 2 - x ** 3, x + y)
    with pytest.raises(HypothesisError):
        verify_prop_5_1(bad_v)


def test_identity_selection():
    assert identities_for('all') == list(ALL_IDENTITIES)
    assert identities_for('foliation') == ['foliation']
    with pytest.raises(InputError):
        identities_for('lemma')
    reports = verify(builtin('pq-family', **{'lambda': 2}), 'theorem-a')
    assert list(reports) == ['theorem-a']
    assert reports['theorem-a'].to_json()['status'] == HOLDS


def _random_polynomial(rng, max_degree=4, max_terms=3):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        degree = rng.randint(1, max_degree)
        i = rng.randint(0, degree)
        terms[(i, degree - i)] = rng.choice([-3, -2, -1, 1, 2, 3])
    return Polynomial(R2, terms)


def test_colength_is_additive_along_coprime_factors():
    rng = random.Random(41)
    checked = 0
    for _ in range(400):
        f = _random_polynomial(rng)
        g = _random_polynomial(rng)
        ps = [_random_polynomial(rng) for _ in range(rng.randint(1, 2))]
        fg = colength(SubmoduleGens.ideal(R2, [f, g]))
        fp = colength(SubmoduleGens.ideal(R2, [f] + ps))
        if fg.is_infinite or fp.is_infinite:
            continue
        fgp = colength(SubmoduleGens.ideal(R2, [f] + [g * p for p in ps]))
        assert fgp == int(fg) + int(fp)
        checked += 1
        if checked == 60:
            break
    assert checked >= 50
