"""Mechanical checks of the identities relating the invariants.

Each verifier evaluates every term independently, checks the hypotheses
first (raising `HypothesisError` with diagnostics) and returns an
`IdentityReport`. Verifiers never raise on a failed identity; the caller
decides what a nonzero residual means.
"""
from fractions import Fraction

from brtjurina.errors import ArgumentRangeError, HypothesisError, InputError
from brtjurina.invariants import CaseComputation, CaseInput, NotFound
from brtjurina.polynomial import OneForm
from brtjurina.utils import get_logger


logger = get_logger('identities')

HOLDS = 'holds'
FAILS = 'fails'
UNVERIFIED = 'unverified'


class IdentityReport:
    """Outcome of one identity check.

    Args:
        name (str): Identity selector, e.g. 'theorem-a'.
        status (str): 'holds', 'fails' or 'unverified' (search cap reached).
        residuals (dict): Signed integer residuals, LHS - RHS.
        terms (dict): Every evaluated term, JSON-ready.
        notes (list of str): Human-readable remarks.
    """

    def __init__(self, name, status, residuals=None, terms=None, notes=None):
        self.name = name
        self.status = status
        self.residuals = dict(residuals or {})
        self.terms = dict(terms or {})
        self.notes = list(notes or [])

    @property
    def holds(self):
        return self.status != FAILS

    def to_json(self):
        return {
            'status': self.status,
            'residuals': dict(self.residuals),
            'terms': dict(self.terms),
            'notes': list(self.notes),
        }


def _computation(case, **kwargs):
    if isinstance(case, CaseComputation):
        return case
    if isinstance(case, CaseInput):
        return CaseComputation.from_case(case, **kwargs)
    raise InputError(f'Expected a CaseInput or a CaseComputation, got {case!r}.')


def _terms(**values):
    return {name: value.to_json() if hasattr(value, 'to_json') else value
            for name, value in values.items()}


def _status(residuals):
    return HOLDS if all(r == 0 for r in residuals.values()) else FAILS


def _ints(what, comp, **values):
    comp.require_finite(what, **values)
    return {name: int(value) for name, value in values.items()}


def verify_theorem_a(case):
    """tau_BR = Ind_GSV(X, V) + tau0(omega, V) - tau0(X) + iq."""
    comp = _computation(case)
    comp.check_theorem_hypotheses('The tau_BR formula')
    v = _ints('The tau_BR formula', comp,
              tau_BR=comp.tau_BR, gsv_XV=comp.gsv_XV,
              tau0_omega_V=comp.tau0_omega_V, tau0_X=comp.tau0_X,
              intersection_quotient_dim=comp.intersection_quotient_dim)
    residual = v['tau_BR'] - (v['gsv_XV'] + v['tau0_omega_V'] - v['tau0_X']
                              + v['intersection_quotient_dim'])
    logger.info(f"tau_BR formula: {v['tau_BR']} = {v['gsv_XV']} + "
                f"{v['tau0_omega_V']} - {v['tau0_X']} + "
                f"{v['intersection_quotient_dim']}, residual {residual}")
    residuals = {'theorem_a': residual}
    return IdentityReport('theorem-a', _status(residuals), residuals, v)


def verify_prop_5_1(case):
    """mu_BR = mu0 + mubar and tau_BR = tau0(omega, V) + taubar.

    mubar and taubar are computed directly on Theta_n, not as differences.
    """
    comp = _computation(case)
    comp.require_finite('The mubar/taubar decomposition', mu_BR=comp.mu_BR)
    comp.require_v_invariant('The mubar/taubar decomposition')
    v = _ints('The mubar/taubar decomposition', comp,
              mu_BR=comp.mu_BR, mu0=comp.mu0, mubar=comp.mubar_direct,
              tau_BR=comp.tau_BR, tau0_omega_V=comp.tau0_omega_V,
              taubar=comp.taubar_direct)
    residuals = {
        'prop_5_1_mu': v['mu_BR'] - v['mu0'] - v['mubar'],
        'prop_5_1_tau': v['tau_BR'] - v['tau0_omega_V'] - v['taubar'],
    }
    return IdentityReport('prop-5-1', _status(residuals), residuals, v)


def verify_equality_conditions(case):
    """mu_BR = tau_BR  iff  mu0 = tau0(omega, V) and
    Theta_V^omega = H_omega + Theta_X ∩ Theta_V^omega."""
    comp = _computation(case)
    comp.require_finite('The equality criterion', mu_BR=comp.mu_BR)
    comp.require_v_invariant('The equality criterion')
    condition_1 = comp.mu_BR == comp.tau_BR
    decomposes = comp.theta_V_omega_decomposes
    condition_2 = comp.mu0 == comp.tau0_omega_V and decomposes
    terms = _terms(mu_BR=comp.mu_BR, tau_BR=comp.tau_BR, mu0=comp.mu0,
                   tau0_omega_V=comp.tau0_omega_V)
    terms.update(condition_1=condition_1, condition_2=condition_2,
                 theta_V_omega_decomposes=decomposes,
                 agreement=condition_1 == condition_2)
    residuals = {}
    quotient = comp.mubar_minus_taubar_direct
    mubar, taubar = comp.mubar_direct, comp.taubar_direct
    terms.update(_terms(mubar_minus_taubar=quotient))
    if quotient.is_finite and mubar.is_finite and taubar.is_finite:
        residuals['mubar_minus_taubar'] = (
            int(quotient) - (int(mubar) - int(taubar)))
    status = HOLDS if condition_1 == condition_2 else FAILS
    if any(residuals.values()):
        status = FAILS
    return IdentityReport('equality', status, residuals, terms)


def verify_cor_5_4(case):
    """mu_BR / tau_BR <= r_f(omega(Theta_X)), exactly."""
    comp = _computation(case)
    comp.require_v_invariant('The r_f bound')
    v = _ints('The r_f bound', comp, mu_BR=comp.mu_BR, tau_BR=comp.tau_BR)
    if v['tau_BR'] == 0:
        raise HypothesisError('The r_f bound requires tau_BR > 0.',
                              ['tau_BR is 0'])
    ratio = Fraction(v['mu_BR'], v['tau_BR'])
    r = comp.rf
    terms = dict(v, ratio={'numerator': ratio.numerator,
                           'denominator': ratio.denominator},
                 rf=str(r) if isinstance(r, NotFound) else r)
    if isinstance(r, NotFound):
        return IdentityReport(
            'cor-5-4', UNVERIFIED, {}, terms,
            [f'vacuously unverified at cap {r.cap}: r_f {r}'])
    status = HOLDS if ratio <= r else FAILS
    return IdentityReport('cor-5-4', status, {}, terms,
                          [f'{ratio} <= {r}' if status == HOLDS
                           else f'{ratio} > {r}'])


def verify_gsv_corollary(case):
    """mubar = Ind_GSV(X) - tau0(X), taubar = Ind_GSV(X, V) - tau0(X) + iq,
    mu_BR = mu0 + Ind_GSV(X) - tau0(X)."""
    comp = _computation(case)
    comp.check_theorem_hypotheses('The GSV corollary')
    v = _ints('The GSV corollary', comp,
              mu_BR=comp.mu_BR, mu0=comp.mu0, gsv_X=comp.gsv_X,
              gsv_XV=comp.gsv_XV, tau0_X=comp.tau0_X,
              intersection_quotient_dim=comp.intersection_quotient_dim,
              mubar=comp.mubar_direct, taubar=comp.taubar_direct)
    residuals = {
        'mubar': v['mubar'] - (v['gsv_X'] - v['tau0_X']),
        'taubar': v['taubar'] - (v['gsv_XV'] - v['tau0_X']
                                 + v['intersection_quotient_dim']),
        'mu_BR': v['mu_BR'] - (v['mu0'] + v['gsv_X'] - v['tau0_X']),
    }
    return IdentityReport('gsv-corollary', _status(residuals), residuals, v)


def verify_foliation_corollary(case):
    """Difference of the Tjurina-type identities for omega and for df (n = 2)."""
    comp = _computation(case)
    if comp.ring.n != 2:
        raise ArgumentRangeError(
            f'The foliation identity needs 2 variables, got {comp.ring.n}.')
    comp.check_theorem_hypotheses('The foliation identity')
    exact = CaseComputation(OneForm.exact(comp.f), comp.X, comp.f,
                            order=comp.order, rf_cap=comp.rf_cap)
    exact.check_theorem_hypotheses('The foliation identity (omega = df)')
    v = _ints('The foliation identity', comp,
              tau_BR=comp.tau_BR, gsv_XV=comp.gsv_XV,
              intersection_quotient_dim=comp.intersection_quotient_dim)
    w = _ints('The foliation identity', exact,
              tau_BR_df=exact.tau_BR, gsv_XV_df=exact.gsv_XV,
              intersection_quotient_dim_df=exact.intersection_quotient_dim)
    gsv0 = comp.gsv_foliation
    residual = (v['tau_BR'] - w['tau_BR_df']) - (
        v['gsv_XV'] - w['gsv_XV_df'] + gsv0
        + v['intersection_quotient_dim'] - w['intersection_quotient_dim_df'])
    terms = dict(v, **w, gsv_foliation=gsv0)
    residuals = {'foliation': residual}
    return IdentityReport('foliation', _status(residuals), residuals, terms)


VERIFIERS = {
    'theorem-a': verify_theorem_a,
    'prop-5-1': verify_prop_5_1,
    'equality': verify_equality_conditions,
    'cor-5-4': verify_cor_5_4,
    'gsv-corollary': verify_gsv_corollary,
    'foliation': verify_foliation_corollary,
}

ALL_IDENTITIES = ('theorem-a', 'prop-5-1', 'equality', 'cor-5-4')


def identities_for(selector):
    if selector == 'all':
        return list(ALL_IDENTITIES)
    if selector not in VERIFIERS:
        raise InputError(
            f"{selector} is not supported. Allowed values are: "
            f"{', '.join(list(VERIFIERS) + ['all'])}")
    return [selector]


def verify(case, selector='all'):
    comp = _computation(case)
    return {name: VERIFIERS[name](comp) for name in identities_for(selector)}
