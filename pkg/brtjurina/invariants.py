"""Numerical invariants of a 1-form relative to a pair of hypersurfaces.

`CaseComputation` caches the modules shared by several invariants
(Theta_X, omega(Theta_X), H_omega, ...) so that a full report builds each
of them once. The module-level functions are thin wrappers for one-off
queries.
"""
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Optional, Tuple, Union

from brtjurina.errors import (
    ArgumentRangeError, ConsistencyError, HypothesisError, InputError,
    RingMismatchError
)
from brtjurina.logder import (
    Variety, VectorFieldModule, apply_form, invariance_obstruction, theta_X,
    theta_X_trivial, variety_invariance_obstruction
)
from brtjurina.orders import as_module_order
from brtjurina.polynomial import (
    OneForm, Polynomial, Ring, jacobian_matrix, minors
)
from brtjurina.standard_basis import (
    Dimension, SubmoduleGens, Vector, colength, module_intersection,
    module_sum, relations, same_module, std, subquotient_dim
)
from brtjurina.utils import get_logger, log_elapsed


logger = get_logger('invariants')

DEFAULT_RF_CAP = 8

INVARIANT_NAMES = (
    'mu0', 'tau0_V', 'tau0_omega_V', 'tau0_X', 'mu_BR', 'tau_BR', 'gsv_X',
    'gsv_XV', 'mubar', 'taubar', 'rf', 'intersection_quotient_dim',
    'sum_quotient_dim', 'gsv_foliation',
)


@dataclass(frozen=True)
class CaseOptions:
    """Per-case options; None means "take it from the configuration"."""

    rf_cap: Optional[int] = None
    lambda_values: Tuple[Fraction, ...] = ()
    bad_lambda: Tuple[Fraction, ...] = ()
    invariants: Tuple[str, ...] = ()
    order: Optional[str] = None
    parameters: Tuple[Tuple[str, Fraction], ...] = ()


@dataclass(frozen=True)
class CaseInput:
    """A 1-form omega, a hypersurface X = {phi = 0} and V = {f = 0}."""

    ring: Ring
    omega: OneForm
    X: Variety
    f: Polynomial
    name: str = 'case'
    options: CaseOptions = field(default_factory=CaseOptions)

    def __post_init__(self):
        for part in (self.omega, self.X, self.f):
            if part.ring != self.ring:
                raise RingMismatchError(
                    f'Ring mismatch in case {self.name}: {part.ring} and '
                    f'{self.ring}.')
        if self.f.is_zero() or not self.f.vanishes_at_origin():
            raise InputError(
                f'V must be given by a nonzero f with f(0) = 0, got {self.f}.')

    @property
    def n(self):
        return self.ring.n


class NotFound(NamedTuple):
    """r_f search exhausted its cap; the true value is at least cap + 1."""

    cap: int

    def __str__(self):
        return f'>={self.cap + 1}'


RfValue = Union[int, NotFound]


def _finite(d: Dimension):
    return d.is_finite


def _minor_label(ring, j, l):
    x, y = ring.variables[j], ring.variables[l]
    return f'd{x}^d{y}'


class CaseComputation:
    """Lazily computed invariants of (omega, X, V).

    Args:
        omega (OneForm): The 1-form.
        X (Variety, optional): The variety X; required by everything that
            involves Theta_X.
        f (Polynomial, optional): Equation of V.
        order: Local order used for every colength.
        rf_cap (int): Largest exponent tried by the r_f search.
    """

    def __init__(self, omega: OneForm, X: Optional[Variety] = None,
                 f: Optional[Polynomial] = None, order=None,
                 rf_cap: int = DEFAULT_RF_CAP):
        self.omega = omega
        self.ring = omega.ring
        if isinstance(X, Polynomial):
            X = Variety.hypersurface(X)
        for part in (X, f):
            if part is not None and part.ring != self.ring:
                raise RingMismatchError(
                    f'Ring mismatch: {part.ring} and {self.ring}.')
        if f is not None and (f.is_zero() or not f.vanishes_at_origin()):
            raise InputError(
                f'V must be given by a nonzero f with f(0) = 0, got {f}.')
        if not isinstance(rf_cap, int) or rf_cap < 1:
            raise ArgumentRangeError(f'r_f cap must be at least 1, got {rf_cap}.')
        self.X = X
        self.f = f
        self.order = as_module_order(order)
        self.rf_cap = rf_cap

    @classmethod
    def from_case(cls, case: CaseInput, order=None, rf_cap=None):
        return cls(case.omega, case.X, case.f,
                   order=order or case.options.order,
                   rf_cap=rf_cap or case.options.rf_cap or DEFAULT_RF_CAP)

    # -- inputs ---------------------------------------------------------------

    def _need_X(self):
        if self.X is None:
            raise InputError('This invariant needs the variety X.')
        return self.X

    def _need_f(self):
        if self.f is None:
            raise InputError('This invariant needs the hypersurface V.')
        return self.f

    def _colength(self, M):
        return colength(M, self.order)

    def _ideal(self, polys):
        return SubmoduleGens.ideal(self.ring, polys)

    # -- hypotheses -------------------------------------------------------------

    @cached_property
    def v_obstruction(self):
        return invariance_obstruction(self.omega, self._need_f())

    @cached_property
    def x_obstruction(self):
        return variety_invariance_obstruction(self.omega, self._need_X())

    @property
    def v_invariant(self):
        return self.v_obstruction is None

    @property
    def x_invariant(self):
        return self.x_obstruction is None

    def require_v_invariant(self, what):
        if self.v_invariant:
            return
        (j, l), minor = self.v_obstruction
        raise HypothesisError(
            f'{what} requires V invariant by omega.',
            [f'minor {_minor_label(self.ring, j, l)} of (omega; df) is '
             f'{minor}, which is not in <f>'])

    def require_x_not_invariant(self, what):
        if not self.x_invariant:
            return
        raise HypothesisError(
            f'{what} requires X not invariant by omega.',
            [f'every {self.X.k + 1}-minor of (omega; dphi) lies in I_X'])

    def require_hypersurface(self, what):
        if not self._need_X().is_hypersurface:
            raise HypothesisError(
                f'{what} is only available for hypersurfaces X.',
                [f'X has {self.X.k} equations'])

    def require_finite(self, what, **values):
        infinite = [name for name, value in values.items()
                    if not _finite(value)]
        if infinite:
            raise HypothesisError(
                f'{what} requires finite values.',
                [f'{name} is infinite' for name in infinite])

    def check_theorem_hypotheses(self, what='The tau_BR formula'):
        """Isolated singularities, V invariant, X not invariant."""
        self.require_hypersurface(what)
        self.require_finite(what, mu0=self.mu0, tau0_V=self.tau0_V,
                            tau0_X=self.tau0_X_direct)
        self.require_v_invariant(what)
        self.require_x_not_invariant(what)

    # -- modules ------------------------------------------------------------------

    @cached_property
    def coefficient_ideal(self):
        return self._ideal(self.omega.coefficients)

    @cached_property
    def v_ideal(self):
        return self._ideal([self._need_f()])

    @cached_property
    def theta(self) -> VectorFieldModule:
        with log_elapsed(logger, 'Theta_X computed'):
            return theta_X(self._need_X())

    @cached_property
    def theta_trivial(self) -> VectorFieldModule:
        return theta_X_trivial(self._need_X())

    @cached_property
    def omega_theta(self):
        return apply_form(self.omega, self.theta)

    @cached_property
    def omega_theta_trivial(self):
        return apply_form(self.omega, self.theta_trivial)

    @cached_property
    def h_omega(self) -> SubmoduleGens:
        """H_omega = {zeta : omega(zeta) = 0}."""
        columns = [Vector.from_polynomial(a) for a in self.omega.coefficients]
        return relations(self.ring, 1, columns)

    @cached_property
    def theta_V_omega(self) -> SubmoduleGens:
        """Theta_V^omega = {delta : omega(delta) in <f>}."""
        columns = [Vector.from_polynomial(a) for a in self.omega.coefficients]
        columns.append(Vector.from_polynomial(self._need_f()))
        syz = relations(self.ring, 1, columns)
        return syz.project(range(self.ring.n))

    @cached_property
    def gsv_minor_ideal(self):
        """I_X + I_{k+1}(omega; dphi)."""
        X = self._need_X()
        gens = list(X.equations)
        if X.k + 1 <= self.ring.n:
            gens += minors(jacobian_matrix(self.omega, X.equations), X.k + 1)
        return self._ideal(gens)

    # -- invariants ---------------------------------------------------------------

    @cached_property
    def mu0(self) -> Dimension:
        return self._colength(self.coefficient_ideal)

    @cached_property
    def tau0_V(self) -> Dimension:
        f = self._need_f()
        return self._colength(self._ideal([f] + f.gradient()))

    @cached_property
    def tau0_omega_V(self) -> Dimension:
        self.require_v_invariant('tau0(omega, V)')
        return self._colength(module_sum(self.coefficient_ideal, self.v_ideal))

    @cached_property
    def tau0_X_direct(self) -> Dimension:
        self.require_hypersurface('tau0(X)')
        phi = self.X.phi
        return self._colength(self._ideal([phi] + phi.gradient()))

    @cached_property
    def tau0_X_dual(self) -> Dimension:
        """dim omega(Theta_X) / omega(Theta_X^T)."""
        return subquotient_dim(self.omega_theta, self.omega_theta_trivial,
                               self.order)

    @cached_property
    def tau0_X(self) -> Dimension:
        direct = self.tau0_X_direct
        if _finite(self.mu_BR):
            dual = self.tau0_X_dual
            if dual != direct:
                raise ConsistencyError(
                    f'tau0(X) disagrees: colength of the Tjurina ideal is '
                    f'{direct}, dim omega(Theta_X)/omega(Theta_X^T) is {dual}.')
        return direct

    @cached_property
    def mu_BR(self) -> Dimension:
        return self._colength(self.omega_theta)

    @cached_property
    def tau_BR(self) -> Dimension:
        self.require_v_invariant('tau_BR')
        return self._colength(module_sum(self.omega_theta, self.v_ideal))

    @cached_property
    def gsv_X(self) -> Dimension:
        self.require_x_not_invariant('The GSV index')
        return self._colength(self.gsv_minor_ideal)

    @cached_property
    def gsv_XV(self) -> Dimension:
        self.require_v_invariant('The GSV index of the pair')
        self.require_x_not_invariant('The GSV index of the pair')
        return self._colength(module_sum(self.gsv_minor_ideal, self.v_ideal))

    @cached_property
    def intersection_quotient_direct(self) -> Dimension:
        """dim (omega(Theta_X) ∩ I_V) / (omega(Theta_X^T) ∩ I_V)."""
        upper = module_intersection(self.omega_theta, self.v_ideal, self.order)
        lower = module_intersection(self.omega_theta_trivial, self.v_ideal,
                                    self.order)
        return subquotient_dim(upper, lower, self.order)

    @cached_property
    def sum_quotient_dim(self) -> Dimension:
        """dim (omega(Theta_X) + I_V) / (omega(Theta_X^T) + I_V)."""
        upper = module_sum(self.omega_theta, self.v_ideal)
        lower = module_sum(self.omega_theta_trivial, self.v_ideal)
        upper_colength = self._colength(upper)
        lower_colength = self._colength(lower)
        if _finite(lower_colength):
            return Dimension(int(lower_colength) - int(upper_colength))
        return subquotient_dim(upper, lower, self.order)

    @cached_property
    def intersection_quotient_via_sums(self) -> Optional[Dimension]:
        """tau0(X) - dim (omega(Theta_X) + I_V)/(omega(Theta_X^T) + I_V).

        None unless both terms are finite.
        """
        tau0_x = self.tau0_X if _finite(self.mu_BR) else self.tau0_X_dual
        sums = self.sum_quotient_dim
        if not (_finite(tau0_x) and _finite(sums)):
            return None
        value = int(tau0_x) - int(sums)
        if value < 0:
            raise ConsistencyError(
                f'tau0(X) = {tau0_x} is smaller than the sum quotient {sums}.')
        return Dimension(value)

    @cached_property
    def intersection_quotient_dim(self) -> Dimension:
        self.require_v_invariant('The intersection quotient')
        self.require_x_not_invariant('The intersection quotient')
        direct = self.intersection_quotient_direct
        via_sums = self.intersection_quotient_via_sums
        if via_sums is not None and via_sums != direct:
            raise ConsistencyError(
                f'Intersection quotient disagrees: {direct} from the '
                f'intersections, {via_sums} from the sum quotients.')
        return direct

    @cached_property
    def mubar_direct(self) -> Dimension:
        """dim Theta_n / (Theta_X + H_omega)."""
        return self._colength(
            module_sum(self.theta.underlying, self.h_omega))

    @cached_property
    def taubar_direct(self) -> Dimension:
        """dim Theta_n / (Theta_X + Theta_V^omega)."""
        return self._colength(
            module_sum(self.theta.underlying, self.theta_V_omega))

    @cached_property
    def mubar(self) -> Dimension:
        self.require_finite('mubar', mu_BR=self.mu_BR)
        direct = self.mubar_direct
        difference = Dimension(int(self.mu_BR) - int(self.mu0))
        if direct != difference:
            raise ConsistencyError(
                f'mubar disagrees: {direct} directly, {difference} as '
                'mu_BR - mu0.')
        return direct

    @cached_property
    def taubar(self) -> Dimension:
        self.require_finite('taubar', mu_BR=self.mu_BR)
        self.require_v_invariant('taubar')
        direct = self.taubar_direct
        difference = Dimension(int(self.tau_BR) - int(self.tau0_omega_V))
        if direct != difference:
            raise ConsistencyError(
                f'taubar disagrees: {direct} directly, {difference} as '
                'tau_BR - tau0(omega, V).')
        return direct

    @cached_property
    def mubar_minus_taubar_direct(self) -> Dimension:
        """dim Theta_V^omega / (H_omega + Theta_X ∩ Theta_V^omega)."""
        inner = module_intersection(self.theta.underlying, self.theta_V_omega,
                                    self.order)
        return subquotient_dim(self.theta_V_omega,
                               module_sum(self.h_omega, inner), self.order)

    @cached_property
    def theta_V_omega_decomposes(self) -> bool:
        """Whether Theta_V^omega = H_omega + Theta_X ∩ Theta_V^omega."""
        inner = module_intersection(self.theta.underlying, self.theta_V_omega,
                                    self.order)
        return same_module(self.theta_V_omega,
                           module_sum(self.h_omega, inner), self.order)

    @cached_property
    def rf(self) -> RfValue:
        """Least r <= cap with f^r in omega(Theta_X), else NotFound(cap)."""
        f = self._need_f()
        basis = std(self.omega_theta, self.order, truncate=True)
        power = f
        for r in range(1, self.rf_cap + 1):
            if basis.contains(power):
                return r
            power = power * f
        return NotFound(self.rf_cap)

    @cached_property
    def gsv_foliation(self) -> int:
        """GSV_0(omega, V) = tau0(omega, V) - tau0(V) for plane foliations."""
        if self.ring.n != 2:
            raise ArgumentRangeError(
                f'The foliation GSV index needs 2 variables, got {self.ring.n}.')
        self.require_finite('GSV_0', tau0_omega_V=self.tau0_omega_V,
                            tau0_V=self.tau0_V)
        return int(self.tau0_omega_V) - int(self.tau0_V)

    def get(self, name):
        """Invariant by report name, logging the time it took."""
        if name not in INVARIANT_NAMES:
            raise InputError(f"Unknown invariant '{name}'. Allowed values "
                             f"are: {', '.join(INVARIANT_NAMES)}")
        with log_elapsed(logger, f'{name} computed'):
            return getattr(self, name)


# -- functional interface ---------------------------------------------------------

def milnor_number(omega: OneForm, order=None) -> Dimension:
    return CaseComputation(omega, order=order).mu0


def tjurina_hypersurface(f: Polynomial, order=None) -> Dimension:
    if not f.vanishes_at_origin():
        raise InputError(f'{f} does not vanish at the origin.')
    return colength(SubmoduleGens.ideal(f.ring, [f] + f.gradient()), order)


def tjurina_form(omega: OneForm, f: Polynomial, order=None) -> Dimension:
    return CaseComputation(omega, f=f, order=order).tau0_omega_V


def mu_BR(omega: OneForm, X, order=None) -> Dimension:
    return CaseComputation(omega, X, order=order).mu_BR


def tau_BR(omega: OneForm, X, f: Polynomial, order=None) -> Dimension:
    return CaseComputation(omega, X, f, order=order).tau_BR


def gsv_index(omega: OneForm, X, order=None) -> Dimension:
    return CaseComputation(omega, X, order=order).gsv_X


def gsv_index_pair(omega: OneForm, X, f: Polynomial, order=None) -> Dimension:
    return CaseComputation(omega, X, f, order=order).gsv_XV


class Tau0X(NamedTuple):
    direct: Dimension
    dual: Optional[Dimension]


def tau0_X(X, omega: Optional[OneForm] = None, order=None) -> Tau0X:
    """tau0(X) from the Tjurina ideal and, given omega, from omega(Theta_X).

    The two values are compared when mu_BR(omega, X) is finite.
    """
    if isinstance(X, Polynomial):
        X = Variety.hypersurface(X)
    if omega is None:
        if not X.is_hypersurface:
            raise HypothesisError('tau0(X) is only available for hypersurfaces X.',
                                  [f'X has {X.k} equations'])
        return Tau0X(tjurina_hypersurface(X.phi, order), None)
    computation = CaseComputation(omega, X, order=order)
    direct = computation.tau0_X
    return Tau0X(direct, computation.tau0_X_dual)


def intersection_quotient_dim(omega: OneForm, X, f: Polynomial,
                              order=None) -> Dimension:
    return CaseComputation(omega, X, f, order=order).intersection_quotient_dim


def sum_quotient_dim(omega: OneForm, X, f: Polynomial, order=None) -> Dimension:
    return CaseComputation(omega, X, f, order=order).sum_quotient_dim


def mubar(omega: OneForm, X, order=None) -> Dimension:
    return CaseComputation(omega, X, order=order).mubar


def taubar(omega: OneForm, X, f: Polynomial, order=None) -> Dimension:
    return CaseComputation(omega, X, f, order=order).taubar


def rf(omega: OneForm, X, f: Polynomial, cap: int = DEFAULT_RF_CAP,
       order=None) -> RfValue:
    return CaseComputation(omega, X, f, order=order, rf_cap=cap).rf


def gsv_foliation(omega: OneForm, f: Polynomial, order=None) -> int:
    return CaseComputation(omega, f=f, order=order).gsv_foliation


def scale_form(omega: OneForm, u: Polynomial) -> OneForm:
    """u * omega for a unit u of the local ring."""
    if not u.is_unit():
        raise InputError(f'{u} is not a unit of the local ring.')
    return omega.scale(u)


def function_case(case: CaseInput) -> CaseInput:
    """The same case with omega replaced by df."""
    return replace(case, omega=OneForm.exact(case.f),
                   name=f'{case.name} (omega = df)')
