"""Logarithmic vector fields of a variety and invariance of hypersurfaces."""
import itertools
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from brtjurina.errors import (
    ConsistencyError, InputError, RankMismatchError, RingMismatchError
)
from brtjurina.polynomial import (
    OneForm, PolyMatrix, Polynomial, Ring, determinant, jacobian_matrix,
    minors
)
from brtjurina.standard_basis import (
    SubmoduleGens, Vector, is_member, relations, std
)
from brtjurina.utils import get_logger


logger = get_logger('logder')


@dataclass(frozen=True)
class Variety:
    """Germ X = {phi_1 = ... = phi_k = 0} at the origin."""

    ring: Ring
    equations: Tuple[Polynomial, ...]

    def __post_init__(self):
        equations = tuple(self.equations)
        object.__setattr__(self, 'equations', equations)
        if not equations:
            raise InputError('A variety needs at least one equation.')
        for phi in equations:
            if phi.ring != self.ring:
                raise RingMismatchError(
                    f'Ring mismatch: {phi.ring} and {self.ring}.')
            if phi.is_zero():
                raise InputError('Equations of a variety must be nonzero.')
            if not phi.vanishes_at_origin():
                raise InputError(
                    f'Equation {phi} does not vanish at the origin.')

    @classmethod
    def hypersurface(cls, phi: Polynomial):
        return cls(phi.ring, (phi,))

    @property
    def k(self):
        return len(self.equations)

    @property
    def is_hypersurface(self):
        return self.k == 1

    @property
    def phi(self) -> Polynomial:
        """The equation of a hypersurface."""
        if not self.is_hypersurface:
            raise InputError(
                f'Expected a hypersurface, got {self.k} equations.')
        return self.equations[0]

    def ideal(self) -> SubmoduleGens:
        return SubmoduleGens.ideal(self.ring, self.equations)


@dataclass(frozen=True)
class VectorFieldModule:
    """Submodule of Theta_n = O^n given by generating vector fields."""

    underlying: SubmoduleGens

    @classmethod
    def from_fields(cls, ring, fields: Sequence[Sequence[Polynomial]]):
        return cls(SubmoduleGens(
            ring, ring.n, tuple(Vector.from_polynomials(f) for f in fields)))

    @property
    def ring(self):
        return self.underlying.ring

    def fields(self) -> List[List[Polynomial]]:
        return [g.components() for g in self.underlying.gens]

    def contains(self, field) -> bool:
        if not isinstance(field, Vector):
            field = Vector.from_polynomials(field)
        return is_member(field, self.underlying)

    def __len__(self):
        return len(self.underlying)


def derivation(field: Sequence[Polynomial], p: Polynomial) -> Polynomial:
    """xi(p) = sum_j xi_j * dp/dx_j."""
    result = p.ring.zero()
    for xi_j, dp_j in zip(field, p.gradient()):
        result = result + xi_j * dp_j
    return result


def _check_logarithmic(X: Variety, module: VectorFieldModule):
    ideal = std(X.ideal(), truncate=False)
    for field in module.fields():
        for phi in X.equations:
            image = derivation(field, phi)
            if not ideal.contains(image):
                raise ConsistencyError(
                    f'Vector field {field} maps {phi} to {image}, '
                    'outside the ideal of X.')


def theta_X(X: Variety) -> VectorFieldModule:
    """Vector fields tangent to X, from the syzygies of the Jacobian system.

    The system has the Jacobian columns (dphi_1/dx_j, ..., dphi_k/dx_j)
    followed by the columns phi_i e_l; the first n coordinates of its
    relations are the logarithmic fields.
    """
    ring, k, n = X.ring, X.k, X.ring.n
    gradients = [phi.gradient() for phi in X.equations]
    columns = [Vector.from_polynomials([gradients[i][j] for i in range(k)])
               for j in range(n)]
    zero = ring.zero()
    for phi in X.equations:
        for l in range(k):
            columns.append(Vector.from_polynomials(
                [phi if i == l else zero for i in range(k)]))
    syz = relations(ring, k, columns)
    module = VectorFieldModule(syz.project(range(n)))
    logger.debug(f'Theta_X: {len(module)} generators')
    _check_logarithmic(X, module)
    return module


def theta_X_trivial(X: Variety) -> VectorFieldModule:
    """Trivial logarithmic fields: cofactor fields of the (k+1)-minors and phi_i d/dx_j.

    For a subset j_0 < ... < j_k of coordinates, the field puts on
    d/dx_{j_t} the signed cofactor of the Jacobian with column t removed.
    For k = 1 these are dphi/dx_l d/dx_j - dphi/dx_j d/dx_l.
    """
    ring, k, n = X.ring, X.k, X.ring.n
    gradients = [phi.gradient() for phi in X.equations]
    zero = ring.zero()
    fields = []
    for subset in itertools.combinations(range(n), k + 1):
        field = [zero] * n
        for t, j in enumerate(subset):
            rest = [c for c in subset if c != j]
            cofactor = determinant(PolyMatrix.from_rows(
                [[gradients[i][c] for c in rest] for i in range(k)]))
            field[j] = cofactor if t % 2 == 0 else -cofactor
        fields.append(field)
    for phi in X.equations:
        for j in range(n):
            fields.append([phi if c == j else zero for c in range(n)])
    return VectorFieldModule.from_fields(ring, fields)


def apply_form(omega: OneForm, V: VectorFieldModule) -> SubmoduleGens:
    """The ideal omega(V) generated by the values on the generators."""
    if omega.ring != V.ring:
        raise RingMismatchError(f'Ring mismatch: {omega.ring} and {V.ring}.')
    if V.underlying.rank != omega.n:
        raise RankMismatchError(
            f'Vector fields of rank {V.underlying.rank} for a 1-form in '
            f'{omega.n} variables.')
    return SubmoduleGens.ideal(
        omega.ring, [omega.evaluate(field) for field in V.fields()])


def _wedge_minors(omega: OneForm, f: Polynomial):
    grad = f.gradient()
    A = omega.coefficients
    for j, l in itertools.combinations(range(omega.n), 2):
        yield (j, l), A[j] * grad[l] - A[l] * grad[j]


def invariance_obstruction(omega: OneForm, f: Polynomial):
    """First 2x2 minor of (omega; df) outside <f> as ((j, l), minor), or None."""
    if omega.ring != f.ring:
        raise RingMismatchError(f'Ring mismatch: {omega.ring} and {f.ring}.')
    if f.is_zero():
        raise InputError('Invariance is undefined for the zero function.')
    if not f.vanishes_at_origin():
        raise InputError(f'{f} does not vanish at the origin.')
    ideal = std(SubmoduleGens.ideal(f.ring, [f]), truncate=False)
    for indices, minor in _wedge_minors(omega, f):
        if not ideal.contains(minor):
            return indices, minor
    return None


def is_hypersurface_invariant(omega: OneForm, f: Polynomial) -> bool:
    """Whether {f = 0} is invariant by omega, i.e. omega ^ df lies in <f>."""
    return invariance_obstruction(omega, f) is None


def variety_invariance_obstruction(omega: OneForm, X: Variety):
    """First (k+1)-minor of (omega; dphi) outside I_X, or None.

    For a hypersurface this is the same test as `invariance_obstruction`.
    """
    if omega.ring != X.ring:
        raise RingMismatchError(f'Ring mismatch: {omega.ring} and {X.ring}.')
    k = X.k
    if k + 1 > omega.n:
        return None
    ideal = std(X.ideal(), truncate=False)
    for minor in minors(jacobian_matrix(omega, X.equations), k + 1):
        if not ideal.contains(minor):
            return minor
    return None


def is_variety_invariant(omega: OneForm, X: Variety) -> bool:
    return variety_invariance_obstruction(omega, X) is None
