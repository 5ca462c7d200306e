"""Standard bases over the local ring Q[x]_(x) and the quantities they decide.

Everything here works on submodules of a free module O^r given by finite
generator lists. Reduction is Mora's normal form: a reducer of minimal
ecart is chosen among those whose leading term divides the current one,
and intermediate results join the reducer list whenever the chosen reducer
has a larger ecart. Standard bases are completed with s-pairs selected in
order of their lcm (greatest first, FIFO among equals).

For the degree-local order with term-over-position, completion may drop
every term of degree >= D once the partial leading module contains pure
powers x_i^{a_i} in every component (D = max_c sum_i (a_i - 1) + 1). Then
m^D O^r lies in the module, so colengths and membership are unaffected.

Relations among generators are computed over Q[x] with a global order and
then read locally; the local ring is flat over Q[x], so they generate the
local syzygies. Lifts and presentations of subquotients come from them.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from brtjurina.errors import (
    InclusionError, InputError, RankMismatchError, RingMismatchError
)
from brtjurina.orders import (
    GRAPH_ORDER, ModuleOrder, as_module_order
)
from brtjurina.polynomial import Polynomial, Ring
from brtjurina.utils import get_logger


logger = get_logger('standard_basis')

Term = Tuple[int, Tuple[int, ...]]


class Vector:
    """Element of the free module O^r, stored as (component, exponent) -> coefficient.

    Rank-1 vectors are identified with polynomials (`from_polynomial`,
    `to_polynomial`).
    """

    __slots__ = ('ring', 'rank', '_terms', '_hash')

    def __init__(self, ring: Ring, rank: int, terms: Dict[Term, object] = None):
        if rank < 1:
            raise InputError(f'Rank must be positive, got {rank}.')
        cleaned = {}
        for (component, exp), coeff in (terms or {}).items():
            exp = tuple(exp)
            if not 0 <= component < rank:
                raise InputError(
                    f'Component {component} out of range for rank {rank}.')
            if len(exp) != ring.n:
                raise InputError(f'Exponent {exp} does not fit {ring}.')
            coeff = Fraction(coeff)
            if coeff:
                cleaned[(component, exp)] = coeff
        self.ring = ring
        self.rank = rank
        self._terms = cleaned
        self._hash = None

    @classmethod
    def _from_clean(cls, ring, rank, terms):
        vec = cls.__new__(cls)
        vec.ring = ring
        vec.rank = rank
        vec._terms = terms
        vec._hash = None
        return vec

    @classmethod
    def from_polynomials(cls, polys: Sequence[Polynomial]):
        polys = list(polys)
        if not polys:
            raise InputError('A vector needs at least one component.')
        ring = polys[0].ring
        terms = {}
        for component, p in enumerate(polys):
            if p.ring != ring:
                raise RingMismatchError(f'Ring mismatch: {p.ring} and {ring}.')
            for exp, coeff in p.items():
                terms[(component, exp)] = coeff
        return cls._from_clean(ring, len(polys), terms)

    @classmethod
    def from_polynomial(cls, p: Polynomial):
        return cls.from_polynomials([p])

    @classmethod
    def unit(cls, ring, rank, component):
        return cls(ring, rank, {(component, ring.zero_exponent()): 1})

    def items(self):
        return self._terms.items()

    def coefficient(self, component, exp):
        return self._terms.get((component, tuple(exp)), Fraction(0))

    def component(self, i) -> Polynomial:
        return Polynomial._from_clean(
            self.ring, {e: c for (k, e), c in self._terms.items() if k == i})

    def components(self):
        return [self.component(i) for i in range(self.rank)]

    def to_polynomial(self) -> Polynomial:
        if self.rank != 1:
            raise RankMismatchError(
                f'Only rank-1 vectors are polynomials, got rank {self.rank}.')
        return self.component(0)

    def is_zero(self):
        return not self._terms

    def project(self, components):
        """Vector made of the listed components, in the listed order."""
        return Vector.from_polynomials([self.component(i) for i in components])

    def _check(self, other):
        if self.ring != other.ring:
            raise RingMismatchError(
                f'Ring mismatch: {self.ring} and {other.ring}.')
        if self.rank != other.rank:
            raise RankMismatchError(
                f'Rank mismatch: {self.rank} and {other.rank}.')

    def __add__(self, other):
        self._check(other)
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            value = terms.get(key, 0) + coeff
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
        return Vector._from_clean(self.ring, self.rank, terms)

    def __neg__(self):
        return Vector._from_clean(
            self.ring, self.rank, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, p):
        """Scalar multiplication by a polynomial or a rational."""
        if isinstance(p, (int, Fraction)):
            p = self.ring.const(p)
        if not isinstance(p, Polynomial):
            return NotImplemented
        if p.ring != self.ring:
            raise RingMismatchError(f'Ring mismatch: {p.ring} and {self.ring}.')
        terms = {}
        for (component, e1), c1 in self._terms.items():
            for e2, c2 in p.items():
                key = (component, tuple(a + b for a, b in zip(e1, e2)))
                value = terms.get(key, 0) + c1 * c2
                if value:
                    terms[key] = value
                else:
                    terms.pop(key, None)
        return Vector._from_clean(self.ring, self.rank, terms)

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return (self.ring == other.ring and self.rank == other.rank
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.rank,
                               frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Vector({', '.join(str(c) for c in self.components())})"


FreeModuleElement = Vector


def _as_vector(p):
    if isinstance(p, Polynomial):
        return Vector.from_polynomial(p)
    if isinstance(p, Vector):
        return p
    raise InputError(f'Expected a Polynomial or a Vector, got {p!r}.')


@dataclass(frozen=True)
class SubmoduleGens:
    """Finite generating set of a submodule of O^rank (rank 1: an ideal)."""

    ring: Ring
    rank: int
    gens: Tuple[Vector, ...] = ()

    def __post_init__(self):
        gens = []
        for g in self.gens:
            g = _as_vector(g)
            if g.ring != self.ring:
                raise RingMismatchError(
                    f'Ring mismatch: {g.ring} and {self.ring}.')
            if g.rank != self.rank:
                raise RankMismatchError(
                    f'Generator of rank {g.rank} in a rank-{self.rank} module.')
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, 'gens', tuple(gens))

    @classmethod
    def ideal(cls, ring, polys):
        return cls(ring, 1, tuple(Vector.from_polynomial(p) for p in polys))

    @classmethod
    def of_vectors(cls, ring, rank, vectors):
        return cls(ring, rank, tuple(vectors))

    def polynomials(self):
        return [g.to_polynomial() for g in self.gens]

    def project(self, components):
        """Image under the projection onto the listed components."""
        components = list(components)
        return SubmoduleGens(self.ring, len(components),
                             tuple(g.project(components) for g in self.gens))

    def __len__(self):
        return len(self.gens)


class Dimension:
    """Dimension over Q: a nonnegative integer or the value INFINITE."""

    __slots__ = ('value',)

    def __init__(self, value=None):
        if value is not None and (not isinstance(value, int) or value < 0):
            raise InputError(f'Dimension must be a nonnegative int, got {value}.')
        self.value = value

    @property
    def is_infinite(self):
        return self.value is None

    @property
    def is_finite(self):
        return self.value is not None

    def __int__(self):
        if self.value is None:
            raise InputError('Infinite dimension has no integer value.')
        return self.value

    def __eq__(self, other):
        if isinstance(other, Dimension):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f'Dimension({self})'

    def __str__(self):
        return 'infinite' if self.value is None else str(self.value)

    def to_json(self):
        return 'infinite' if self.value is None else self.value


Dimension.INFINITE = Dimension(None)


# -- working representation ---------------------------------------------------

class _Element:
    """Term dict with cached leading term and ecart."""

    __slots__ = ('terms', 'lead', 'ecart')

    def __init__(self, terms, key):
        self.terms = terms
        if terms:
            self.lead = max(terms, key=key)
            top = max(sum(exp) for _, exp in terms)
            self.ecart = top - sum(self.lead[1])
        else:
            self.lead = None
            self.ecart = 0

    @property
    def lead_coeff(self):
        return self.terms[self.lead]


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _truncated(terms, corner):
    if corner is None:
        return dict(terms)
    return {t: c for t, c in terms.items() if sum(t[1]) < corner}


def _subtract_multiple(terms, other, factor, shift, corner):
    """terms -= factor * x^shift * other, in place."""
    for (component, exp), coeff in other.items():
        new_exp = tuple(a + b for a, b in zip(exp, shift))
        if corner is not None and sum(new_exp) >= corner:
            continue
        key = (component, new_exp)
        value = terms.get(key, 0) - factor * coeff
        if value:
            terms[key] = value
        else:
            terms.pop(key, None)


def _reduce_by(h, g, key, corner):
    """h - (LT(h)/LT(g)) g."""
    shift = tuple(a - b for a, b in zip(h.lead[1], g.lead[1]))
    terms = dict(h.terms)
    _subtract_multiple(terms, g.terms, h.lead_coeff / g.lead_coeff, shift,
                       corner)
    return _Element(terms, key)


def _spoly(f, g, key, corner):
    lcm = tuple(max(a, b) for a, b in zip(f.lead[1], g.lead[1]))
    shift_f = tuple(a - b for a, b in zip(lcm, f.lead[1]))
    shift_g = tuple(a - b for a, b in zip(lcm, g.lead[1]))
    terms = {}
    _subtract_multiple(terms, f.terms, -1 / f.lead_coeff, shift_f, corner)
    _subtract_multiple(terms, g.terms, 1 / g.lead_coeff, shift_g, corner)
    return _Element(terms, key)


def _normalized(h, key):
    lc = h.lead_coeff
    if lc == 1:
        return h
    return _Element({t: c / lc for t, c in h.terms.items()}, key)


def _mora_reduce(h, reducers, key, corner=None, limit=None, mora=True):
    """Mora's weak normal form of h with respect to `reducers`.

    If `limit` is given, reduction stops as soon as the leading component
    reaches `limit`. With `mora=False` intermediates never join the
    reducers, which is plain top reduction for a global order.
    """
    todo = list(reducers)
    while h.terms:
        component, exp = h.lead
        if limit is not None and component >= limit:
            break
        best = None
        for g in todo:
            g_component, g_exp = g.lead
            if g_component == component and _divides(g_exp, exp):
                if best is None or g.ecart < best.ecart:
                    best = g
                    if best.ecart == 0:
                        break
        if best is None:
            break
        if mora and best.ecart > h.ecart:
            todo.append(h)
        h = _reduce_by(h, best, key, corner)
    return h


@total_ordering
class _Pair:
    """S-pair queue entry: greatest priority first, FIFO among equals."""

    __slots__ = ('priority', 'seq', 'i', 'j', 'lcm')

    def __init__(self, priority, seq, i, j, lcm=None):
        self.priority = priority
        self.seq = seq
        self.i = i
        self.j = j
        self.lcm = lcm

    def __eq__(self, other):
        return (self.priority, self.seq) == (other.priority, other.seq)

    def __lt__(self, other):
        if self.priority != other.priority:
            return self.priority > other.priority
        return self.seq < other.seq


def _corner(elements, rank, n):
    """Degree D with m^D in every component of the leading module, or None."""
    powers = [[None] * n for _ in range(rank)]
    for el in elements:
        if el is None:
            continue
        component, exp = el.lead
        support = [i for i, e in enumerate(exp) if e]
        if not support:
            powers[component] = [0] * n
        elif len(support) == 1:
            i = support[0]
            current = powers[component][i]
            if current is None or exp[i] < current:
                powers[component][i] = exp[i]
    corner = 1
    for component_powers in powers:
        if any(a is None for a in component_powers):
            return None
        corner = max(corner, sum(a - 1 for a in component_powers) + 1)
    return corner


def _complete(gens_terms, order: ModuleOrder, rank, n, truncate=False):
    """Complete generator term dicts to a standard basis.

    Returns the interreduced list of working elements and the corner used
    (None when no truncation happened).
    """
    key = order.key
    truncate = truncate and order.allows_truncation
    basis: List[Optional[_Element]] = []
    queue = []
    seq = itertools.count()
    corner = None

    def add(h):
        nonlocal corner
        h = _normalized(h, key)
        k = len(basis)
        basis.append(h)
        component, exp = h.lead
        for i, g in enumerate(basis[:k]):
            if g is None or g.lead[0] != component:
                continue
            g_exp = g.lead[1]
            if rank == 1 and all(a == 0 or b == 0 for a, b in zip(exp, g_exp)):
                continue
            lcm = tuple(max(a, b) for a, b in zip(exp, g_exp))
            heapq.heappush(
                queue, _Pair(key((component, lcm)), next(seq), i, k))
        if truncate:
            new_corner = _corner(basis, rank, n)
            if new_corner is not None and (corner is None
                                           or new_corner < corner):
                corner = new_corner
                logger.debug(f'highest corner lowered to degree {corner}')
                for i, g in enumerate(basis):
                    if g is None:
                        continue
                    terms = _truncated(g.terms, corner)
                    basis[i] = _Element(terms, key) if terms else None

    for terms in gens_terms:
        h = _Element(_truncated(terms, corner), key)
        if h.terms:
            add(h)

    pairs_done = 0
    while queue:
        pair = heapq.heappop(queue)
        f, g = basis[pair.i], basis[pair.j]
        if f is None or g is None:
            continue
        pairs_done += 1
        h = _spoly(f, g, key, corner)
        h = _mora_reduce(h, [b for b in basis if b is not None], key, corner)
        if h.terms:
            add(h)
    logger.debug(f'standard basis: {pairs_done} s-pairs, '
                 f'{sum(b is not None for b in basis)} elements before '
                 'interreduction')
    return _interreduce([b for b in basis if b is not None], key), corner


def _interreduce(elements, key):
    """Drop elements whose leading term is divisible by another's; sort."""
    kept = []
    for i, el in enumerate(elements):
        component, exp = el.lead
        redundant = False
        for j, other in enumerate(elements):
            if i == j or other.lead[0] != component:
                continue
            if _divides(other.lead[1], exp) and (other.lead[1] != exp or j < i):
                redundant = True
                break
        if not redundant:
            kept.append(el)
    kept.sort(key=lambda el: key(el.lead), reverse=True)
    return kept


# -- public API -----------------------------------------------------------------

def ecart(p, order=None) -> int:
    """Maximal total degree of p minus the degree of its leading term."""
    vec = _as_vector(p)
    if vec.is_zero():
        raise InputError('The ecart of the zero element is undefined.')
    return _Element(dict(vec.items()), as_module_order(order).key).ecart


def mora_normal_form(p, G, order=None):
    """Weak normal form of p with respect to the elements G (no truncation)."""
    vec = _as_vector(p)
    key = as_module_order(order).key
    reducers = []
    for g in G:
        g = _as_vector(g)
        if g.rank != vec.rank:
            raise RankMismatchError(
                f'Rank mismatch: {g.rank} and {vec.rank}.')
        if not g.is_zero():
            reducers.append(_Element(dict(g.items()), key))
    h = _mora_reduce(_Element(dict(vec.items()), key), reducers, key)
    result = Vector._from_clean(vec.ring, vec.rank, h.terms)
    return result.to_polynomial() if isinstance(p, Polynomial) else result


@dataclass(frozen=True)
class StandardBasis:
    """Interreduced standard basis of `source` under `order`.

    `corner` is the truncation degree used during completion (None if the
    basis is exact); reductions against the basis truncate at the same
    degree.
    """

    source: SubmoduleGens
    basis: Tuple[Vector, ...]
    order: ModuleOrder
    leading: frozenset
    corner: Optional[int] = None
    _elements: tuple = field(default=(), repr=False, compare=False)

    def reduce(self, p):
        vec = _as_vector(p)
        if vec.rank != self.source.rank:
            raise RankMismatchError(
                f'Rank mismatch: {vec.rank} and {self.source.rank}.')
        key = self.order.key
        h = _Element(_truncated(dict(vec.items()), self.corner), key)
        h = _mora_reduce(h, self._elements, key, self.corner)
        result = Vector._from_clean(vec.ring, vec.rank, h.terms)
        return result.to_polynomial() if isinstance(p, Polynomial) else result

    def contains(self, p):
        return self.reduce(p).is_zero()

    def staircase_corners(self):
        """Leading exponents per component.

        After truncation every monomial of degree `corner` lies in the
        module, so the pure powers of that degree are added.
        """
        n = self.source.ring.n
        per_component = [[] for _ in range(self.source.rank)]
        for component, exp in self.leading:
            per_component[component].append(exp)
        if self.corner is not None:
            for exps in per_component:
                exps.extend(tuple(self.corner if j == i else 0
                                  for j in range(n)) for i in range(n))
        return per_component

    def colength(self) -> Dimension:
        n = self.source.ring.n
        total = 0
        for exps in self.staircase_corners():
            count = _count_standard_monomials(exps, n)
            if count is None:
                return Dimension.INFINITE
            total += count
        return Dimension(total)


def _pure_powers(exps, n):
    powers = [None] * n
    for exp in exps:
        support = [i for i, e in enumerate(exp) if e]
        if not support:
            return [0] * n
        if len(support) == 1:
            i = support[0]
            if powers[i] is None or exp[i] < powers[i]:
                powers[i] = exp[i]
    return powers


def _count_standard_monomials(exps, n):
    """Monomials outside the monomial ideal generated by `exps`; None if infinite."""
    powers = _pure_powers(exps, n)
    if any(a is None for a in powers):
        return None
    if any(a == 0 for a in powers):
        return 0
    # boolean staircase mask over the box below the pure powers
    covered = np.zeros(tuple(powers), dtype=bool)
    for exp in exps:
        if all(e < a for e, a in zip(exp, powers)):
            covered[tuple(slice(e, None) for e in exp)] = True
    return int(covered.size - np.count_nonzero(covered))


def std(M: SubmoduleGens, order=None, truncate=False) -> StandardBasis:
    """Standard basis of M under a local module order.

    Args:
        M (SubmoduleGens): The submodule.
        order: ModuleOrder, MonomialOrder or order name; default
            negdegrevlex with term-over-position.
        truncate (bool): Allow highest-corner truncation (only effective
            for degree-compatible term-over-position orders).
    """
    order = as_module_order(order)
    elements, corner = _complete(
        [dict(g.items()) for g in M.gens], order, M.rank, M.ring.n, truncate)
    basis = tuple(Vector._from_clean(M.ring, M.rank, el.terms)
                  for el in elements)
    return StandardBasis(
        source=M, basis=basis, order=order,
        leading=frozenset(el.lead for el in elements), corner=corner,
        _elements=tuple(elements))


def colength(M: SubmoduleGens, order=None) -> Dimension:
    """dim_Q O^r / M over the local ring; INFINITE if not cofinite."""
    if not M.gens:
        return Dimension.INFINITE
    return std(M, order, truncate=True).colength()


def is_member(p, M: SubmoduleGens, order=None) -> bool:
    vec = _as_vector(p)
    if vec.rank != M.rank:
        raise RankMismatchError(f'Rank mismatch: {vec.rank} and {M.rank}.')
    if vec.is_zero():
        return True
    return std(M, order, truncate=True).contains(vec)


def is_submodule(A: SubmoduleGens, B: SubmoduleGens, order=None) -> bool:
    """Whether A is contained in B."""
    _check_compatible(A, B)
    basis = std(B, order, truncate=True)
    return all(basis.contains(g) for g in A.gens)


def same_module(A: SubmoduleGens, B: SubmoduleGens, order=None) -> bool:
    """Equality of submodules by mutual membership."""
    return is_submodule(A, B, order) and is_submodule(B, A, order)


def _check_compatible(A, B):
    if A.ring != B.ring:
        raise RingMismatchError(f'Ring mismatch: {A.ring} and {B.ring}.')
    if A.rank != B.rank:
        raise RankMismatchError(f'Rank mismatch: {A.rank} and {B.rank}.')


@dataclass(frozen=True)
class LiftResult:
    """unit * p = sum_i coefficients[i] * gens[i] + remainder."""

    coefficients: Tuple[Polynomial, ...]
    unit: Polynomial
    remainder: Vector


def _graph_relations(M: SubmoduleGens):
    """Generators of the syzygies of M over Q[x], with a global order.

    Buchberger runs on the graph module {(sum c_i g_i, c)} in Q[x]^(r+s)
    under position-over-term, pairing only elements led by the first r
    components. Each such pair reduced to zero there leaves a syzygy in
    the last s components, and these generate all of them.
    """
    ring, r, s = M.ring, M.rank, len(M.gens)
    key = GRAPH_ORDER.key
    zero = ring.zero_exponent()
    basis: List[_Element] = []
    found = []
    queue = []
    seq = itertools.count()
    dropped = set()

    def keep(h):
        found.append(Vector._from_clean(
            ring, s, {(component - r, exp): c
                      for (component, exp), c in h.terms.items()}))

    def add(h):
        h = _normalized(h, key)
        k = len(basis)
        component, exp = h.lead
        for pair in queue:
            if (pair.i, pair.j) in dropped or basis[pair.i].lead[0] != component:
                continue
            if (_divides(exp, pair.lcm)
                    and _lcm(basis[pair.i].lead[1], exp) != pair.lcm
                    and _lcm(basis[pair.j].lead[1], exp) != pair.lcm):
                dropped.add((pair.i, pair.j))
        basis.append(h)
        for i, g in enumerate(basis[:k]):
            if g.lead[0] != component:
                continue
            lcm = _lcm(g.lead[1], exp)
            heapq.heappush(queue, _Pair(-sum(lcm), next(seq), i, k, lcm))

    for i, g in enumerate(M.gens):
        terms = dict(g.items())
        terms[(r + i, zero)] = Fraction(1)
        add(_Element(terms, key))

    pairs_done = 0
    while queue:
        pair = heapq.heappop(queue)
        if (pair.i, pair.j) in dropped:
            continue
        pairs_done += 1
        h = _spoly(basis[pair.i], basis[pair.j], key, None)
        h = _mora_reduce(h, basis, key, limit=r, mora=False)
        if not h.terms:
            continue
        if h.lead[0] < r:
            add(h)
        else:
            keep(h)
    logger.debug(f'relations: {pairs_done} s-pairs, {len(found)} syzygies')
    return found


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def syzygies(M: SubmoduleGens) -> SubmoduleGens:
    """Generators of {c in O^s : sum_i c_i gens_i = 0}."""
    if not M.gens:
        return SubmoduleGens(M.ring, 1, ())
    return SubmoduleGens(M.ring, len(M.gens), tuple(_graph_relations(M)))


def relations(ring: Ring, rank, columns: Sequence[Vector]) -> SubmoduleGens:
    """Syzygies of an explicit column list, zero columns included.

    Unlike `syzygies`, indices refer to `columns` as given: a zero column
    contributes its unit vector.
    """
    columns = [_as_vector(c) for c in columns]
    nonzero = [i for i, c in enumerate(columns) if not c.is_zero()]
    size = len(columns)
    result = [Vector.unit(ring, size, i)
              for i, c in enumerate(columns) if c.is_zero()]
    if nonzero:
        M = SubmoduleGens(ring, rank, tuple(columns[i] for i in nonzero))
        for relation in syzygies(M).gens:
            result.append(Vector._from_clean(
                ring, size, {(nonzero[k], exp): c
                             for (k, exp), c in relation.items()}))
    return SubmoduleGens(ring, size, tuple(result))


def _unit_relation(syz: SubmoduleGens, positions):
    """A relation whose entries at `positions` all have a nonzero constant."""
    candidates = [rel.components() for rel in syz.gens]
    first = positions[0]
    for rel in candidates:
        if all(rel[i].constant_term() for i in positions):
            return rel
    for rel in candidates:
        if not rel[first].constant_term():
            continue
        for other in candidates:
            if not all(other[i].constant_term() for i in positions[1:]):
                continue
            for t in (1, 2):
                combined = [a + t * b for a, b in zip(rel, other)]
                if all(combined[i].constant_term() for i in positions):
                    return combined
    return None


def lift(p, M: SubmoduleGens, order=None) -> LiftResult:
    """Write unit * p = sum_i c_i gens_i + remainder.

    The remainder is zero iff p lies in M; otherwise it is a unit multiple
    of the weak normal form of p.
    """
    vec = _as_vector(p)
    if vec.rank != M.rank:
        raise RankMismatchError(f'Rank mismatch: {vec.rank} and {M.rank}.')
    ring, s = M.ring, len(M.gens)
    if vec.is_zero():
        return LiftResult(tuple(ring.zero() for _ in range(s)), ring.one(),
                          Vector(ring, M.rank))
    remainder = (std(M, order, truncate=True).reduce(vec) if M.gens
                 else vec)
    columns = list(M.gens) + [vec]
    positions = [s]
    if not remainder.is_zero():
        columns.append(remainder)
        positions.append(s + 1)
    relation = _unit_relation(relations(ring, M.rank, columns), positions)
    if relation is None:
        raise InputError(f'No unit relation found while lifting {vec}.')
    scale = Fraction(-1) / relation[s].constant_term()
    rest = Vector(ring, M.rank)
    if len(positions) == 2:
        rest = (scale * relation[s + 1]) * remainder
    return LiftResult(
        coefficients=tuple(scale * c for c in relation[:s]),
        unit=-scale * relation[s],
        remainder=rest)


def apply_relation(relation: Vector, M: SubmoduleGens) -> Vector:
    """sum_i relation_i * gens_i."""
    result = Vector(M.ring, M.rank)
    for c, g in zip(relation.components(), M.gens):
        result = result + c * g
    return result


def module_sum(A: SubmoduleGens, B: SubmoduleGens) -> SubmoduleGens:
    _check_compatible(A, B)
    return SubmoduleGens(A.ring, A.rank, A.gens + B.gens)


def module_intersection(A: SubmoduleGens, B: SubmoduleGens,
                        order=None) -> SubmoduleGens:
    """A ∩ B from the syzygies of (a_1, ..., a_s, b_1, ..., b_t)."""
    _check_compatible(A, B)
    if not A.gens or not B.gens:
        return SubmoduleGens(A.ring, A.rank, ())
    s = len(A.gens)
    result = []
    for relation in syzygies(module_sum(A, B)).gens:
        a_side = Vector(A.ring, A.rank)
        for c, g in zip(relation.components()[:s], A.gens):
            a_side = a_side + c * g
        result.append(a_side)
    return SubmoduleGens(A.ring, A.rank, tuple(result))


def presentation(A: SubmoduleGens, B: SubmoduleGens) -> SubmoduleGens:
    """{c in O^s : sum_i c_i a_i in B}, the relations of A/B on A's generators."""
    _check_compatible(A, B)
    return syzygies(module_sum(A, B)).project(range(len(A.gens)))


def subquotient_dim(A: SubmoduleGens, B: SubmoduleGens,
                    order=None) -> Dimension:
    """dim_Q A/B for B contained in A."""
    _check_compatible(A, B)
    if not A.gens:
        return Dimension(0)
    basis = std(A, order, truncate=True)
    outside = [str(b) for b in B.gens if not basis.contains(b)]
    if outside:
        raise InclusionError(
            'The second module is not contained in the first.',
            [f'generator {b} is not a member' for b in outside])
    lower = colength(B, order)
    if lower.is_finite:
        return Dimension(int(lower) - int(basis.colength()))
    relations = presentation(A, B)
    if not relations.gens:
        return Dimension.INFINITE
    return colength(relations, order)
