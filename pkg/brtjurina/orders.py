"""Local monomial orderings and their extensions to free modules.

Orders are expressed through sort keys: a term is greater than another iff
its key is greater. The user-facing orders are local, i.e. the constant
monomial is the greatest one; `PolynomialOrder` is the global order used
internally for relations.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import NamedTuple, Optional

from brtjurina.errors import ArgumentRangeError, InputError
from brtjurina.utils import validate_value_in_enum


class OrderKind(Enum):
    NEGDEGREVLEX = 'negdegrevlex'
    NEGLEX = 'neglex'


class Tie(Enum):
    TERM_OVER_POSITION = 'term-over-position'
    POSITION_OVER_TERM = 'position-over-term'


class Cmp(Enum):
    LT = -1
    EQ = 0
    GT = 1


@lru_cache(maxsize=None)
def _negdegrevlex_key(exp):
    # lower degree is greater; ties: the smaller last differing exponent wins
    return (-sum(exp), tuple(-e for e in reversed(exp)))


@lru_cache(maxsize=None)
def _neglex_key(exp):
    return tuple(-e for e in exp)


@lru_cache(maxsize=None)
def _degrevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


_KEYS = {
    OrderKind.NEGDEGREVLEX: _negdegrevlex_key,
    OrderKind.NEGLEX: _neglex_key,
}


@dataclass(frozen=True)
class MonomialOrder:
    """Local monomial order on exponent vectors."""

    kind: OrderKind = OrderKind.NEGDEGREVLEX

    def key(self, exp):
        return _KEYS[self.kind](exp)

    is_global = False

    @property
    def degree_compatible(self):
        """Whether a greater monomial never has a larger total degree."""
        return self.kind is OrderKind.NEGDEGREVLEX

    def __str__(self):
        return self.kind.value


class PolynomialOrder:
    """Global degree reverse lexicographic order of Q[x].

    Only used for relations among generators: the local ring is flat over
    Q[x], so relations found over Q[x] generate the local ones.
    """

    is_global = True
    degree_compatible = False

    def key(self, exp):
        return _degrevlex_key(exp)

    def __eq__(self, other):
        return isinstance(other, PolynomialOrder)

    def __hash__(self):
        return hash('degrevlex')

    def __str__(self):
        return 'degrevlex'


@dataclass(frozen=True)
class ModuleOrder:
    """Extension of a monomial order to terms x^a * e_c of a free module.

    Term-over-position compares monomials first; position-over-term compares
    components first. In both, the smaller component index is greater.
    """

    base: MonomialOrder = MonomialOrder()
    tie: Tie = Tie.TERM_OVER_POSITION

    def key(self, term):
        component, exp = term
        if self.tie is Tie.TERM_OVER_POSITION:
            return (self.base.key(exp), -component)
        return (-component, self.base.key(exp))

    @property
    def allows_truncation(self):
        """Whether terms above a highest corner may be dropped."""
        return (self.base.degree_compatible
                and self.tie is Tie.TERM_OVER_POSITION)


DEFAULT_ORDER = MonomialOrder()
DEFAULT_MODULE_ORDER = ModuleOrder()
GRAPH_ORDER = ModuleOrder(PolynomialOrder(), Tie.POSITION_OVER_TERM)


def order_from_name(name) -> MonomialOrder:
    if isinstance(name, MonomialOrder):
        return name
    return MonomialOrder(validate_value_in_enum(name, OrderKind))


def as_module_order(order) -> ModuleOrder:
    if order is None:
        return DEFAULT_MODULE_ORDER
    if isinstance(order, ModuleOrder):
        return order
    return ModuleOrder(order_from_name(order))


def cmp_monomial(a, b, order: MonomialOrder = DEFAULT_ORDER) -> Cmp:
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise ArgumentRangeError(
            f'Exponent vectors of different lengths: {a} and {b}.')
    ka, kb = order.key(a), order.key(b)
    if ka == kb:
        return Cmp.EQ
    return Cmp.GT if ka > kb else Cmp.LT


class LeadingTerm(NamedTuple):
    coefficient: object
    exponent: tuple
    component: Optional[int] = None


def leading_term(p, order=None) -> LeadingTerm:
    """The greatest term of a Polynomial or a Vector under `order`."""
    from brtjurina.polynomial import Polynomial

    if p.is_zero():
        raise InputError('The zero element has no leading term.')
    if isinstance(p, Polynomial):
        if isinstance(order, ModuleOrder):
            order = order.base
        order = order or DEFAULT_ORDER
        exp = max((e for e, _ in p.items()), key=order.key)
        return LeadingTerm(p.coefficient(exp), exp)
    order = as_module_order(order)
    component, exp = max((t for t, _ in p.items()), key=order.key)
    return LeadingTerm(p.coefficient(component, exp), exp, component)
