"""
Copyright 2021 Brain Electrophysiology Laboratory Company LLC

Licensed under the ApacheLicense, Version 2.0(the "License");
you may not use this module except in compliance with the License.
You may obtain a copy of the License at:

http: // www.apache.org / licenses / LICENSE - 2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an
"AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF
ANY KIND, either express or implied.
"""
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import (Dict, Iterable, Iterator, List, Mapping, NamedTuple,
                    Optional, Sequence, Tuple, Union)

from sympy.polys.rings import PolyRing

from .polyring import Poly, RationalLike, format_poly, rational


class Generator(IntEnum):
    """The two binary generators, COM before LIE in every ordering"""
    COM = 0
    LIE = 1

    @property
    def swap_sign(self) -> int:
        """Sign picked up when the two arguments are exchanged"""
        return 1 if self is Generator.COM else -1

    @property
    def symbol(self) -> str:
        return 'mu' if self is Generator.COM else 'lambda'


COM = Generator.COM
LIE = Generator.LIE


class Node(NamedTuple):
    """Internal node of a raw tree"""
    op: Generator
    left: 'Tree'
    right: 'Tree'


Tree = Union[int, Node]


def com(left: Tree, right: Tree) -> Node:
    return Node(COM, left, right)


def lie(left: Tree, right: Tree) -> Node:
    return Node(LIE, left, right)


def leaves(tree: Tree) -> List[int]:
    """Leaf labels read left to right"""
    if isinstance(tree, int):
        return [tree]
    return leaves(tree.left) + leaves(tree.right)


def relabel(tree: Tree, perm: Sequence[int]) -> Tree:
    """Replace leaf `i` by `perm[i - 1]`"""
    if isinstance(tree, int):
        return perm[tree - 1]
    return Node(tree.op, relabel(tree.left, perm), relabel(tree.right, perm))


def render(tree: Tree, variable: str = 'x') -> str:
    """Write a tree with juxtaposition for COM and brackets for LIE

    A COM node used as an argument of another COM node is parenthesized, so
    `com(com(1, 2), 3)` renders as `(x1x2)x3` and `com(lie(1, 4), lie(2, 3))`
    as `[x1,x4][x2,x3]`.
    """
    if isinstance(tree, int):
        return f'{variable}{tree}'
    left = render(tree.left, variable)
    right = render(tree.right, variable)
    if tree.op is LIE:
        return f'[{left},{right}]'
    return _parenthesize(tree.left, left) + _parenthesize(tree.right, right)


def _parenthesize(tree: Tree, text: str) -> str:
    if isinstance(tree, Node) and tree.op is COM:
        return f'({text})'
    return text


class Shape(Enum):
    """Association types of the supported tree monomials"""
    BINARY = 'binary'
    LEFT_COMB = 'left-comb'
    TYPE1 = 'type1'
    TYPE2 = 'type2'

    @property
    def arity(self) -> int:
        return {'binary': 2, 'left-comb': 3,
                'type1': 4, 'type2': 4}[self.value]


@dataclass(frozen=True)
class TreeMonomial:
    """Canonical tree monomial

    Attributes
    ----------
    shape
        Association type. `LEFT_COMB` is `(x *1 x) *2 x`, `TYPE1` is
        `((x *1 x) *2 x) *3 x` and `TYPE2` is `(x *1 x) *2 (x *3 x)`.
    ops
        Generators `(*1, ..., *k)` in the order of the shape description
    labels
        Variable index at each leaf, read left to right
    """
    shape: Shape
    ops: Tuple[Generator, ...]
    labels: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.ops) != self.shape.arity - 1:
            raise ValueError(f'{self.shape.name} monomials take '
                             f'{self.shape.arity - 1} operations. '
                             f'Got: {len(self.ops)}')
        if sorted(self.labels) != list(range(1, self.shape.arity + 1)):
            raise ValueError(f'Leaf labels must be a permutation of '
                             f'1..{self.shape.arity}. Got: {self.labels}')
        s = self.labels
        canonical = s[0] < s[1]
        if self.shape is Shape.TYPE2:
            canonical = canonical and s[2] < s[3] and s[0] < s[2]
        if not canonical:
            raise ValueError(f'Monomial is not in canonical form: '
                             f'{render(self.to_tree())}')

    @property
    def arity(self) -> int:
        return self.shape.arity

    @property
    def lie_count(self) -> int:
        """Number of LIE nodes"""
        return sum(1 for op in self.ops if op is LIE)

    def to_tree(self) -> Tree:
        o, s = self.ops, self.labels
        if self.shape is Shape.BINARY:
            return Node(o[0], s[0], s[1])
        if self.shape is Shape.LEFT_COMB:
            return Node(o[1], Node(o[0], s[0], s[1]), s[2])
        if self.shape is Shape.TYPE1:
            return Node(o[2], Node(o[1], Node(o[0], s[0], s[1]), s[2]), s[3])
        return Node(o[1], Node(o[0], s[0], s[1]), Node(o[2], s[2], s[3]))

    def __str__(self) -> str:
        return render(self.to_tree())


def _orientation_key(tree: Tree) -> Tuple[int, int]:
    labels = leaves(tree)
    return -len(labels), min(labels)


def _orient(tree: Tree) -> Tuple[int, Tree]:
    if isinstance(tree, int):
        return 1, tree
    left_sign, left = _orient(tree.left)
    right_sign, right = _orient(tree.right)
    sign = left_sign * right_sign
    if _orientation_key(right) < _orientation_key(left):
        left, right = right, left
        sign *= tree.op.swap_sign
    return sign, Node(tree.op, left, right)


def _is_cherry(tree: Tree) -> bool:
    return (isinstance(tree, Node) and isinstance(tree.left, int)
            and isinstance(tree.right, int))


def _monomial(tree: Tree) -> TreeMonomial:
    if isinstance(tree, Node):
        left, right = tree.left, tree.right
        if _is_cherry(tree):
            return TreeMonomial(Shape.BINARY, (tree.op,), (left, right))
        if isinstance(left, Node) and isinstance(right, int):
            if _is_cherry(left):
                return TreeMonomial(Shape.LEFT_COMB, (left.op, tree.op),
                                    (left.left, left.right, right))
            inner = left.left
            if (isinstance(inner, Node) and _is_cherry(inner)
                    and isinstance(left.right, int)):
                return TreeMonomial(Shape.TYPE1,
                                    (inner.op, left.op, tree.op),
                                    (inner.left, inner.right, left.right,
                                     right))
        if (isinstance(left, Node) and isinstance(right, Node)
                and _is_cherry(left) and _is_cherry(right)):
            return TreeMonomial(Shape.TYPE2, (left.op, tree.op, right.op),
                                (left.left, left.right, right.left,
                                 right.right))
    raise ValueError(f'Unsupported tree shape: {render(tree)}')


def straighten(tree: Tree) -> Tuple[int, TreeMonomial]:
    """Rewrite a raw tree as a sign times a canonical monomial

    At every node the larger subtree is placed on the left, and among
    subtrees of equal size the one holding the smallest label. Each exchange
    below a LIE node flips the sign.

    Parameters
    ----------
    tree
        Raw tree of arity 2, 3 or 4 with distinct leaf labels 1..n

    Returns
    -------
    `(sign, monomial)` with `sign` in {1, -1}

    Raises
    ------
    ValueError
        If leaf labels repeat or the tree has no supported shape
    """
    labels = leaves(tree)
    if len(set(labels)) != len(labels):
        raise ValueError(f'Leaf labels must be distinct. Got: {labels}')
    sign, oriented = _orient(tree)
    return sign, _monomial(oriented)


_OPS = (COM, LIE)
_ARITY3_OPS = ((COM, COM), (COM, LIE), (LIE, COM), (LIE, LIE))
_ARITY3_LABELS = ((1, 2, 3), (1, 3, 2), (2, 3, 1))


@lru_cache(maxsize=None)
def _basis(arity: int) -> Tuple[TreeMonomial, ...]:
    if arity == 3:
        return tuple(TreeMonomial(Shape.LEFT_COMB, ops, labels)
                     for ops in _ARITY3_OPS for labels in _ARITY3_LABELS)
    if arity == 4:
        labels = list(permutations(range(1, 5)))
        type1 = [
            TreeMonomial(Shape.TYPE1, (o1, o2, o3), s)
            for s in labels if s[0] < s[1]
            for o3 in _OPS for o2 in _OPS for o1 in _OPS
        ]
        type2 = [
            TreeMonomial(Shape.TYPE2, (o1, o2, o3), s)
            for s in labels if s[0] < s[1] and s[2] < s[3] and s[0] < s[2]
            for o2 in _OPS for o1 in _OPS for o3 in _OPS
        ]
        return tuple(type1 + type2)
    raise ValueError(f'Unsupported arity: {arity}')


def basis(arity: int) -> List[TreeMonomial]:
    """Ordered basis of the arity 3 or arity 4 component

    Arity 3 has 12 monomials. Arity 4 has the 96 monomials of type 1 followed
    by the 24 of type 2, each ordered by leaf labels and then by operations,
    COM before LIE.

    Raises
    ------
    ValueError
        If `arity` is not 3 or 4
    """
    return list(_basis(arity))


@lru_cache(maxsize=None)
def basis_index(arity: int) -> Dict[TreeMonomial, int]:
    """Position of each basis monomial, 0-based"""
    return {m: i for i, m in enumerate(_basis(arity))}


class OperadElement:
    """Linear combination of tree monomials of a fixed arity

    Coefficients are polynomials in the parameter ring. Zero coefficients are
    never stored, so two elements are equal exactly when their term maps are.
    """

    def __init__(self, ring: PolyRing, arity: int,
                 terms: Optional[Mapping[TreeMonomial, Poly]] = None) -> None:
        self.ring = ring
        self.arity = arity
        self._terms: Dict[TreeMonomial, Poly] = {}
        for monomial, coeff in (terms or {}).items():
            if monomial.arity != arity:
                raise ValueError(f'Monomial {monomial} has arity '
                                 f'{monomial.arity}, expected {arity}')
            coeff = ring(coeff)
            if coeff:
                self._terms[monomial] = coeff

    @classmethod
    def from_trees(cls, ring: PolyRing, arity: int,
                   pairs: Iterable[Tuple[Union[Poly, RationalLike], Tree]]
                   ) -> 'OperadElement':
        """Sum `coeff * tree` over `pairs`, straightening every tree"""
        terms: Dict[TreeMonomial, Poly] = {}
        for coeff, tree in pairs:
            sign, monomial = straighten(tree)
            if monomial.arity != arity:
                raise ValueError(f'Tree {render(tree)} has arity '
                                 f'{monomial.arity}, expected {arity}')
            value = ring(_coefficient(coeff)) * sign
            terms[monomial] = terms.get(monomial, ring.zero) + value
        return cls(ring, arity, terms)

    @classmethod
    def from_vector(cls, ring: PolyRing, arity: int,
                    vector: Sequence[Poly]) -> 'OperadElement':
        """Element whose coefficients in `basis(arity)` are `vector`"""
        monomials = _basis(arity)
        if len(vector) != len(monomials):
            raise ValueError(f'Vector has {len(vector)} entries, expected '
                             f'{len(monomials)}')
        return cls(ring, arity, dict(zip(monomials, vector)))

    def items(self) -> Iterator[Tuple[TreeMonomial, Poly]]:
        return iter(self._terms.items())

    def coefficient(self, monomial: TreeMonomial) -> Poly:
        return self._terms.get(monomial, self.ring.zero)

    def vector(self) -> List[Poly]:
        """Coefficients in the order of `basis(arity)`"""
        return [self.coefficient(m) for m in _basis(self.arity)]

    def map_coefficients(self, func) -> 'OperadElement':
        return OperadElement(self.ring, self.arity,
                             {m: func(m, c) for m, c in self._terms.items()})

    def scale(self, factor: Union[Poly, RationalLike]) -> 'OperadElement':
        factor = self.ring(_coefficient(factor))
        return self.map_coefficients(lambda _, c: c * factor)

    def _check_compatible(self, other: 'OperadElement') -> None:
        if self.ring != other.ring or self.arity != other.arity:
            raise ValueError('Elements must share ring and arity')

    def __add__(self, other: 'OperadElement') -> 'OperadElement':
        self._check_compatible(other)
        terms = dict(self._terms)
        for monomial, coeff in other.items():
            terms[monomial] = terms.get(monomial, self.ring.zero) + coeff
        return OperadElement(self.ring, self.arity, terms)

    def __neg__(self) -> 'OperadElement':
        return self.scale(-1)

    def __sub__(self, other: 'OperadElement') -> 'OperadElement':
        return self + (-other)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperadElement):
            return NotImplemented
        return (self.ring == other.ring and self.arity == other.arity
                and self._terms == other._terms)

    def __repr__(self) -> str:
        return f'OperadElement(arity={self.arity}, {self})'

    def __str__(self) -> str:
        if not self._terms:
            return '0'
        pieces = []
        for monomial in sorted(self._terms, key=_display_key):
            sign, body = _format_term(self._terms[monomial], str(monomial))
            if pieces:
                pieces.append(f'{sign} {body}')
            else:
                pieces.append(body if sign == '+' else f'-{body}')
        return ' '.join(pieces)


def _coefficient(value: Union[Poly, RationalLike]
                 ) -> Union[Poly, RationalLike]:
    if isinstance(value, (str, Fraction)):
        return rational(value)
    return value


def _display_key(monomial: TreeMonomial) -> Tuple:
    position = basis_index(monomial.arity).get(monomial, 0) \
        if monomial.arity in (3, 4) else 0
    return position, monomial.labels, tuple(monomial.ops)


def _format_term(coeff: Poly, monomial: str) -> Tuple[str, str]:
    if len(coeff) > 1:
        return '+', f'({format_poly(coeff)})*{monomial}'
    text = format_poly(coeff)
    sign = '-' if text.startswith('-') else '+'
    text = text.lstrip('-')
    if text == '1':
        return sign, monomial
    return sign, f'{text}*{monomial}'


def compose_permutations(tau: Sequence[int],
                         sigma: Sequence[int]) -> Tuple[int, ...]:
    """The permutation `i -> tau(sigma(i))` in one-line notation"""
    return tuple(tau[s - 1] for s in sigma)


def act(perm: Sequence[int], elem: OperadElement) -> OperadElement:
    """Relabel the leaves of every monomial by `perm` and straighten

    `perm` is given in one-line notation: leaf `i` becomes `perm[i - 1]`.

    Raises
    ------
    ValueError
        If `perm` is not a permutation of 1..arity
    """
    perm = tuple(perm)
    if sorted(perm) != list(range(1, elem.arity + 1)):
        raise ValueError(f'Permutation {perm} does not act on arity '
                         f'{elem.arity}')
    return OperadElement.from_trees(
        elem.ring, elem.arity,
        ((coeff, relabel(m.to_tree(), perm)) for m, coeff in elem.items()))


def partial_compose_into(rel: OperadElement, slot: int,
                         gen: Generator) -> OperadElement:
    """Substitute `gen(x_slot, x_slot+1)` for the variable `x_slot`

    Variables above `slot` are shifted up by one.

    Raises
    ------
    ValueError
        If `slot` is not in 1..arity or the result would exceed arity 4
    """
    if not 1 <= slot <= rel.arity:
        raise ValueError(f'Invalid slot {slot} for arity {rel.arity}')
    if rel.arity >= 4:
        raise ValueError(f'Unsupported arity: {rel.arity + 1}')

    def substitute(tree: Tree) -> Tree:
        if isinstance(tree, int):
            if tree == slot:
                return Node(gen, slot, slot + 1)
            return tree + 1 if tree > slot else tree
        return Node(tree.op, substitute(tree.left), substitute(tree.right))

    return OperadElement.from_trees(
        rel.ring, rel.arity + 1,
        ((coeff, substitute(m.to_tree())) for m, coeff in rel.items()))


def partial_compose_outer(gen: Generator,
                          rel: OperadElement) -> OperadElement:
    """Form `gen(rel(x1, ..., xn), x_n+1)`"""
    if rel.arity >= 4:
        raise ValueError(f'Unsupported arity: {rel.arity + 1}')
    last = rel.arity + 1
    return OperadElement.from_trees(
        rel.ring, last,
        ((coeff, Node(gen, m.to_tree(), last)) for m, coeff in rel.items()))


def rescale_lie(elem: OperadElement,
                scale: RationalLike) -> OperadElement:
    """Substitute `scale * [-,-]` for the bracket

    Each coefficient is multiplied by `scale` raised to the number of LIE
    nodes of its monomial.
    """
    scale = rational(scale)
    return elem.map_coefficients(lambda m, c: c * scale**m.lie_count)
