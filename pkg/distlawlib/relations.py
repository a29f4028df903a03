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
import csv
from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ
from sympy.combinatorics import Permutation
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyRing

from .polyring import (Poly, RationalLike, check_point, evaluate,
                       format_poly, parameter_ring)
from .terms import (COM, LIE, OperadElement, act, basis, com, lie,
                    partial_compose_into, partial_compose_outer)


class NonUnitPivotError(ValueError):
    """Row reduction needs a pivot that is not a nonzero rational"""


def lie_dimension(k: int) -> int:
    """Dimension of Lie(k)"""
    return factorial(k - 1)


def nlie2_dimension(k: int) -> int:
    """Dimension of NLie2(k), the Lie operad truncated above weight one"""
    return 1 if k <= 2 else 0


class PolyMatrix:
    """Matrix with polynomial entries and a label for every row

    Parameters
    ----------
    ring
        Ring of the entries
    entries
        2-dimensional object array of ring elements
    provenance
        One label per row describing where the row came from
    columns
        One label per column
    """

    def __init__(self, ring: PolyRing, entries: np.ndarray,
                 provenance: Optional[Sequence[str]] = None,
                 columns: Optional[Sequence[str]] = None) -> None:
        if len(entries.shape) != 2:
            raise ValueError('Input array must be 2-dimensional. '
                             f'Got shape: {entries.shape}')
        rows, cols = entries.shape
        provenance = list(provenance if provenance is not None
                          else (f'row {i + 1}' for i in range(rows)))
        columns = list(columns if columns is not None
                       else (f'col {j + 1}' for j in range(cols)))
        if len(provenance) != rows:
            raise ValueError(f'Provenance has {len(provenance)} labels for '
                             f'{rows} rows')
        if len(columns) != cols:
            raise ValueError(f'Got {len(columns)} column labels for '
                             f'{cols} columns')
        self.ring = ring
        self.entries = entries
        self.provenance = provenance
        self.columns = columns

    @classmethod
    def from_rows(cls, ring: PolyRing, rows: Sequence[Sequence],
                  ncols: Optional[int] = None,
                  provenance: Optional[Sequence[str]] = None,
                  columns: Optional[Sequence[str]] = None) -> 'PolyMatrix':
        """Build a matrix from nested sequences of ring-coercible values"""
        if ncols is None:
            if not rows:
                raise ValueError('Column count required for an empty matrix')
            ncols = len(rows[0])
        entries = np.empty((len(rows), ncols), dtype=object)
        for i, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError(f'Row {i + 1} has {len(row)} entries, '
                                 f'expected {ncols}')
            for j, value in enumerate(row):
                entries[i, j] = ring(value)
        return cls(ring, entries, provenance, columns)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.entries.shape

    @property
    def nrows(self) -> int:
        return self.entries.shape[0]

    @property
    def ncols(self) -> int:
        return self.entries.shape[1]

    def row(self, i: int) -> List[Poly]:
        return list(self.entries[i])

    def rows(self) -> List[List[Poly]]:
        return [self.row(i) for i in range(self.nrows)]

    def take_rows(self, indices: Sequence[int]) -> 'PolyMatrix':
        """Submatrix of the given rows, keeping their labels"""
        indices = list(indices)
        entries = self.entries[indices, :] if indices else \
            np.empty((0, self.ncols), dtype=object)
        return PolyMatrix(self.ring, entries,
                          [self.provenance[i] for i in indices], self.columns)

    def __getitem__(self, index: Tuple[int, int]) -> Poly:
        return self.entries[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape
                and all(a == b for a, b in zip(self.entries.flat,
                                               other.entries.flat)))

    def __repr__(self) -> str:
        return f'PolyMatrix(shape={self.shape})'

    def specialize(self, point: Sequence[RationalLike]) -> DomainMatrix:
        """Sparse matrix over QQ obtained by evaluating every entry"""
        values = check_point(self.ring, point)
        rows: Dict[int, Dict[int, object]] = {}
        for i in range(self.nrows):
            row = {}
            for j in range(self.ncols):
                entry = self.entries[i, j]
                if entry:
                    value = evaluate(entry, values)
                    if value:
                        row[j] = value
            if row:
                rows[i] = row
        return DomainMatrix(rows, self.shape, QQ)

    def rank_at(self, point: Sequence[RationalLike]) -> int:
        """Exact rank over QQ after specializing the parameters at `point`"""
        specialized = self.specialize(point)
        if specialized.is_zero_matrix:
            return 0
        return specialized.rank()

    def write_csv(self, path: str) -> None:
        """Write entries in text form, one header row of column labels"""
        with open(path, 'w', newline='') as fp:
            writer = csv.writer(fp, lineterminator='\n')
            writer.writerow(self.columns)
            for i in range(self.nrows):
                writer.writerow(format_poly(e) for e in self.entries[i])

    def write_provenance(self, path: str) -> None:
        """Write `row,label` pairs, rows counted from 1"""
        with open(path, 'w', newline='') as fp:
            writer = csv.writer(fp, lineterminator='\n')
            writer.writerow(['row', 'provenance'])
            for i, label in enumerate(self.provenance, start=1):
                writer.writerow([i, label])


@dataclass(frozen=True)
class RelationSystem:
    """Parametric quadratic relations between COM and LIE in arity 3

    Attributes
    ----------
    name
        Identifier used on the command line and in reports
    ring
        Parameter ring of the coefficients
    relations
        Spanning set of the arity-3 relations
    labels
        One name per relation
    inner_dimension
        Arity dimensions of the operad generated by LIE alone
    expected_relations
        Number of relations left after row reduction
    """
    name: str
    ring: PolyRing
    relations: Tuple[OperadElement, ...]
    labels: Tuple[str, ...]
    inner_dimension: Callable[[int], int]
    expected_relations: int

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.relations):
            raise ValueError(f'Got {len(self.labels)} labels for '
                             f'{len(self.relations)} relations')
        for label, relation in zip(self.labels, self.relations):
            if relation.arity != 3 or relation.ring != self.ring:
                raise ValueError(f'Relation {label} must have arity 3 over '
                                 f'the system ring')

    @property
    def parameters(self) -> int:
        return self.ring.ngens

    @property
    def parameter_names(self) -> Tuple[str, ...]:
        return tuple(str(s) for s in self.ring.symbols)

    def matrix(self) -> PolyMatrix:
        """Coefficients of the relations in the arity-3 basis"""
        return PolyMatrix.from_rows(
            self.ring, [r.vector() for r in self.relations], 12,
            self.labels, [str(m) for m in basis(3)])


def build_com_lie_system() -> RelationSystem:
    """Spanning relations of a distributive law between Com and Lie

    The rows are the Jacobi identity, the three cyclic images of the
    derivation-type relation and two images of the associativity-type
    relation. Parameters `t1`, `t2` weigh the tails of the derivation
    relation, `t3` the tail of the associativity relation.
    """
    R = parameter_ring(3)
    t1, t2, t3 = R.gens
    jacobi = OperadElement.from_trees(R, 3, [
        (1, lie(lie(1, 2), 3)),
        (-1, lie(lie(1, 3), 2)),
        (1, lie(lie(2, 3), 1)),
    ])
    derivation = OperadElement.from_trees(R, 3, [
        (1, lie(com(1, 2), 3)),
        (-t1, com(lie(1, 3), 2)),
        (-t1, com(lie(2, 3), 1)),
        (-t2, lie(lie(1, 3), 2)),
        (-t2, lie(lie(2, 3), 1)),
    ])
    associativity = OperadElement.from_trees(R, 3, [
        (1, com(com(1, 2), 3)),
        (-1, com(com(2, 3), 1)),
        (-t3, lie(lie(1, 3), 2)),
    ])
    relations = (
        jacobi,
        derivation,
        act((3, 1, 2), derivation),
        act((2, 3, 1), derivation),
        associativity,
        act((3, 1, 2), associativity),
    )
    labels = ('jacobi', 'derivation', 'derivation (1 3 2)',
              'derivation (1 2 3)', 'associativity',
              'associativity (1 3 2)')
    return RelationSystem('com-lie', R, relations, labels, lie_dimension, 6)


def build_nlie2_system() -> RelationSystem:
    """Spanning relations of a distributive law between Com and NLie2

    NLie2 kills every bracket of two brackets, so the three basis monomials
    `[[a,b],c]` span relations and replace the Jacobi identity. In the
    derivation relation `[a1a2,a3] - t1(...) - t2(...)` the `t2` tail is a
    combination of those monomials and is absorbed. Likewise the `t3` tail
    of the associativity relation. The derivation tail `t1` is the only
    surviving parameter. Relations stay S3-stable: the cyclic images span
    the same orbits as in the Com/Lie case.
    """
    R = parameter_ring(1)
    (t1,) = R.gens
    brackets = [
        OperadElement.from_trees(R, 3, [(1, lie(lie(1, 2), 3))]),
        OperadElement.from_trees(R, 3, [(1, lie(lie(1, 3), 2))]),
        OperadElement.from_trees(R, 3, [(1, lie(lie(2, 3), 1))]),
    ]
    derivation = OperadElement.from_trees(R, 3, [
        (1, lie(com(1, 2), 3)),
        (-t1, com(lie(1, 3), 2)),
        (-t1, com(lie(2, 3), 1)),
    ])
    associativity = OperadElement.from_trees(R, 3, [
        (1, com(com(1, 2), 3)),
        (-1, com(com(2, 3), 1)),
    ])
    relations = tuple(brackets) + (
        derivation,
        act((3, 1, 2), derivation),
        act((2, 3, 1), derivation),
        associativity,
        act((3, 1, 2), associativity),
    )
    labels = ('bracket (1 2) 3', 'bracket (1 3) 2', 'bracket (2 3) 1',
              'derivation', 'derivation (1 3 2)', 'derivation (1 2 3)',
              'associativity', 'associativity (1 3 2)')
    return RelationSystem('nlie2', R, relations, labels, nlie2_dimension, 8)


def _is_unit(entry: Poly) -> bool:
    return bool(entry) and entry.is_ground


def rref_unit_pivots(mat: PolyMatrix) -> PolyMatrix:
    """Reduced row echelon form using only nonzero rational pivots

    Columns are processed left to right. In each column the first remaining
    row with a nonzero rational entry becomes the pivot row, is scaled to a
    leading 1 and cleared from every other row. Zero rows are dropped.

    Parameters
    ----------
    mat
        Matrix to reduce

    Returns
    -------
    The reduced matrix, rows labelled with the provenance of their pivot row

    Raises
    ------
    NonUnitPivotError
        If a column has nonzero entries below the pivots but none of them is
        a rational number
    """
    rows = mat.rows()
    provenance = list(mat.provenance)
    rank = 0
    for col in range(mat.ncols):
        pivot = next((i for i in range(rank, len(rows))
                      if _is_unit(rows[i][col])), None)
        if pivot is None:
            if any(rows[i][col] for i in range(rank, len(rows))):
                raise NonUnitPivotError(
                    f'No scalar pivot available in column {col + 1}')
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        provenance[rank], provenance[pivot] = provenance[pivot], \
            provenance[rank]
        value = rows[rank][col].LC
        rows[rank] = [e.quo_ground(value) for e in rows[rank]]
        for i, row in enumerate(rows):
            if i != rank and row[col]:
                factor = row[col]
                rows[i] = [a - factor * b for a, b in zip(row, rows[rank])]
        rank += 1
    return PolyMatrix.from_rows(mat.ring, rows[:rank], mat.ncols,
                                provenance[:rank], mat.columns)


def cycle_notation(perm: Sequence[int]) -> str:
    """One-line cycle notation of a permutation given by its images"""
    cycles = Permutation([p - 1 for p in perm]).cyclic_form
    if not cycles:
        return '()'
    return ''.join('(' + ' '.join(str(k + 1) for k in cycle) + ')'
                   for cycle in cycles)


def compositions(relations: Sequence[OperadElement]
                 ) -> List[Tuple[str, OperadElement]]:
    """Arity-4 partial compositions of the relations with the generators

    First `r_i o_j g` for every relation, slot `j` in 1..3 and `g` in
    (mu, lambda); then `g o_1 r_i` for every relation.
    """
    result = []
    for i, relation in enumerate(relations, start=1):
        for slot in range(1, 4):
            for gen in (COM, LIE):
                result.append((f'r{i} o{slot} {gen.symbol}',
                               partial_compose_into(relation, slot, gen)))
    for i, relation in enumerate(relations, start=1):
        for gen in (COM, LIE):
            result.append((f'{gen.symbol} o1 r{i}',
                           partial_compose_outer(gen, relation)))
    return result


def reduced_relations(system: RelationSystem) -> List[OperadElement]:
    """Relations of the row-reduced system

    Raises
    ------
    ValueError
        If the reduced system does not have the expected number of rows
    """
    reduced = rref_unit_pivots(system.matrix())
    if reduced.nrows != system.expected_relations:
        raise ValueError(f'Expected {system.expected_relations} relations '
                         f'after row reduction, got {reduced.nrows}')
    return [OperadElement.from_vector(system.ring, 3, row)
            for row in reduced.rows()]


def consequences_arity4(system: RelationSystem) -> PolyMatrix:
    """Matrix spanning the arity-4 consequences of the relations

    Every partial composition of the reduced relations is acted on by the
    24 permutations of S4 in lexicographic order. Rows that straighten to
    zero are kept.

    Parameters
    ----------
    system
        Relation system to expand

    Returns
    -------
    `(8 * k * 24) x 120` matrix for `k` reduced relations, each row labelled
    with its composition and permutation, e.g. `r1 o3 lambda (1 2)`
    """
    perms = list(permutations(range(1, 5)))
    cycles = [cycle_notation(p) for p in perms]
    rows: List[List[Poly]] = []
    provenance: List[str] = []
    for label, element in compositions(reduced_relations(system)):
        for perm, cycle in zip(perms, cycles):
            rows.append(act(perm, element).vector())
            provenance.append(f'{label} {cycle}')
    return PolyMatrix.from_rows(system.ring, rows, 120, provenance,
                                [str(m) for m in basis(4)])


def span_rank(elements: Sequence[OperadElement],
              point: Sequence[RationalLike]) -> int:
    """Rank of the span of `elements` after specializing at `point`"""
    if not elements:
        return 0
    ring, arity = elements[0].ring, elements[0].arity
    mat = PolyMatrix.from_rows(ring, [e.vector() for e in elements],
                               len(basis(arity)))
    return mat.rank_at(point)


def in_row_space(elements: Sequence[OperadElement],
                 candidate: OperadElement,
                 point: Sequence[RationalLike]) -> bool:
    """Whether `candidate` is a combination of `elements` at `point`"""
    return (span_rank(list(elements) + [candidate], point)
            == span_rank(elements, point))


def same_row_space(first: Sequence[OperadElement],
                   second: Sequence[OperadElement],
                   point: Sequence[RationalLike]) -> bool:
    """Whether both families span the same space at `point`"""
    joint = span_rank(list(first) + list(second), point)
    return joint == span_rank(first, point) == span_rank(second, point)
