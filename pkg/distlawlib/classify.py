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
import json
import math
from dataclasses import dataclass, field
from datetime import datetime
from functools import cached_property
from itertools import permutations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pytz
from sympy import QQ
from sympy.polys.rings import PolyRing
from sympy.utilities.iterables import multiset_partitions

from .matred import (PartialSmithResult, distinct_entries, entry_generators,
                     partial_smith, strip_zero_rows)
from .polyring import (Poly, Rational, RationalLike, check_point,
                       evaluate, format_poly, format_rational, groebner,
                       parameter_ring, rational, substitute, total_degree,
                       variables)
from .relations import (PolyMatrix, RelationSystem, consequences_arity4,
                        in_row_space, lie_dimension, same_row_space)
from .terms import OperadElement, act, basis, com, lie, rescale_lie

History = List[Dict[str, object]]


class UnclassifiedVarietyError(ValueError):
    """The zero set is not of a shape the case analysis can read off"""


class PipelineInvariantError(AssertionError):
    """A checkpoint guaranteed by the mathematics did not hold"""


def composite_dimension(n: int,
                        inner_dimension: Callable[[int], int] = lie_dimension
                        ) -> int:
    """Dimension of the arity-`n` component of Com composed with an operad

    Sums, over the set partitions of {1, ..., n}, the product of
    `inner_dimension` over the blocks.

    Parameters
    ----------
    n
        Arity, 1 through 6
    inner_dimension
        Arity dimensions of the inner operad. Defaults to Lie, for which the
        result is n!

    Raises
    ------
    ValueError
        If `n` is out of range
    """
    if not 1 <= n <= 6:
        raise ValueError(f'Arity out of range [1, 6]: {n}')
    return sum(
        math.prod(inner_dimension(len(block)) for block in partition)
        for partition in multiset_partitions(list(range(n)))
    )


def target_rank(system: RelationSystem) -> int:
    """Rank of the consequence matrix exactly at distributive laws"""
    return len(basis(4)) - composite_dimension(4, system.inner_dimension)


def _now() -> datetime:
    return datetime.now(pytz.utc)


class ConsequencePipeline:
    """Stages of the classification for one relation system

    Every stage is computed once, on first access. With a `history` list,
    each stage appends an entry with its settings, results and timing.
    """

    def __init__(self, system: RelationSystem,
                 history: Optional[History] = None,
                 timezone: pytz.BaseTzInfo = pytz.utc) -> None:
        self.system = system
        self.history = history
        self.timezone = timezone

    def record(self, name: str, method: str, begin: datetime,
                settings: List[str], results: List[str]) -> None:
        if self.history is None:
            return
        self.history.append(dict(
            name=f'Distributive Law {name}',
            method=method,
            beginTime=begin.astimezone(self.timezone),
            endTime=_now().astimezone(self.timezone),
            settings=[f'System: {self.system.name}'] + settings,
            results=results,
        ))

    @property
    def target_rank(self) -> int:
        return target_rank(self.system)

    @cached_property
    def consequence_matrix(self) -> PolyMatrix:
        begin = _now()
        mat = consequences_arity4(self.system)
        self.record('Consequences', 'Partial Composition', begin,
                     [f'Relations: {self.system.expected_relations}',
                      'Permutations: 24'],
                     [f'Matrix size: {mat.nrows} x {mat.ncols}'])
        return mat

    @cached_property
    def smith(self) -> PartialSmithResult:
        mat = self.consequence_matrix
        begin = _now()
        result = partial_smith(mat)
        self.record('Partial Smith Form', 'Elimination', begin,
                     ['Pivot rule: Markowitz, lowest (row, col) on ties'],
                     [f'Unit block: {result.unit_block_size}',
                      f'Residual size: {result.residual.nrows} x '
                      f'{result.residual.ncols}'])
        return result

    @cached_property
    def obstruction_matrix(self) -> PolyMatrix:
        residual = self.smith.residual
        begin = _now()
        stripped = strip_zero_rows(residual)
        self.record('Zero Rows', 'Row Deletion', begin, [],
                     [f'Matrix size: {stripped.nrows} x {stripped.ncols}'])
        return stripped

    @cached_property
    def distinct_entries(self) -> List[Poly]:
        return distinct_entries(self.obstruction_matrix)

    @cached_property
    def generators(self) -> List[Poly]:
        mat = self.obstruction_matrix
        begin = _now()
        generators = entry_generators(mat)
        self.record('Entry Generators', 'Monic Normalization', begin, [],
                     [f'Distinct entries: {len(self.distinct_entries)}',
                      f'Monic generators: {len(generators)}'])
        return generators

    @cached_property
    def groebner_basis(self) -> List[Poly]:
        generators = self.generators
        begin = _now()
        gb = groebner(generators) if generators else []
        self.record('Groebner Basis', 'Buchberger', begin,
                     ['Monomial order: deglex'],
                     [f'Basis: {[format_poly(g) for g in gb]}'])
        return gb

    def check_unit_block(self) -> None:
        """Raise unless the identity block has the target size

        Raises
        ------
        PipelineInvariantError
            If the unit block size differs from the target rank
        """
        r = self.smith.unit_block_size
        if r != self.target_rank:
            raise PipelineInvariantError(
                f'Unit block has size {r}, expected {self.target_rank}')

    def find_obstruction(self, point: Sequence[Rational]
                         ) -> Optional['Obstruction']:
        """First entry of the obstruction matrix not vanishing at `point`"""
        mat = self.obstruction_matrix
        for i in range(mat.nrows):
            for j in range(mat.ncols):
                entry = mat[i, j]
                if entry:
                    value = evaluate(entry, point)
                    if value:
                        return Obstruction(mat.provenance[i], mat.columns[j],
                                           entry, value)
        return None


@dataclass(frozen=True)
class SolutionComponent:
    """Component of the zero set, `None` marking a free coordinate"""
    coordinates: Tuple[Optional[Rational], ...]

    @property
    def dimension(self) -> int:
        return sum(1 for c in self.coordinates if c is None)

    @property
    def is_point(self) -> bool:
        return self.dimension == 0

    def point(self, free: RationalLike = 0) -> Tuple[Rational, ...]:
        """A point of the component, free coordinates set to `free`"""
        value = rational(free)
        return tuple(value if c is None else c for c in self.coordinates)

    def contains(self, other: 'SolutionComponent') -> bool:
        return all(mine is None or mine == theirs
                   for mine, theirs in zip(self.coordinates,
                                         other.coordinates))

    def describe(self, names: Sequence[str]) -> str:
        parts = [name if c is None else format_rational(c)
                 for name, c in zip(names, self.coordinates)]
        return '(' + ', '.join(parts) + ')'

    def to_dict(self, names: Sequence[str]) -> Dict[str, object]:
        kind = {0: 'point', 1: 'line'}.get(self.dimension, 'component')
        return {
            'kind': kind,
            'dimension': self.dimension,
            'coordinates': [None if c is None else format_rational(c)
                            for c in self.coordinates],
            'free': [name for name, c in zip(names, self.coordinates)
                     if c is None],
            'description': self.describe(names),
        }

    def sort_key(self) -> Tuple:
        return (self.dimension,
                tuple((1, 0) if c is None else (0, c)
                      for c in self.coordinates))


def _univariate_coefficients(p: Poly, index: int) -> Dict[int, Rational]:
    return {monom[index]: coeff for monom, coeff in p.terms()}


def _rational_sqrt(value: Rational) -> Optional[Rational]:
    numerator, denominator = int(QQ.numer(value)), int(QQ.denom(value))
    if numerator < 0:
        return None
    root_n, root_d = math.isqrt(numerator), math.isqrt(denominator)
    if root_n**2 != numerator or root_d**2 != denominator:
        return None
    return QQ(root_n, root_d)


def _rational_roots(p: Poly, index: int) -> List[Rational]:
    coeffs = _univariate_coefficients(p, index)
    low = min(coeffs)
    roots = [QQ.zero] if low > 0 else []
    coeffs = {d - low: c for d, c in coeffs.items()}
    degree = max(coeffs)
    if degree == 1:
        roots.append(-coeffs.get(0, QQ.zero) / coeffs[1])
    elif degree == 2:
        a, b, c = coeffs[2], coeffs.get(1, QQ.zero), coeffs.get(0, QQ.zero)
        discriminant = b * b - 4 * a * c
        if discriminant >= 0:
            root = _rational_sqrt(discriminant)
            if root is None:
                raise UnclassifiedVarietyError(
                    f'Irrational roots of {format_poly(p)}')
            roots += [(-b - root) / (2 * a), (-b + root) / (2 * a)]
    elif degree > 2:
        raise UnclassifiedVarietyError(
            f'Cannot solve {format_poly(p)} by inspection')
    return sorted(set(roots))


def _solve(gens: List[Poly],
           assignment: Tuple[Optional[Rational], ...]
           ) -> List[SolutionComponent]:
    gens = [g for g in gens if g]
    if not gens:
        return [SolutionComponent(assignment)]
    gb = groebner(gens)
    if any(g.is_ground for g in gb):
        return []
    for g in gb:
        indices = variables(g)
        if len(indices) == 1:
            (index,) = indices
            components = []
            for root in _rational_roots(g, index):
                fixed = assignment[:index] + (root,) + assignment[index + 1:]
                components += _solve([substitute(h, index, root) for h in gb],
                                     fixed)
            return components
    for g in gb:
        if len(g) == 1:
            # A monomial vanishes where one of its variables does
            components = []
            for index in sorted(variables(g)):
                fixed = assignment[:index] + (QQ.zero,) + \
                    assignment[index + 1:]
                components += _solve([substitute(h, index, 0) for h in gb],
                                     fixed)
            return components
    raise UnclassifiedVarietyError(
        f'No univariate or monomial generator in '
        f'{[format_poly(g) for g in gb]}')


def decompose_variety(gb: Sequence[Poly],
                      ring: PolyRing) -> List[SolutionComponent]:
    """Rational zero set of an ideal as points and coordinate-parallel lines

    A generator in one variable fixes that variable to each of its rational
    roots; a monomial generator splits into the cases where one of its
    variables vanishes. Each case is substituted back and solved again.
    Variables never fixed stay free.

    Parameters
    ----------
    gb
        Generators of the ideal, usually a reduced Groebner basis
    ring
        Ring of the generators, needed when `gb` is empty

    Returns
    -------
    Irredundant components, points first

    Raises
    ------
    UnclassifiedVarietyError
        If a case has neither a univariate nor a monomial generator, or a
        root is irrational
    """
    found = _solve(list(gb), (None,) * ring.ngens)
    components: List[SolutionComponent] = []
    for candidate in sorted(set(found), key=SolutionComponent.sort_key,
                            reverse=True):
        if not any(kept.contains(candidate) for kept in components):
            components.append(candidate)
    return sorted(components, key=SolutionComponent.sort_key)


def candidate_name(system: RelationSystem,
                   component: SolutionComponent) -> Optional[str]:
    """Known family a component belongs to, if any"""
    coordinates = component.coordinates
    if component.is_point and all(c == 0 for c in coordinates):
        return 'trivial'
    if (system.name == 'com-lie' and coordinates[0] == 1
            and coordinates[1] == 0 and coordinates[2] is None):
        return 'livernet-loday'
    return None


def match_candidates(system: RelationSystem,
                     components: Sequence[SolutionComponent]) -> List[str]:
    """Names of the known families found among the components"""
    names = [candidate_name(system, c) for c in components]
    return [name for name in names if name is not None]


@dataclass
class ClassificationReport:
    """Result of `run_classification`"""
    system: str
    parameters: Tuple[str, ...]
    groebner_basis: List[Poly]
    solution_components: List[SolutionComponent]
    matched_candidates: List[str]
    intermediate_stats: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, object]:
        return {
            'system': self.system,
            'parameters': list(self.parameters),
            'groebner_basis': [format_poly(g) for g in self.groebner_basis],
            'solution_components': [c.to_dict(self.parameters)
                                    for c in self.solution_components],
            'matched_candidates': list(self.matched_candidates),
            'intermediate_stats': dict(self.intermediate_stats),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + '\n'

    def to_markdown(self) -> str:
        stats = self.intermediate_stats
        lines = [
            f'# Distributive laws for `{self.system}`',
            '',
            '## Checkpoints',
            '',
            '| stage | value |',
            '| --- | --- |',
        ]
        for key in sorted(stats):
            value = stats[key]
            if isinstance(value, list) and len(value) == 2 \
                    and key.endswith('matrix'):
                value = f'{value[0]} x {value[1]}'
            lines.append(f'| {key.replace("_", " ")} | {value} |')
        lines += ['', '## Groebner basis', '']
        lines += [f'- `{format_poly(g)}`' for g in self.groebner_basis] \
            or ['- (zero ideal)']
        lines += ['', '## Solution components', '']
        lines += [f'- {c.describe(self.parameters)}'
                  for c in self.solution_components] or ['- none']
        lines += ['', '## Matched families', '']
        lines += [f'- {name}' for name in self.matched_candidates] \
            or ['- none']
        return '\n'.join(lines) + '\n'


def run_classification(system: RelationSystem,
                       history: Optional[History] = None,
                       timezone: pytz.BaseTzInfo = pytz.utc
                       ) -> ClassificationReport:
    """Classify the parameter values giving distributive laws

    Parameters
    ----------
    system
        Relation system to classify
    history
        If given, one entry per pipeline stage is appended
    timezone
        Timezone of the history timestamps

    Returns
    -------
    The Groebner basis of the obstruction ideal, its zero set and the known
    families it contains

    Raises
    ------
    PipelineInvariantError
        If the identity block of the partial Smith form is not of the
        target size
    UnclassifiedVarietyError
        If the zero set cannot be read off the Groebner basis
    """
    pipeline = ConsequencePipeline(system, history, timezone)
    pipeline.check_unit_block()
    gb = pipeline.groebner_basis
    begin = _now()
    components = decompose_variety(gb, system.ring)
    pipeline.record('Variety', 'Case Analysis', begin, [],
                     [c.describe(system.parameter_names) for c in components])
    mat = pipeline.consequence_matrix
    residual = pipeline.smith.residual
    obstruction = pipeline.obstruction_matrix
    stats: Dict[str, object] = {
        'relations': system.expected_relations,
        'compositions': mat.nrows // 24,
        'consequence_matrix': [mat.nrows, mat.ncols],
        'target_rank': pipeline.target_rank,
        'unit_block_size': pipeline.smith.unit_block_size,
        'residual_matrix': [residual.nrows, residual.ncols],
        'obstruction_matrix': [obstruction.nrows, obstruction.ncols],
        'distinct_entries': len(pipeline.distinct_entries),
        'monic_generators': len(pipeline.generators),
        'generator_degrees': sorted({total_degree(g)
                                     for g in pipeline.generators}),
    }
    return ClassificationReport(
        system=system.name,
        parameters=system.parameter_names,
        groebner_basis=gb,
        solution_components=components,
        matched_candidates=match_candidates(system, components),
        intermediate_stats=stats,
    )


@dataclass(frozen=True)
class Obstruction:
    """Entry of the obstruction matrix that does not vanish at a point"""
    row: str
    column: str
    entry: Poly
    value: Rational

    def to_dict(self) -> Dict[str, object]:
        return {'row': self.row, 'column': self.column,
                'entry': format_poly(self.entry),
                'value': format_rational(self.value)}


@dataclass(frozen=True)
class PointCertificate:
    """Rank of the specialized consequence matrix at a point"""
    point: Tuple[Rational, ...]
    rank: int
    target: int
    obstruction: Optional[Obstruction] = None

    @property
    def is_law(self) -> bool:
        return self.rank == self.target

    def to_dict(self) -> Dict[str, object]:
        return {
            'point': [format_rational(x) for x in self.point],
            'rank': self.rank,
            'target': self.target,
            'is_law': self.is_law,
            'obstruction': (None if self.obstruction is None
                            else self.obstruction.to_dict()),
        }

    def describe(self) -> str:
        coordinates = ','.join(format_rational(x) for x in self.point)
        verdict = 'law' if self.is_law else 'not a law'
        text = f'({coordinates}): rank {self.rank} of {self.target}, {verdict}'
        if self.obstruction is not None:
            text += (f'; {format_poly(self.obstruction.entry)} = '
                     f'{format_rational(self.obstruction.value)} at '
                     f'{self.obstruction.row} / {self.obstruction.column}')
        return text


def certify_point(system: RelationSystem, point: Sequence[RationalLike],
                  pipeline: Optional[ConsequencePipeline] = None
                  ) -> PointCertificate:
    """Decide whether the parameters at `point` give a distributive law

    The consequence matrix is specialized at `point` and its exact rank over
    QQ compared with `120 - dim(Com o Q)(4)`. When they differ, the first
    entry of the obstruction matrix that does not vanish is reported.

    Raises
    ------
    ValueError
        If the point dimension does not match the system
    """
    values = check_point(system.ring, point)
    pipeline = pipeline or ConsequencePipeline(system)
    rank = pipeline.consequence_matrix.rank_at(values)
    target = pipeline.target_rank
    obstruction = None
    if rank != target:
        obstruction = pipeline.find_obstruction(values)
    return PointCertificate(values, rank, target, obstruction)


def certify_points(system: RelationSystem,
                   points: Sequence[Sequence[RationalLike]],
                   pipeline: Optional[ConsequencePipeline] = None
                   ) -> List[PointCertificate]:
    """`certify_point` over several points sharing one pipeline"""
    pipeline = pipeline or ConsequencePipeline(system)
    return [certify_point(system, p, pipeline) for p in points]


def random_points(m: int, count: int,
                  seed: Optional[int] = None) -> List[Tuple[Rational, ...]]:
    """Reproducible rational points with small numerators and denominators"""
    rng = np.random.default_rng(seed)
    numerators = rng.integers(-5, 6, size=(count, m))
    denominators = rng.integers(1, 4, size=(count, m))
    return [tuple(QQ(int(n), int(d)) for n, d in zip(nums, dens))
            for nums, dens in zip(numerators, denominators)]


def _orbit(elements: Sequence[OperadElement]) -> List[OperadElement]:
    return [act(perm, e) for e in elements
            for perm in permutations((1, 2, 3))]


def theorem_relations(family: str, q: RationalLike = 0,
                      ring: Optional[PolyRing] = None
                      ) -> List[OperadElement]:
    """S3-orbits of the relations defining a known operad

    Parameters
    ----------
    family
        `trivial`: associativity, `[x1x2,x3] = 0` and Jacobi.
        `livernet-loday`: `(x1x2)x3 - x1(x2x3) - q[[x1,x3],x2]`, the Leibniz
        rule `[x1x2,x3] - [x1,x3]x2 - x1[x2,x3]` and Jacobi.
        `nlie2-trivial`: associativity, `[x1x2,x3] = 0` and `[[x1,x2],x3]`.
    q
        Parameter of the `livernet-loday` family
    ring
        Coefficient ring, by default QQ[t1, t2, t3]

    Raises
    ------
    ValueError
        If the family is unknown
    """
    R = ring or parameter_ring(3)
    q = rational(q)
    jacobi = OperadElement.from_trees(R, 3, [
        (1, lie(lie(1, 2), 3)),
        (1, lie(lie(2, 3), 1)),
        (1, lie(lie(3, 1), 2)),
    ])
    associator = [(1, com(com(1, 2), 3)), (-1, com(1, com(2, 3)))]
    if family == 'trivial':
        generators = [
            OperadElement.from_trees(R, 3, associator),
            OperadElement.from_trees(R, 3, [(1, lie(com(1, 2), 3))]),
            jacobi,
        ]
    elif family == 'livernet-loday':
        generators = [
            OperadElement.from_trees(
                R, 3, associator + [(-q, lie(lie(1, 3), 2))]),
            OperadElement.from_trees(R, 3, [
                (1, lie(com(1, 2), 3)),
                (-1, com(lie(1, 3), 2)),
                (-1, com(1, lie(2, 3))),
            ]),
            jacobi,
        ]
    elif family == 'nlie2-trivial':
        generators = [
            OperadElement.from_trees(R, 3, associator),
            OperadElement.from_trees(R, 3, [(1, lie(com(1, 2), 3))]),
            OperadElement.from_trees(R, 3, [(1, lie(lie(1, 2), 3))]),
        ]
    else:
        raise ValueError(f'Unknown relation family: {family}')
    return _orbit(generators)


_LINE_SAMPLES = ('0', '1', '2', '-1', '1/3')


def verify_components(system: RelationSystem,
                      components: Sequence[SolutionComponent]) -> bool:
    """Whether every component specializes to a known relation set

    The system relations at the trivial point must span the relations of
    the trivial operad. Along the line `(1, 0, q)` they must span the
    relations of the `livernet-loday` family at the same `q`, checked at
    several values of `q`.
    """
    relations = list(system.relations)
    trivial = 'trivial' if system.name == 'com-lie' else 'nlie2-trivial'
    for component in components:
        name = candidate_name(system, component)
        if name is None:
            return False
        if name == 'trivial':
            expected = theorem_relations(trivial, ring=system.ring)
            if not same_row_space(relations, expected, component.point()):
                return False
        elif name == 'livernet-loday':
            for q in _LINE_SAMPLES:
                expected = theorem_relations('livernet-loday', q,
                                             ring=system.ring)
                if not same_row_space(relations, expected,
                                      component.point(q)):
                    return False
    return True


def associator_under_phi(scale: RationalLike,
                         ring: Optional[PolyRing] = None) -> OperadElement:
    """Associator of `x * y = xy + scale [x,y]` written in COM and LIE"""
    R = ring or parameter_ring(3)
    s = rational(scale)

    def star(left: List[Tuple[Rational, object]],
             right: List[Tuple[Rational, object]]
             ) -> List[Tuple[Rational, object]]:
        return [(a * b * c, tree(x, y))
                for a, x in left for b, y in right
                for c, tree in ((QQ.one, com), (s, lie))]

    leaf = {i: [(QQ.one, i)] for i in (1, 2, 3)}
    left = star(star(leaf[1], leaf[2]), leaf[3])
    right = star(leaf[1], star(leaf[2], leaf[3]))
    return OperadElement.from_trees(
        R, 3, left + [(-c, tree) for c, tree in right])


@dataclass(frozen=True)
class IsoCheck:
    """Outcome of `iso_check`

    Attributes
    ----------
    rescaled_q
        `scale**2 * q`, the parameter the rescaled relations should have
    rescaling_holds
        Whether rescaling the bracket by `scale` maps the relations at `q`
        onto the relations at `rescaled_q`
    phi_q
        `-scale**2`, the parameter where `x * y = xy + scale [x,y]` is
        associative
    phi_holds
        Whether the associator of that product vanishes modulo the relations
        at `phi_q`
    """
    q: Rational
    scale: Rational
    rescaled_q: Rational
    rescaling_holds: bool
    phi_q: Rational
    phi_holds: bool

    @property
    def ok(self) -> bool:
        return self.rescaling_holds and self.phi_holds

    def to_dict(self) -> Dict[str, object]:
        return {
            'q': format_rational(self.q),
            'scale': format_rational(self.scale),
            'rescaled_q': format_rational(self.rescaled_q),
            'rescaling_holds': self.rescaling_holds,
            'phi_q': format_rational(self.phi_q),
            'phi_holds': self.phi_holds,
        }


_ORIGIN = (0, 0, 0)


def phi_lands_at(q: RationalLike, scale: RationalLike) -> bool:
    """Whether `x * y = xy + scale [x,y]` is associative modulo the
    `livernet-loday` relations at `q`"""
    relations = theorem_relations('livernet-loday', q)
    associator = associator_under_phi(scale)
    return all(in_row_space(relations, image, _ORIGIN)
               for image in _orbit([associator]))


def rescaling_matches(q: RationalLike, scale: RationalLike) -> bool:
    """Whether rescaling the bracket by `scale` maps the relations at `q` to
    those at `scale**2 * q`"""
    q, scale = rational(q), rational(scale)
    rescaled = [rescale_lie(r, scale)
                for r in theorem_relations('livernet-loday', q)]
    expected = theorem_relations('livernet-loday', scale**2 * q)
    return same_row_space(rescaled, expected, _ORIGIN)


def iso_check(q: RationalLike, scale: RationalLike) -> IsoCheck:
    """Check the isomorphisms relating members of the `livernet-loday` family

    Raises
    ------
    ValueError
        If `scale` is zero
    """
    q, scale = rational(q), rational(scale)
    if not scale:
        raise ValueError('Scale must be nonzero')
    phi_q = -scale**2
    return IsoCheck(q, scale, scale**2 * q, rescaling_matches(q, scale),
                    phi_q, phi_lands_at(phi_q, scale))


def verify_livernet_loday_iso(q: RationalLike, scale: RationalLike) -> bool:
    """Whether both checks of `iso_check` hold"""
    return iso_check(q, scale).ok
