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
import re
from fractions import Fraction
from functools import lru_cache
from tokenize import TokenError
from typing import Any, Iterable, List, Optional, Sequence, Set, Tuple, Union

from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement, PolyRing, ring
from sympy.parsing.sympy_parser import (convert_xor, parse_expr,
                                        standard_transformations)

Poly = PolyElement
Rational = Any
Monomial = Tuple[int, ...]
RationalLike = Union[int, str, Fraction, Rational]

_RATIONAL = re.compile(r'^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$')
_DECIMAL = re.compile(r'\d\.|\.\d')
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


@lru_cache(maxsize=None)
def parameter_ring(m: int) -> PolyRing:
    """Return the ring QQ[t1, ..., tm] in graded lexicographic order

    Parameters
    ----------
    m
        Number of parameters

    Returns
    -------
    The polynomial ring. Calls with the same `m` return the same ring object,
    so elements built in different modules can be combined.

    Raises
    ------
    ValueError
        If `m` is not positive
    """
    if m < 1:
        raise ValueError(f'Number of parameters must be positive. Got: {m}')
    names = ','.join(f't{i}' for i in range(1, m + 1))
    R, *_ = ring(names, QQ, grlex)
    return R


def parse_rational(text: str) -> Rational:
    """Parse an integer literal or a fraction `p/q` into an exact rational

    Decimal literals are rejected so no floating point value can leak into
    the exact pipeline.
    """
    match = _RATIONAL.match(text)
    if match is None:
        raise ValueError(f'Not a rational number: {text!r}')
    numerator, denominator = match.group(1), match.group(2)
    if denominator is not None and int(denominator) == 0:
        raise ValueError(f'Zero denominator in rational: {text!r}')
    return QQ(int(numerator), int(denominator or 1))


def format_rational(value: Rational) -> str:
    """Render a rational as `n` or `n/d`"""
    value = QQ.convert(value)
    numerator, denominator = QQ.numer(value), QQ.denom(value)
    if denominator == 1:
        return str(numerator)
    return f'{numerator}/{denominator}'


def rational(value: RationalLike) -> Rational:
    """Convert an int, a `Fraction`, a literal string or a QQ element to QQ"""
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, float):
        raise ValueError(f'Floating point values are not exact: {value}')
    return QQ.convert(value)


def check_point(R: PolyRing, point: Sequence[RationalLike]) -> Tuple:
    """Convert `point` to a tuple of QQ elements with one entry per generator

    Raises
    ------
    ValueError
        If the number of coordinates does not match the ring
    """
    if len(point) != R.ngens:
        raise ValueError(f'Point has {len(point)} coordinates, '
                         f'expected {R.ngens}')
    return tuple(rational(x) for x in point)


def monic(p: Poly) -> Poly:
    """Divide `p` by its leading coefficient

    Raises
    ------
    ValueError
        If `p` is the zero polynomial
    """
    if not p:
        raise ValueError('Cannot normalize the zero polynomial')
    return p.monic()


def total_degree(p: Poly) -> int:
    """Total degree of a nonzero polynomial"""
    return sum(p.LM)


def variables(p: Poly) -> Set[int]:
    """Indices of the generators occurring in `p`"""
    return {i for monom in p.monoms() for i, e in enumerate(monom) if e}


def poly_sort_key(p: Poly) -> Tuple:
    """Sort key comparing polynomials term by term in descending order"""
    R = p.ring
    return tuple((R.order(monom), coeff) for monom, coeff in p.terms())


def reduce(p: Poly, basis: Sequence[Poly]) -> Poly:
    """Full normal form of `p` with respect to `basis`

    Every term of the result is irreducible by the leading monomials of
    `basis`. The result is zero when `p` lies in the ideal generated by a
    Groebner basis `basis`.

    Parameters
    ----------
    p
        Polynomial to reduce
    basis
        Nonzero divisors, all from the ring of `p`

    Returns
    -------
    The remainder of the division
    """
    R = p.ring
    leading = [(g.LM, g.LC, g) for g in basis if g]
    remainder = R.zero
    while p:
        monom, coeff = p.LT
        for lm, lc, g in leading:
            quotient = R.monomial_div(monom, lm)
            if quotient is not None:
                p = p - g.mul_term((quotient, R.domain.quo(coeff, lc)))
                break
        else:
            term = R.from_dict({monom: coeff})
            remainder = remainder + term
            p = p - term
    return remainder


def spolynomial(f: Poly, g: Poly) -> Poly:
    """S-polynomial of two monic polynomials"""
    R = f.ring
    lcm = R.monomial_lcm(f.LM, g.LM)
    return (f.mul_monom(R.monomial_div(lcm, f.LM))
            - g.mul_monom(R.monomial_div(lcm, g.LM)))


def groebner(gens: Iterable[Poly]) -> List[Poly]:
    """Reduced Groebner basis of the ideal generated by `gens`

    Buchberger's algorithm with the normal selection strategy: the pair with
    the smallest lcm of leading monomials is processed first. Pairs with
    coprime leading monomials are skipped.

    Parameters
    ----------
    gens
        Generators of the ideal. Zero generators are ignored.

    Returns
    -------
    The reduced Groebner basis: monic, no leading monomial divides a term of
    another element, sorted ascending by leading monomial.

    Raises
    ------
    ValueError
        If every generator is zero
    """
    nonzero = [monic(g) for g in gens if g]
    if not nonzero:
        raise ValueError('Cannot compute a Groebner basis of the zero ideal')
    R = nonzero[0].ring
    basis: List[Poly] = []
    pairs: Set[Tuple[int, int]] = set()
    for f in nonzero:
        basis, pairs = _update(basis, pairs, f)
    while pairs:
        i, j = min(pairs, key=lambda pair: (
            R.order(R.monomial_lcm(basis[pair[0]].LM, basis[pair[1]].LM)),
            pair))
        pairs.remove((i, j))
        s = reduce(spolynomial(basis[i], basis[j]), basis)
        if s:
            basis, pairs = _update(basis, pairs, monic(s))
    return _interreduce(_minimalize(basis))


def _update(basis: List[Poly], pairs: Set[Tuple[int, int]],
            f: Poly) -> Tuple[List[Poly], Set[Tuple[int, int]]]:
    R = f.ring
    k = len(basis)
    new_pairs = {
        (i, k) for i, g in enumerate(basis)
        if R.monomial_lcm(g.LM, f.LM) != R.monomial_mul(g.LM, f.LM)
    }
    return basis + [f], pairs | new_pairs


def _minimalize(basis: List[Poly]) -> List[Poly]:
    R = basis[0].ring
    minimal: List[Poly] = []
    for f in sorted(basis, key=lambda g: R.order(g.LM)):
        if not any(R.monomial_div(f.LM, g.LM) is not None for g in minimal):
            minimal.append(f)
    return minimal


def _interreduce(basis: List[Poly]) -> List[Poly]:
    reduced = []
    for i, f in enumerate(basis):
        others = basis[:i] + basis[i + 1:]
        reduced.append(monic(reduce(f, others)))
    return sorted(reduced, key=poly_sort_key)


def evaluate(p: Poly, point: Sequence[RationalLike]) -> Rational:
    """Value of `p` at a rational point"""
    values = check_point(p.ring, point)
    total = QQ.zero
    for monom, coeff in p.terms():
        term = coeff
        for x, e in zip(values, monom):
            if e:
                term = term * x**e
        total += term
    return total


def zero_set_membership(basis: Sequence[Poly],
                        point: Sequence[RationalLike]) -> bool:
    """Whether every element of `basis` vanishes at `point`

    Raises
    ------
    ValueError
        If the point dimension does not match the ring
    """
    return all(evaluate(g, point) == 0 for g in basis)


def substitute(p: Poly, index: int, value: RationalLike) -> Poly:
    """Replace the generator with 0-based `index` by a rational value"""
    R = p.ring
    value = rational(value)
    result = R.zero
    for monom, coeff in p.terms():
        exponent = monom[index]
        reduced = monom[:index] + (0,) + monom[index + 1:]
        coeff = coeff * value**exponent
        if coeff:
            result = result + R.from_dict({reduced: coeff})
    return result


def format_poly(p: Poly) -> str:
    """Render `p` in descending term order, e.g. `t1^2 - t1` or `-1/2*t3`"""
    if not p:
        return '0'
    names = [str(s) for s in p.ring.symbols]
    pieces: List[str] = []
    for monom, coeff in p.terms():
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if any(monom):
            factors = '*'.join(
                name if e == 1 else f'{name}^{e}'
                for name, e in zip(names, monom) if e)
            body = (factors if magnitude == 1
                    else f'{format_rational(magnitude)}*{factors}')
        else:
            body = format_rational(magnitude)
        if not pieces:
            pieces.append(f'-{body}' if negative else body)
        else:
            pieces.append(f'- {body}' if negative else f'+ {body}')
    return ' '.join(pieces)


def parse_poly(text: str, R: Optional[PolyRing] = None) -> Poly:
    """Parse text such as `t1^2 - t1` or `1/2*t3 + 2` into an element of `R`

    Raises
    ------
    ValueError
        If the text contains decimals, unknown symbols or is malformed
    """
    R = R or parameter_ring(3)
    if _DECIMAL.search(text):
        raise ValueError(f'Decimal coefficients are not allowed: {text!r}')
    symbols = {str(s): s for s in R.symbols}
    try:
        expr = parse_expr(text, local_dict=symbols,
                          transformations=_TRANSFORMATIONS)
        return R.from_expr(expr)
    except (SyntaxError, TokenError, TypeError, ValueError,
            CoercionFailed) as err:
        raise ValueError(f'Cannot parse polynomial: {text!r}') from err
