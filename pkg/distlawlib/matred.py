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
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from .polyring import (Poly, Rational, format_rational, monic,
                       parse_rational, poly_sort_key)
from .relations import PolyMatrix


@dataclass(frozen=True)
class PivotStep:
    """One elimination step: the pivot position in the input matrix and its
    value before scaling"""
    row: int
    col: int
    value: Rational

    def to_dict(self) -> Dict[str, object]:
        return {'row': self.row, 'col': self.col,
                'value': format_rational(self.value)}


@dataclass
class PartialSmithResult:
    """Outcome of `partial_smith`

    Attributes
    ----------
    unit_block_size
        Number of rational pivots found, the size `r` of the identity block
    residual
        The block left over once no rational entry remains, with the labels
        of its rows and columns in the input matrix
    transcript
        Pivots in the order they were used
    """
    unit_block_size: int
    residual: PolyMatrix
    transcript: List[PivotStep]


class _ActiveBlock:
    """Working copy of a matrix with the rows and columns not yet pivoted"""

    def __init__(self, mat: PolyMatrix) -> None:
        self.mat = mat
        self.entries = mat.entries.copy()
        self.nonzero = np.zeros(mat.shape, dtype=bool)
        self.scalar = np.zeros(mat.shape, dtype=bool)
        for i in range(mat.nrows):
            self._refresh(i, range(mat.ncols))
        self.rows = np.ones(mat.nrows, dtype=bool)
        self.cols = np.ones(mat.ncols, dtype=bool)

    def _refresh(self, i: int, cols: Sequence[int]) -> None:
        for j in cols:
            entry = self.entries[i, j]
            self.nonzero[i, j] = bool(entry)
            self.scalar[i, j] = bool(entry) and entry.is_ground

    def markowitz_pivot(self) -> Optional[Tuple[int, int]]:
        """Rational entry minimizing (row count) * (column count) of nonzero
        entries in the active block, lowest row then column on ties"""
        rows = np.flatnonzero(self.rows)
        cols = np.flatnonzero(self.cols)
        if rows.size == 0 or cols.size == 0:
            return None
        block = np.ix_(rows, cols)
        scalar = self.scalar[block]
        if not scalar.any():
            return None
        nonzero = self.nonzero[block]
        cost = np.outer(nonzero.sum(axis=1), nonzero.sum(axis=0))
        cost = np.where(scalar, cost, np.iinfo(np.int64).max)
        i, j = np.unravel_index(int(np.argmin(cost)), cost.shape)
        return int(rows[i]), int(cols[j])

    def eliminate(self, row: int, col: int) -> Rational:
        """Scale the pivot to 1 and clear its column in the active rows

        The pivot row itself is not cleared; column operations do not touch
        the active block.
        """
        if not (self.rows[row] and self.cols[col] and self.scalar[row, col]):
            raise ValueError(f'Entry ({row}, {col}) is not an active '
                             'rational pivot')
        value = self.entries[row, col].LC
        support = np.flatnonzero(self.cols & self.nonzero[row])
        for j in support:
            self.entries[row, j] = self.entries[row, j].quo_ground(value)
        for i in np.flatnonzero(self.rows & self.nonzero[:, col]):
            if i == row:
                continue
            factor = self.entries[i, col]
            for j in support:
                self.entries[i, j] = (self.entries[i, j]
                                      - factor * self.entries[row, j])
            self._refresh(i, support)
        self.rows[row] = False
        self.cols[col] = False
        return value

    def residual(self) -> PolyMatrix:
        rows = np.flatnonzero(self.rows)
        cols = np.flatnonzero(self.cols)
        entries = self.entries[np.ix_(rows, cols)]
        return PolyMatrix(self.mat.ring, entries,
                          [self.mat.provenance[i] for i in rows],
                          [self.mat.columns[j] for j in cols])


def partial_smith(mat: PolyMatrix) -> PartialSmithResult:
    """Eliminate rational pivots until none is left

    Each step picks a nonzero rational entry of the active block by the
    Markowitz rule, scales it to 1 and clears its row and column with
    polynomial multiples of the pivot row and column. The input is then
    equivalent to `diag(I_r, residual)` by invertible rational operations.

    Parameters
    ----------
    mat
        Matrix to reduce. It is not modified.

    Returns
    -------
    The unit block size, residual block and pivot transcript
    """
    block = _ActiveBlock(mat)
    transcript = []
    while True:
        pivot = block.markowitz_pivot()
        if pivot is None:
            break
        row, col = pivot
        transcript.append(PivotStep(row, col, block.eliminate(row, col)))
    return PartialSmithResult(len(transcript), block.residual(), transcript)


def replay_transcript(mat: PolyMatrix,
                      transcript: Sequence[PivotStep]) -> PolyMatrix:
    """Apply recorded pivots to `mat` and return the residual block

    Raises
    ------
    ValueError
        If a recorded pivot is not an active rational entry or its value
        differs from the recording
    """
    block = _ActiveBlock(mat)
    for step in transcript:
        value = block.eliminate(step.row, step.col)
        if value != step.value:
            raise ValueError(f'Pivot ({step.row}, {step.col}) has value '
                             f'{format_rational(value)}, transcript says '
                             f'{format_rational(step.value)}')
    return block.residual()


def transcript_to_json(transcript: Sequence[PivotStep]) -> str:
    return json.dumps([step.to_dict() for step in transcript], indent=2) + '\n'


def transcript_from_json(text: str) -> List[PivotStep]:
    return [PivotStep(int(step['row']), int(step['col']),
                      parse_rational(step['value']))
            for step in json.loads(text)]


def strip_zero_rows(mat: PolyMatrix) -> PolyMatrix:
    """Drop the rows whose entries are all zero, keeping order and labels"""
    keep = [i for i in range(mat.nrows) if any(mat.entries[i])]
    return mat.take_rows(keep)


def distinct_entries(mat: PolyMatrix) -> List[Poly]:
    """Distinct nonzero entries, sorted term by term"""
    seen: Set[Poly] = {e for e in mat.entries.flat if e}
    return sorted(seen, key=poly_sort_key)


def entry_generators(mat: PolyMatrix) -> List[Poly]:
    """Monic forms of the distinct nonzero entries

    Returns
    -------
    Distinct monic polynomials sorted by leading monomial in the ring order,
    then by the remaining terms
    """
    return sorted({monic(e) for e in distinct_entries(mat)},
                  key=poly_sort_key)
