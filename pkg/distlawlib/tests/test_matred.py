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
import pytest

from sympy import QQ

from ..classify import ConsequencePipeline, random_points
from ..matred import (PivotStep, distinct_entries, entry_generators,
                      partial_smith, replay_transcript, strip_zero_rows,
                      transcript_from_json, transcript_to_json)
from ..polyring import format_poly, groebner, parameter_ring, reduce
from ..relations import PolyMatrix

R = parameter_ring(3)
t1, t2, t3 = R.gens


@pytest.fixture
def small_matrix() -> PolyMatrix:
    """Return a matrix with one polynomial entry left after elimination"""
    return PolyMatrix.from_rows(R, [[1, 1, 1], [1, 0, 0], [t1, t2, 0]],
                                provenance=['a', 'b', 'c'],
                                columns=['x', 'y', 'z'])


def test_partial_smith_markowitz(small_matrix: PolyMatrix) -> None:
    """Test pivots follow the Markowitz rule, ties to the lowest position"""
    result = partial_smith(small_matrix)
    assert result.unit_block_size == 2
    assert result.transcript == [PivotStep(0, 2, QQ(1)),
                                 PivotStep(1, 0, QQ(1))]
    assert result.residual == PolyMatrix.from_rows(R, [[t2]])
    assert result.residual.provenance == ['c']
    assert result.residual.columns == ['y']


def test_partial_smith_input_untouched(small_matrix: PolyMatrix) -> None:
    """Test the input matrix is not modified"""
    before = small_matrix.rows()
    partial_smith(small_matrix)
    assert small_matrix.rows() == before


@pytest.mark.parametrize('rows,unit,residual', [
    ([[1, t1], [t1, t1**2 + t2]], 1, [[t2]]),
    ([[2, 0], [0, 3]], 2, []),
    ([[t1, t2], [t3, t1 * t2]], 0, [[t1, t2], [t3, t1 * t2]]),
    ([[QQ(1, 2), t1], [0, 0]], 1, [[0]]),
])
def test_partial_smith(rows: list, unit: int, residual: list) -> None:
    """Test unit block sizes and residual blocks"""
    result = partial_smith(PolyMatrix.from_rows(R, rows))
    assert result.unit_block_size == unit
    size = len(rows) - unit
    expected = PolyMatrix.from_rows(R, residual, size)
    assert result.residual == expected


def test_partial_smith_values() -> None:
    """Test pivot values are recorded before scaling"""
    result = partial_smith(PolyMatrix.from_rows(R, [[2, 0], [0, 3]]))
    assert [s.value for s in result.transcript] == [QQ(2), QQ(3)]
    assert result.residual.shape == (0, 0)


def test_replay_transcript(small_matrix: PolyMatrix) -> None:
    """Test replaying a transcript reproduces the residual"""
    result = partial_smith(small_matrix)
    text = transcript_to_json(result.transcript)
    assert '"value": "1"' in text
    transcript = transcript_from_json(text)
    assert transcript == result.transcript
    assert replay_transcript(small_matrix, transcript) == result.residual


def test_replay_transcript_mismatch(small_matrix: PolyMatrix) -> None:
    """Test replays stop at pivots that disagree with the matrix"""
    with pytest.raises(ValueError) as exc_info:
        replay_transcript(small_matrix, [PivotStep(0, 2, QQ(2))])
    message = 'Pivot (0, 2) has value 1, transcript says 2'
    assert str(exc_info.value) == message
    with pytest.raises(ValueError) as exc_info:
        replay_transcript(small_matrix, [PivotStep(2, 0, QQ(1))])
    message = 'Entry (2, 0) is not an active rational pivot'
    assert str(exc_info.value) == message


def test_strip_zero_rows() -> None:
    """Test zero rows are removed with their labels"""
    mat = PolyMatrix.from_rows(R, [[0, 0], [t1, 0], [0, 0]],
                               provenance=['a', 'b', 'c'])
    stripped = strip_zero_rows(mat)
    assert stripped == PolyMatrix.from_rows(R, [[t1, 0]])
    assert stripped.provenance == ['b']
    assert strip_zero_rows(PolyMatrix.from_rows(R, [[0]])).shape == (0, 1)


def test_distinct_entries() -> None:
    """Test distinct entries and their monic generators"""
    mat = PolyMatrix.from_rows(R, [[t1, 2 * t1, 0], [t1, -t2, t1 * t3 - t3],
                                   [2 * t2, 0, QQ(1, 2) * t1**2]])
    assert distinct_entries(mat) == [-t2, 2 * t2, t1, 2 * t1,
                                     t1 * t3 - t3, QQ(1, 2) * t1**2]
    assert entry_generators(mat) == [t2, t1, t1 * t3 - t3, t1**2]


@pytest.mark.slow
def test_com_lie_checkpoints(com_lie_pipeline: ConsequencePipeline) -> None:
    """Test sizes along the reduction of the Com/Lie consequence matrix"""
    smith = com_lie_pipeline.smith
    assert smith.unit_block_size == 96
    assert smith.residual.shape == (1056, 24)
    assert com_lie_pipeline.obstruction_matrix.shape == (208, 24)
    assert len(com_lie_pipeline.distinct_entries) == 82
    generators = com_lie_pipeline.generators
    assert len(generators) == 32
    assert min(g.total_degree() for g in generators) >= 1


@pytest.mark.slow
def test_com_lie_groebner(com_lie_pipeline: ConsequencePipeline) -> None:
    """Test the entries generate the ideal of the known basis"""
    gb = com_lie_pipeline.groebner_basis
    assert [format_poly(g) for g in gb] == ['t2', 't1*t3 - t3', 't1^2 - t1']
    assert groebner(gb) == gb
    for entry in com_lie_pipeline.distinct_entries:
        assert not reduce(entry, gb)


@pytest.mark.slow
@pytest.mark.parametrize('seed', range(10))
def test_rank_certificate(com_lie_pipeline: ConsequencePipeline,
                          seed: int) -> None:
    """Test the rank of the consequences splits into the unit block and
    the obstruction matrix at random points"""
    point = random_points(3, 1, seed)[0]
    rank = com_lie_pipeline.consequence_matrix.rank_at(point)
    residual = com_lie_pipeline.obstruction_matrix.rank_at(point)
    assert rank == 96 + residual


@pytest.mark.slow
def test_replay_com_lie(com_lie_pipeline: ConsequencePipeline) -> None:
    """Test the Com/Lie transcript replays to the same residual"""
    smith = com_lie_pipeline.smith
    transcript = transcript_from_json(transcript_to_json(smith.transcript))
    residual = replay_transcript(com_lie_pipeline.consequence_matrix,
                                 transcript)
    assert residual == smith.residual
    assert residual.provenance == smith.residual.provenance
