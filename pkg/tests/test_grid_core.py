import numpy as np
import pytest

from gridwalk.grid_core import (
    Cell,
    DimsError,
    GridDims,
    Labeling,
    ParseError,
    PermutationError,
    RaggedRowsError,
    ShapeError,
    TokenError,
    axis_lengths,
    format_labeling,
    inverse_walk,
    labeling_from_walk,
    manhattan,
    parse_labeling,
    random_labeling,
    reverse_labels,
    row_major,
    transpose,
    validate,
    walk_length,
)


def naive_length(rows):
    """Straight loop over labels, independent of the numpy evaluator."""
    where = {}
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            where[v] = (i, j)
    total = 0
    for t in range(1, len(where)):
        (a, b), (c, d) = where[t], where[t + 1]
        total += abs(a - c) + abs(b - d)
    return total


# =============================
# DIMS AND CELLS
# =============================

def test_dims_reject_non_positive():
    with pytest.raises(DimsError):
        GridDims(0, 3)
    with pytest.raises(DimsError):
        GridDims(2, -1)


def test_dims_reject_non_integers():
    with pytest.raises(DimsError):
        GridDims(True, 2)
    with pytest.raises(DimsError):
        GridDims("x", 2)


def test_dims_reject_fractional_values():
    with pytest.raises(DimsError):
        GridDims(2.7, 3)
    with pytest.raises(DimsError):
        GridDims(2, 3.0)
    assert GridDims(np.int64(2), np.int32(3)) == (2, 3)


def test_dims_helpers():
    d = GridDims(4, 3)
    assert d.cell_count == 12
    assert d.transposed() == GridDims(3, 4)
    assert d.canonical() == GridDims(3, 4)
    assert GridDims(2, 5).canonical() == GridDims(2, 5)
    assert str(d) == "4x3"
    assert d.cells()[0] == Cell(1, 1) and d.cells()[-1] == Cell(4, 3)


@pytest.mark.parametrize("a, b, expected", [((1, 1), (1, 1), 0), ((1, 1), (2, 2), 2), ((1, 4), (3, 1), 5)])
def test_manhattan(a, b, expected):
    assert manhattan(Cell(*a), Cell(*b)) == expected
    assert manhattan(Cell(*b), Cell(*a)) == expected


def test_manhattan_triangle_inequality(rng):
    for _ in range(200):
        a, b, c = (Cell(*map(int, rng.integers(1, 8, size=2))) for _ in range(3))
        assert manhattan(a, c) <= manhattan(a, b) + manhattan(b, c)


# =============================
# VALIDATION
# =============================

def test_validate_accepts_permutations():
    assert validate([[1, 2], [3, 4]]) is None
    assert validate([[2, 4, 6], [5, 1, 3]]) is None


def test_validate_reports_duplicates_and_missing():
    problem = validate([[1, 1], [3, 4]])
    assert problem.kind == "permutation"
    assert problem.duplicates == (1,)
    assert problem.missing == (2,)


def test_validate_reports_out_of_range():
    problem = validate([[1, 2], [3, 9]])
    assert problem.unexpected == (9,)
    assert problem.missing == (4,)


def test_validate_shape_is_distinct():
    problem = validate([[1, 2], [3, 4]], GridDims(1, 4))
    assert problem.kind == "shape"
    with pytest.raises(ShapeError):
        Labeling(GridDims(2, 2), [[1, 2], [3]])


def test_labeling_raises_permutation_error():
    with pytest.raises(PermutationError) as err:
        Labeling.from_rows([[1, 1], [3, 4]])
    assert err.value.duplicates == (1,)
    assert err.value.missing == (2,)


def test_labeling_is_read_only():
    lab = Labeling.from_rows([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        lab.labels[0, 0] = 9


# =============================
# WALKS
# =============================

def test_inverse_walk_examples():
    assert inverse_walk(Labeling.from_rows([[1, 2], [3, 4]])).cells == (Cell(1, 1), Cell(1, 2), Cell(2, 1), Cell(2, 2))
    assert inverse_walk(Labeling.from_rows([[2, 4, 6], [5, 1, 3]])).cells == (
        Cell(2, 2), Cell(1, 1), Cell(2, 3), Cell(1, 2), Cell(2, 1), Cell(1, 3),
    )
    assert inverse_walk(Labeling.from_rows([[1]])).cells == (Cell(1, 1),)


def test_labeling_from_walk_inverts(rng):
    for _ in range(20):
        lab = random_labeling(GridDims(3, 5), rng)
        assert labeling_from_walk(inverse_walk(lab)) == lab


@pytest.mark.parametrize("rows, expected", [
    ([[2, 4, 6], [5, 1, 3]], 12),
    ([[3, 5, 7], [1, 9, 4], [8, 6, 2]], 23),
    ([[1]], 0),
])
def test_walk_length_examples(rows, expected):
    assert walk_length(Labeling.from_rows(rows)) == expected


@pytest.mark.parametrize("n", [1, 2, 5, 17])
def test_row_major_path(n):
    assert walk_length(row_major(GridDims(1, n))) == n - 1


def test_axis_lengths_split_the_total():
    lab = Labeling.from_rows([[2, 4, 6], [5, 1, 3]])
    assert axis_lengths(lab) == (5, 7)


def test_transpose_and_reverse_examples():
    lab = Labeling.from_rows([[1, 2], [3, 4]])
    assert transpose(lab).tolist() == [[1, 3], [2, 4]]
    assert reverse_labels(lab).tolist() == [[4, 3], [2, 1]]
    assert reverse_labels(reverse_labels(lab)) == lab


def test_evaluator_invariants_on_random_labelings(rng):
    for _ in range(1000):
        m, n = (int(v) for v in rng.integers(1, 7, size=2))
        lab = random_labeling(GridDims(m, n), rng)
        length = walk_length(lab)
        assert length == naive_length(lab.tolist())
        assert walk_length(transpose(lab)) == length
        assert walk_length(reverse_labels(lab)) == length


# =============================
# TEXT FORMAT
# =============================

def test_format_and_parse_round_trip(rng):
    for _ in range(50):
        m, n = (int(v) for v in rng.integers(1, 7, size=2))
        lab = random_labeling(GridDims(m, n), rng)
        text = format_labeling(lab)
        assert text.endswith("\n")
        assert parse_labeling(text) == lab
        assert format_labeling(parse_labeling(text)) == text


def test_parse_accepts_whitespace_runs():
    lab = parse_labeling("\n  2\t4   6\n\n5 1 3  \n")
    assert lab.tolist() == [[2, 4, 6], [5, 1, 3]]


def test_parse_errors():
    with pytest.raises(RaggedRowsError) as err:
        parse_labeling("1 2\n3\n")
    assert err.value.line == 2
    with pytest.raises(TokenError):
        parse_labeling("1 x\n3 4\n")
    with pytest.raises(TokenError):
        parse_labeling("1 2.0\n3 4\n")
    with pytest.raises(PermutationError):
        parse_labeling("1 1\n3 4\n")
    with pytest.raises(ParseError):
        parse_labeling("\n\n")


def test_parse_rejects_integers_beyond_64_bits():
    with pytest.raises(TokenError) as err:
        parse_labeling("1 2\n3 99999999999999999999999\n")
    assert err.value.line == 2
    assert "64-bit" in str(err.value)


def test_labeling_rejects_oversized_entries():
    with pytest.raises(ShapeError):
        Labeling(GridDims(1, 2), [[1, 2 ** 70]])
    assert validate([[1, 2 ** 70]]).kind == "shape"


def test_row_major_is_identity_order():
    assert row_major(GridDims(2, 3)).tolist() == [[1, 2, 3], [4, 5, 6]]
    assert np.array_equal(row_major(GridDims(1, 1)).labels, [[1]])
