import pytest

from grid_module.grid import (
    Coord,
    EvenSideError,
    Grid,
    InvalidCharacterError,
    NonSquareError,
    Orientation,
    StructureRule,
    answers,
    fundamental_coords,
    fundamental_region,
    grid_from_json,
    grid_to_json,
    load_grid,
    parse_grid,
    rotate180,
    serialize_grid,
    validate,
)


CORNERS_5 = "....#\n.....\n.....\n.....\n#...."


def test_parse_all_white_3x3():
    g = parse_grid("...\n...\n...")
    assert g.n == 1
    assert all(g.is_cell(c) for c in g.coords())


def test_parse_even_side():
    with pytest.raises(EvenSideError):
        parse_grid("..\n..")


def test_parse_non_square():
    with pytest.raises(NonSquareError):
        parse_grid("...\n..\n...")


def test_parse_invalid_character_position():
    with pytest.raises(InvalidCharacterError) as info:
        parse_grid("...\n.x.\n...")
    assert (info.value.row, info.value.col, info.value.char) == (1, 1, "x")


def test_parse_corner_voids():
    g = parse_grid(CORNERS_5)
    assert g.n == 2
    assert g.voids() == [Coord(2, 2), Coord(-2, -2)]


def test_trailing_newline_and_crlf():
    assert parse_grid("...\r\n...\r\n...\n") == Grid.all_white(1)


def test_serialize_roundtrip():
    assert serialize_grid(Grid.all_white(1)) == "...\n...\n..."
    g = parse_grid(CORNERS_5)
    assert parse_grid(serialize_grid(g)) == g
    assert serialize_grid(parse_grid(CORNERS_5)) == CORNERS_5


def test_json_form():
    g = parse_grid(CORNERS_5)
    text = grid_to_json(g)
    assert grid_from_json(text) == g
    assert load_grid(text) == g
    assert load_grid(CORNERS_5) == g


def test_answers_all_white():
    result = answers(Grid.all_white(1))
    across = [a for a in result if a.orientation is Orientation.ACROSS]
    down = [a for a in result if a.orientation is Orientation.DOWN]
    assert [len(a) for a in across] == [3, 3, 3]
    assert [len(a) for a in down] == [3, 3, 3]


def test_answers_single_void_truncates_row():
    g = parse_grid(CORNERS_5)
    top = [a for a in answers(g) if a.orientation is Orientation.ACROSS and a.line_number == 2]
    assert len(top) == 1
    assert top[0].coords == (Coord(-2, 2), Coord(-1, 2), Coord(0, 2), Coord(1, 2))


def test_answers_centre_void_splits_row_zero():
    g = Grid.from_voids(2, [Coord(0, 0)])
    row0 = [a for a in answers(g) if a.orientation is Orientation.ACROSS and a.line_number == 0]
    assert [len(a) for a in row0] == [2, 2]


def test_down_answers_run_bottom_to_top():
    down = [a for a in answers(Grid.all_white(1)) if a.orientation is Orientation.DOWN]
    assert down[0].coords == (Coord(-1, -1), Coord(-1, 0), Coord(-1, 1))


@pytest.mark.parametrize("voids", [[], [(0, 0)], [(2, 2)], [(0, 1), (1, 2)], [(-1, 2), (2, 0)]])
def test_answer_lengths_cover_cells(voids):
    g = Grid.from_voids(2, voids, symmetric=True)
    result = answers(g)
    cells = len(g.white_cells())
    assert sum(len(a) for a in result if a.orientation is Orientation.ACROSS) == cells
    assert sum(len(a) for a in result if a.orientation is Orientation.DOWN) == cells


@pytest.mark.parametrize("voids", [[(0, 0)], [(2, 2)], [(0, 1), (1, 2)], [(-1, 2), (2, 0)]])
def test_answers_closed_under_rotation(voids):
    result = answers(Grid.from_voids(2, voids, symmetric=True))
    assert {a.rotated() for a in result} == set(result)


def test_validate_all_white():
    assert validate(Grid.all_white(1)).valid


def test_validate_centre_void():
    report = validate(Grid.from_voids(2, [Coord(0, 0)]))
    assert report.verdicts[StructureRule.ROTATIONAL_SYMMETRY].passed
    assert not report.verdicts[StructureRule.ANSWER_LENGTH].passed
    assert not report.valid


def test_validate_corner_voids():
    report = validate(parse_grid(CORNERS_5))
    assert report.valid
    assert report.failed_rules() == []


def test_validate_asymmetric_witness():
    report = validate(Grid.from_voids(2, [Coord(2, 2)]))
    verdict = report.verdicts[StructureRule.ROTATIONAL_SYMMETRY]
    assert not verdict.passed
    assert verdict.witness is not None


def test_all_void_grid_is_disconnected():
    g = Grid.from_voids(1, list(Grid.all_white(1).coords()))
    assert StructureRule.CONNECTIVITY in validate(g).failed_rules()


def test_disconnected_grid():
    # a full void row separates the top row from the rest
    g = Grid.from_voids(2, [Coord(i, 1) for i in range(-2, 3)], symmetric=True)
    assert StructureRule.CONNECTIVITY in validate(g).failed_rules()


def test_single_cell_grid_fails_answer_length():
    g = parse_grid(".")
    assert g.n == 0
    assert validate(g).failed_rules() == [StructureRule.ANSWER_LENGTH]


def test_full_dimension():
    voids = [Coord(i, 2) for i in range(-2, 3)]
    g = Grid.from_voids(2, voids, symmetric=True)
    assert StructureRule.FULL_DIMENSION in validate(g).failed_rules()


def test_mirrored_void_sets_are_symmetric():
    for voids in ([(0, 1)], [(1, 0), (-2, 2)], [(0, 0), (2, 1)]):
        g = Grid.from_voids(2, voids, symmetric=True)
        assert validate(g).verdicts[StructureRule.ROTATIONAL_SYMMETRY].passed


def test_fundamental_region_sizes():
    assert fundamental_region(0) == {Coord(0, 0)}
    assert len(fundamental_region(2)) == 13
    for n in range(6):
        assert len(fundamental_coords(n)) == 2 * n * n + 2 * n + 1


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_fundamental_region_partitions_grid(n):
    region = fundamental_region(n)
    mirrored = {rotate180(c) for c in region}
    assert region & mirrored == {Coord(0, 0)}
    assert region | mirrored == set(Grid.all_white(n).coords())


def test_rotate180():
    assert rotate180(Coord(0, 0)) == Coord(0, 0)
    assert rotate180(Coord(2, -1)) == Coord(-2, 1)
    assert rotate180(rotate180(Coord(3, 1))) == Coord(3, 1)
