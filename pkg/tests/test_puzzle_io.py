import pytest

from helpers import running
from logigrid import (
    ArityError,
    Category,
    Constraint,
    DuplicateLabel,
    Puzzle,
    PuzzleSyntaxError,
    SameCategory,
    ScriptedPrompter,
    UnknownLabel,
    UnorderedCategory,
    acquire_interactive,
    parse_puzzle,
    serialize_puzzle,
    validate_puzzle,
)

HEADER = """puzzle Birth years
category FirstName: Angela Donald Leo
category Country: Germany Ireland United_States
category YearOfBirth ordered: 1946 1954 1979
"""
DOCUMENT = HEADER + """clue 1: yes United_States 1946
clue 2: after Leo YearOfBirth Germany
clue 3: or Donald 1946 Ireland
"""

RUNNING_ANSWERS = [
    "Birth years", "3",
    "First_Name", "n", "Angela Donald Leo",
    "Country", "n", "Germany Ireland United_States",
    "Year of Birth", "y", "1946 1954 1979",
    "1", "yes", "United States", "1946",
    "2", "after", "Leo", "Year_of_Birth", "Germany",
    "3", "or", "Donald", "1946", "Ireland",
    "",
]


def test_parse_running_example():
    p = parse_puzzle(DOCUMENT)
    assert (p.k, p.n, len(p.constraints)) == (3, 3, 3)
    assert p.categories[2].ordered and not p.categories[0].ordered


def test_parse_positional_argument_order():
    c = parse_puzzle(DOCUMENT).constraints[1]
    assert c == Constraint(2, "after", ("Leo", "YearOfBirth", "Germany"))


def test_parse_unknown_label_carries_line():
    with pytest.raises(UnknownLabel) as info:
        parse_puzzle(HEADER + "clue 1: yes Paris 1946\n")
    assert info.value.line == 5


@pytest.mark.parametrize("clue, error", [
    ("clue 1: maybe Leo 1946", PuzzleSyntaxError),
    ("clue x: yes Leo 1946", PuzzleSyntaxError),
    ("clue 1: yes Leo", ArityError),
    ("clue 1: before Leo Country Germany", UnorderedCategory),
    ("clue 1: yes Leo Donald", SameCategory),
    ("clue 1: disjunction 2 + Leo 1946 Donald Ireland", PuzzleSyntaxError),
])
def test_parse_errors(clue, error):
    with pytest.raises(error):
        parse_puzzle(HEADER + clue + "\n")


def test_duplicate_label_rejected():
    with pytest.raises(DuplicateLabel):
        parse_puzzle("category A: x y\ncategory B: y z\n")


def test_comments_and_blank_lines_ignored():
    text = "# heading\n\n" + DOCUMENT + "  # trailing\n"
    assert parse_puzzle(text) == parse_puzzle(DOCUMENT)


def test_constraints_sorted_by_clue_then_input_order():
    p = parse_puzzle(HEADER + "clue 2: no Leo 1946\nclue 1: yes Angela 1954\nclue 2: no Leo Germany\n")
    assert [(c.clue, c.labels[1]) for c in p.constraints] == [(1, "1954"), (2, "1946"), (2, "Germany")]


def test_disjunction_polarities():
    p = parse_puzzle(HEADER + "clue 4: disjunction 2 + - Leo 1946 Donald Ireland\n")
    c = p.constraints[0]
    assert c.polarities == (True, False)
    assert list(c.disjuncts()) == [("Leo", "1946", True), ("Donald", "Ireland", False)]


def test_round_trip_running_example():
    p = parse_puzzle(DOCUMENT)
    assert parse_puzzle(serialize_puzzle(p)) == p


def test_serialize_clue_zero():
    p = parse_puzzle(HEADER + "clue 0: alldiff 3 Leo Germany 1954\n")
    assert "clue 0: alldiff 3 Leo Germany 1954" in serialize_puzzle(p)


def test_serialize_without_constraints():
    text = serialize_puzzle(parse_puzzle(HEADER))
    assert "clue" not in text
    assert text.count("category") == 3


def test_validate_puzzle_codes():
    assert validate_puzzle(running()) == []
    cats = running().categories
    same = Puzzle("x", cats, [Constraint(1, "yes", ("Leo", "Angela"))])
    assert [i.code for i in validate_puzzle(same)] == ["SameCategoryPair"]
    unordered = Puzzle("x", cats, [Constraint(1, "before", ("Leo", "Country", "Angela"))])
    assert [i.code for i in validate_puzzle(unordered)] == ["UnorderedCategory"]


def test_structure_issues():
    uneven = Puzzle("x", [Category("A", ("a", "b")), Category("B", ("c", "d", "e"))], [])
    assert "UnequalSizes" in [i.code for i in validate_puzzle(uneven)]
    single = Puzzle("x", [Category("A", ("a", "b"))], [])
    assert "TooFewCategories" in [i.code for i in validate_puzzle(single)]


def test_acquire_running_example():
    transcript = []
    p = acquire_interactive(ScriptedPrompter(RUNNING_ANSWERS), transcript=transcript)
    assert p == running()
    assert transcript == RUNNING_ANSWERS
    assert acquire_interactive(ScriptedPrompter(transcript)) == p


def test_acquire_disjunction():
    answers = RUNNING_ANSWERS[:11] + [
        "7", "disjunction", "2", "is", "is not", "Leo", "1946", "Donald", "Ireland", "",
    ]
    p = acquire_interactive(ScriptedPrompter(answers))
    (c,) = p.constraints
    assert (c.kind, c.n, c.polarities) == ("disjunction", 2, (True, False))
    assert c.labels == ("Leo", "1946", "Donald", "Ireland")


def test_acquire_reprompts_bad_answers():
    told = []
    prompter = ScriptedPrompter(RUNNING_ANSWERS[:11] + [
        "one", "1", "maybe", "1", "yes", "Paris", "Leo", "1946",
        "2", "before", "Leo", "Country", "Germany",  # rejected: Country is unordered
        "",
    ])
    prompter.tell = told.append
    p = acquire_interactive(prompter)
    assert p.constraints == (Constraint(1, "yes", ("Leo", "1946")),)
    assert len(told) == 4


def test_acquire_ends_on_eof_with_no_constraints():
    p = acquire_interactive(ScriptedPrompter(RUNNING_ANSWERS[:11]))
    assert p.constraints == () and p.k == 3


def test_acquire_equals_parse():
    p = acquire_interactive(ScriptedPrompter(RUNNING_ANSWERS))
    assert parse_puzzle(serialize_puzzle(p)) == p
