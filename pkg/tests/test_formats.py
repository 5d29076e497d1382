from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deltapoly.coxeter import build_root_system
from deltapoly.formats import (ParseError, apartment_to_json, dump_json, format_rational, grassmannian_to_json,
                               inequalities_from_text, inequalities_to_text, load_json, parse_apartment,
                               parse_circle, parse_grassmannian, parse_rational, parse_vector_arg, read_ieq,
                               read_poi, write_ieq, write_poi)
from deltapoly.inequalities import system

fractions = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)


def test_rational_examples():
    assert parse_rational("-3/2") == Fraction(-3, 2)
    assert parse_rational(" 4 ") == 4
    assert parse_rational(7) == 7
    assert format_rational(Fraction(-3, 2)) == "-3/2"
    assert format_rational(Fraction(4)) == "4"


@pytest.mark.parametrize("bad", [1.5, True, "1.5", "1/0", "x", None, "1//2"])
def test_rational_rejects(bad):
    with pytest.raises(ParseError):
        parse_rational(bad)


@given(fractions)
def test_rational_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_vector_arg_error_column():
    assert parse_vector_arg("1,-1/2,0") == (1, Fraction(-1, 2), 0)
    with pytest.raises(ParseError) as e:
        parse_vector_arg("1,2,oops")
    assert e.value.column == 5


def test_json_error_position():
    with pytest.raises(ParseError) as e:
        load_json('{\n  "a": 1,\n  "b": ]\n}')
    assert (e.value.line, e.value.column) == (3, 8)


def test_apartment_round_trip():
    obj = load_json(dump_json(apartment_to_json("G2", [((1, 2), [Fraction(1), Fraction(-1, 3)])])))
    assert parse_apartment(obj) == ("G2", [((1, 2), [1, Fraction(-1, 3)])])
    with pytest.raises(ParseError):
        parse_apartment({"root_system": "B2", "points": [{"word": [1.0], "h": [1, 1]}]})
    with pytest.raises(ParseError):
        parse_apartment({"points": []})


def test_grassmannian_round_trip():
    atoms = [([[1, 0, Fraction(1, 2)]], Fraction(3, 2)), ([[0, 1, 0]], 1)]
    form = [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
    got = parse_grassmannian(load_json(dump_json(grassmannian_to_json(3, 1, atoms, form))))
    assert got == {"n": 3, "q": 1, "form": form, "atoms": atoms}
    with pytest.raises(ParseError):
        parse_grassmannian({"n": 2, "q": 1, "atoms": [{"basis": [[1, 0]]}]})


def test_circle_parse():
    assert parse_circle({"masses": [1, "1/2"], "angles": [0, 3.5]}) == ([1.0, 0.5], [0.0, 3.5])


def test_inequality_text_round_trip():
    sys_ = system(build_root_system("G2"), 3)
    back = inequalities_from_text("# comment\n\n" + inequalities_to_text(sys_))
    assert tuple(back) == tuple(sys_.inequalities)
    with pytest.raises(ParseError) as e:
        inequalities_from_text(sys_.inequalities[0].to_text() + "\n1 2 | 3 <= 0\n")
    assert e.value.line == 2


@given(st.integers(1, 6).flatmap(lambda d: st.tuples(
    st.just(d),
    st.lists(st.lists(fractions, min_size=d, max_size=d), max_size=5),
    st.lists(st.lists(fractions, min_size=d, max_size=d), max_size=2))))
def test_ieq_round_trip(case):
    dim, rows, eqs = case
    got = read_ieq(write_ieq(dim, rows, eqs))
    assert got == (dim, rows, eqs)


def test_ieq_reads_ge_and_reports_position():
    text = "DIM = 2\n\nINEQUALITIES_SECTION\n(1) x1 - 2x2 >= 0\nEND\n"
    assert read_ieq(text) == (2, [[-1, 2]], [])
    with pytest.raises(ParseError) as e:
        read_ieq("DIM = 2\nINEQUALITIES_SECTION\n(1) x1 + x5 <= 0\nEND\n")
    assert e.value.line == 3
    with pytest.raises(ParseError):
        read_ieq("INEQUALITIES_SECTION\nEND\n")


@given(st.integers(1, 6).flatmap(lambda d: st.tuples(
    st.just(d), st.lists(st.lists(st.integers(-9, 9), min_size=d, max_size=d), max_size=6))))
def test_poi_round_trip(case):
    dim, rays = case
    assert read_poi(write_poi(dim, rays)) == (dim, rays)
