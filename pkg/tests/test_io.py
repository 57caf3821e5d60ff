import io as stdio
import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from mirrorlat import io
from mirrorlat.avhs import amodel_presentation, calabi_yau_diamond
from mirrorlat.errors import InputError, InvariantError
from mirrorlat.lattice import Lattice, hyperbolic_plane, k3_lattice
from mirrorlat.mukai import MukaiVector, PeriodPoint
from mirrorlat.tduality import PureCycle, t_dual_cycle

from fixtures import nonassociative_gw, rank4_gw
from gen import random_gw

DATA = Path(__file__).parent / "data"


def roundtrip(x):
    return io.parse_input(io.emit_value(x))


def test_minimal_u_lattice():
    L = io.parse_input(str(DATA / "u_lattice.json"))
    assert isinstance(L, Lattice) and L.rank == 2
    assert L == Lattice(((0, 1), (1, 0)), labels=("e", "f"), flags={"even", "unimodular"})


def test_asymmetric_gram_named():
    with pytest.raises(InvariantError) as exc:
        io.parse_input(str(DATA / "bad_gram.json"))
    assert exc.value.invariant == "gram symmetric"


def test_negative_eta_named():
    with pytest.raises(InvariantError) as exc:
        io.parse_input(str(DATA / "negative_eta.json"))
    assert exc.value.invariant == "effective class"


def test_syntax_error_position():
    with pytest.raises(InputError) as exc:
        io.parse_input(str(DATA / "syntax_error.json"))
    assert (exc.value.line, exc.value.column) == (2, 19)
    assert "line 2, column 19" in str(exc.value)


def test_floats_rejected():
    with pytest.raises(InputError):
        io.parse_input('{"re": [0.5, 0], "im": [0, 0.5]}')
    with pytest.raises(InputError):
        io.parse_input('{"gram": [[0, 1.0], [1, 0]]}')


def test_unknown_kind():
    with pytest.raises(InputError):
        io.parse_input('{"foo": 1}')
    with pytest.raises(InputError):
        io.parse_input('{"type": "nonsense"}')


def test_missing_file():
    with pytest.raises(InputError):
        io.parse_input(str(DATA / "does_not_exist.json"))


def test_stream_input():
    L = io.parse_input(stdio.StringIO('{"gram": [[2]]}'))
    assert L.gram == ((2,),)


def test_canonical_rational():
    assert io.fmt_rational(Fraction(-4, 6)) == "-2/3"
    assert io.fmt_rational(Fraction(6, 3)) == "2"
    assert io.to_jsonable([Fraction(-4, 6), 3, True]) == ["-2/3", 3, True]


@pytest.mark.parametrize("value", [
    hyperbolic_plane(),
    k3_lattice(),
    Lattice(((2, 1), (1, 2)), labels=("a", "b")),
    MukaiVector(1, (0, 2), -3),
    PeriodPoint([Fraction(1, 2), 0, Fraction(-4, 6)], [0, 1, 0]),
    PureCycle.build(3, [(2, 1, 0), (0, 0, 1)], 1),
    PureCycle.build(3, [], 3, multiplicity=3),
    t_dual_cycle(PureCycle.build(3, [(1, 0, 0)], 2)),
    rank4_gw(),
    nonassociative_gw(),
    amodel_presentation(rank4_gw(), 3),
    amodel_presentation(nonassociative_gw(), 2),
    calabi_yau_diamond(3, 1, 101),
])
def test_roundtrip(value):
    assert roundtrip(value) == value
    # emitting twice gives identical bytes
    assert io.emit_value(value) == io.emit_value(roundtrip(value))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_roundtrip_random_gw(seed):
    G = random_gw(random.Random(seed))
    assert roundtrip(G) == G


@settings(max_examples=60)
@given(st.lists(st.fractions(max_denominator=50), min_size=1, max_size=6))
def test_roundtrip_periods(xs):
    p = PeriodPoint(xs, xs[::-1])
    assert roundtrip(p) == p


def test_report_formats():
    R = io.RunReport(["mirrorlat", "x"], {"in.json": "ab"}, {"value": Fraction(-4, 6), "flat": True})
    R.check("something", True)
    text = io.emit_report(R, "text")
    assert text == ("command: mirrorlat x\n"
                    "input in.json: sha256 ab\n"
                    "flat: true\n"
                    "value: -2/3\n"
                    "check something: pass\n")
    machine = io.emit_report(R, "machine")
    assert json.loads(machine)["results"] == {"flat": True, "value": "-2/3"}
    back = io.load_report(machine)
    assert io.emit_report(back, "machine") == machine
    with pytest.raises(ValueError):
        io.emit_report(R, "xml")
