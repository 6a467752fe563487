from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from e6cs.algebra import K, KappaRational, ZPoly, kr
from e6cs.corpus import (
    CorpusError,
    data_path,
    entry_env,
    parse_corpus_text,
    read_corpus_dir,
)
from e6cs.textio import (
    ParseError,
    format_label,
    format_series,
    format_zpoly,
    parse_kappa,
    parse_label,
    parse_series,
    parse_zpoly,
    zpoly_from_json,
    zpoly_to_json,
)


def test_two_term_example():
    p = parse_zpoly("z1^2 - (2/(1+k))*z3")
    assert len(p) == 2
    assert p.coeff((0, 0, 1, 0, 0, 0)) == kr(-2) / (K + 1)


def test_juxtaposition_and_division():
    p = parse_zpoly("3 (1 + k) z1 z6/((1 + 2 k)(2 + k))")
    c = p.coeff((1, 0, 0, 0, 0, 1))
    assert c == (K + 1) * 3 / ((K * 2 + 1) * (K + 2))


def test_unknown_variable_is_a_positioned_error():
    with pytest.raises(ParseError) as exc:
        parse_zpoly("z1 + z7")
    assert exc.value.pos == 5


@pytest.mark.parametrize("bad", ["z1 +", "(z1", "z1 / z2", "2 ^ k", "z1 $ 2"])
def test_malformed(bad):
    with pytest.raises(ParseError):
        parse_zpoly(bad)


def test_kappa_and_names():
    assert parse_kappa("n (n + 2 k - 1)", {"n": 2}) == (K * 2 + 1) * 2
    assert parse_kappa("A + 1", {"A": kr(Fraction(1, 3))}) == kr(Fraction(4, 3))


def test_series():
    s = parse_series("P[200000] + 2/(1 + k) P[001000]")
    assert s == {(2, 0, 0, 0, 0, 0): kr(1), (0, 0, 1, 0, 0, 0): kr(2) / (K + 1)}
    text = format_series(sorted(s.items(), reverse=True))
    assert parse_series(text) == s
    with pytest.raises(ParseError):
        parse_series("z1 P[100000]")


def test_labels():
    assert parse_label("100001") == (1, 0, 0, 0, 0, 1)
    assert parse_label("10,0,0,0,0,1") == (10, 0, 0, 0, 0, 1)
    assert format_label((10, 0, 0, 0, 0, 1)) == "10,0,0,0,0,1"
    assert format_label((0, 0, 1, 0, 0, 0)) == "001000"
    with pytest.raises(ValueError):
        parse_label("10000")


coeff = st.builds(lambda a, b, c: (K * a + b) / (K * c + 1), st.integers(-9, 9), st.integers(-9, 9), st.integers(0, 9))
zpoly = st.dictionaries(st.tuples(*[st.integers(0, 3)] * 6), coeff, max_size=5).map(ZPoly)


@settings(max_examples=60, deadline=None)
@given(zpoly)
def test_round_trip(p):
    assert parse_zpoly(format_zpoly(p)) == p
    assert parse_zpoly(str(p)) == p
    assert zpoly_from_json(zpoly_to_json(p)) == p


def test_corpus_payloads_round_trip():
    from e6cs.golden import load_corpus

    n = 0
    for e in load_corpus():
        if e.source in ("appendixB_poly", "appendixB_monomial", "section2_Mlist", "section2_blist"):
            p = parse_zpoly(e.payload, entry_env(e))
            text = format_zpoly(p)
            assert parse_zpoly(text) == p
            assert format_zpoly(parse_zpoly(text)) == text
            n += 1
    assert n == 12 + 40 + 6 + 6


def test_kappa_rational_json_shape():
    from e6cs.textio import kappa_to_json

    assert kappa_to_json(kr(1) / (K + 1)) == {"num": [1], "den": [1, 1]}
    assert KappaRational([1], [1, 1]) == kr(1) / (K + 1)


# --- corpus format -----------------------------------------------------------


def test_corpus_parse():
    text = """
# heading
[B:P_100000] appendixB_poly
# paper-verbatim: z1 + 0
# a note
let A = 1 + k
z1
  + A z2
"""
    (e,) = parse_corpus_text(text)
    assert e.id == "B:P_100000" and e.source == "appendixB_poly"
    assert e.verbatim == ["z1 + 0"] and e.notes == ["a note"]
    assert e.payload == "z1 + A z2"
    assert parse_zpoly(e.payload, entry_env(e)) == ZPoly.var(1) + ZPoly.var(2).scale(K + 1)


@pytest.mark.parametrize("text", [
    "z1\n",
    "[a] s\n[a] s\nz1\n",
    "[a] s\n",
    "[a] s\nlet A 3\nz1\n",
])
def test_corpus_errors(text):
    with pytest.raises(CorpusError):
        parse_corpus_text(text)


def test_corpus_dir_errors(tmp_path):
    with pytest.raises(CorpusError):
        read_corpus_dir(tmp_path / "missing")
    with pytest.raises(CorpusError):
        read_corpus_dir(tmp_path)
    (tmp_path / "a.txt").write_text("# nothing\n")
    with pytest.raises(CorpusError):
        read_corpus_dir(tmp_path)


def test_bundled_data_present():
    assert data_path("operator.txt").is_file()
    assert len(read_corpus_dir(data_path("golden"))) == 12 + 40 + 13 + 11 + 6 + 6
