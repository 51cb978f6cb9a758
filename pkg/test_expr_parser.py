import pytest

import coordalg as ca
import constructions as cs
from expr_parser import eval_expr, parse_ck, parse_element, parse_gamma, parse_in_space, tokenize
from polyring import ParseError, parse_poly


def test_tokenize_positions():
    toks = tokenize("bar(x) * y^2")
    assert [t.kind for t in toks] == ["func", "op", "var", "op", "op", "var", "op", "num", "end"]
    assert toks[5].pos == 9
    # x1 is only a function name when a "(" follows
    assert [t.kind for t in tokenize("x1(y)")][:2] == ["func", "op"]


def test_parse_gamma():
    assert parse_gamma("x^2") == ca.GammaEl(parse_poly("1 - y^4"))
    assert parse_gamma("(1 + x) * y - 3") == ca.GammaEl(parse_poly("-3 + y"), parse_poly("y"))
    assert parse_gamma("y^2 / 2") == ca.y_power(2) * ca.GammaEl(parse_poly("1/2"))
    assert parse_gamma("−x") == -ca.X


@pytest.mark.parametrize("construction, text, expected", [
    ("jvec", "bar(x) * bar(y)", "1 + y^4"),
    ("jvec", "bar(y) * bar(y)", "0"),
    ("jvec", "y^2 * bar(x)", "bar(x*(y^2))"),
    ("jadelta", "bar(x) * bar(y)", "1 + y^4"),
    ("jadelta", "y^2 * x*y", "x*(y^3)"),
    ("double", "bar(x) * bar(y)", "1 + y^4"),
    ("ck", "w3(1) * w3(1)", "-1"),
    ("ck", "w1(1) * x2(1)", "x3:1"),
    ("ck", "x1(y) * x2(y)", "0"),
    ("gck", "w1(y^2) + 1", "1 | w1:y^2"),
])
def test_eval_expr(construction, text, expected):
    assert eval_expr(text, construction) == expected


def test_membership_errors():
    with pytest.raises(cs.MembershipError, match="not in J"):
        parse_element("bar(1)", "jadelta")
    with pytest.raises(cs.MembershipError, match="not in GCK"):
        parse_element("w1(y)", "gck")
    with pytest.raises(cs.MembershipError):
        parse_element("y", "gck")


@pytest.mark.parametrize("text, position", [
    ("bar(x) * ", 9),
    ("x $ y", 2),
    ("(x + y", 6),
    ("y / x", 4),
    ("y / 0", 4),
])
def test_parse_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as exc:
        parse_element(text, "jvec")
    assert exc.value.position == position


def test_construction_only_syntax():
    with pytest.raises(ParseError):
        parse_element("w1(1)", "jvec")
    with pytest.raises(ParseError):
        parse_gamma("bar(x)")
    with pytest.raises(ParseError):
        parse_element("bar(x)^2", "jvec")
    with pytest.raises(ParseError):
        parse_element("", "jvec")


def test_parse_ck():
    u = parse_ck("1 | w1:y | bar:x")
    assert u == cs.CKEl(a=ca.ONE, w=(ca.Y, ca.ZERO, ca.ZERO), b=ca.X)
    assert cs.format_ck(u) == "1 | w1:y | bar:x"
    assert parse_ck("x3: y^2") == cs.CKEl(xo=(ca.ZERO, ca.ZERO, ca.y_power(2)))


def test_parse_ck_errors():
    with pytest.raises(ParseError) as exc:
        parse_ck("1 | w9:y")
    assert exc.value.position == 3
    with pytest.raises(ParseError) as exc:
        parse_ck("1 | bar:x $")
    assert exc.value.position == 10


def test_parse_in_space():
    assert parse_in_space("x*y", ca.Space.A) == ca.x_y_power(1)
    with pytest.raises(ValueError):
        parse_in_space("y", ca.Space.A)
