"""Grammar, conversions, direction handling, serialization and sessions."""

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lindiff import (
    DiffPoly,
    Monomial,
    ParseError,
    RelationPattern,
    Session,
    SessionOptions,
    inv_reduce,
    janet_basis,
    normalize_direction,
    parse_expression,
    parse_ring,
    parse_system,
    pol2shift,
    residue_class_basis,
    serialize,
    shift2pol,
)
from lindiff.frontend.convert import OperatorPoly, format_rows
from lindiff.frontend.parser import parse_relation, parse_relations
from lindiff.frontend.serialize import format_poly, format_system

from suite import random_system

R2 = parse_ring("x,y; u")
RN = parse_ring("n; f")


class TestParseRing:
    def test_three_parts(self):
        r = parse_ring("k,n; f; d,m2,q2")
        assert r.independent == ("k", "n") and r.dependent == ("f",) and r.parameters == ("d", "m2", "q2")

    def test_two_parts(self):
        assert parse_ring("x; y").parameters == ()

    def test_bad(self):
        with pytest.raises((ParseError, ValueError)):
            parse_ring("x")


class TestParseSystem:
    def test_two_terms(self):
        (p,) = parse_system("u[x+1,y] - u[x,y]", R2).polys
        assert set(p.terms) == {Monomial((1, 0), 0), Monomial((0, 0), 0)}

    def test_coefficient(self):
        (p,) = parse_system("(n+1)*f[n+1] - f[n]", RN).polys
        assert p.terms[Monomial((1,), 0)] == RN.field.gen("n") + 1

    def test_malformed_shift(self):
        with pytest.raises(ParseError) as e:
            parse_system("u[x*2,y]", R2)
        assert e.value.pos is not None

    @pytest.mark.parametrize(
        "text",
        ["u[x,y]*u[x+1,y]", "w[x,y]", "u[y,x]", "u[x+1]", "u[x,y] +", "q*u[x,y]", "u[x,y] ; ; u[x,y]"],
    )
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_system(text, R2)

    def test_error_position(self):
        with pytest.raises(ParseError) as e:
            parse_system("u[x,y] + zz*u[x,y]", R2)
        assert e.value.pos == 9

    def test_equation_and_affine(self):
        ps = parse_system("u[x+1,y] = u[x,y] + 3; u[x,y+1] - u[x,y] = x", R2)
        assert ps.polys[0] == parse_expression("u[x+1,y] - u[x,y]", R2)
        assert ps.rhs[0] == R2.field(3)
        assert ps.rhs[1] == R2.field.gen("x")
        assert not ps.is_homogeneous

    def test_operator_syntax(self):
        a = parse_expression("(S_x - 1)*u", R2)
        assert a == parse_expression("u[x+1,y] - u[x,y]", R2)

    def test_whitespace(self):
        assert parse_expression(" u [ x + 1 , y ] ", R2) == R2.var("u", 1, 0)

    def test_parameters(self):
        R = parse_ring("k,n; f; d,m2")
        p = parse_expression("(d-2*k)*f[k,n] - m2/(n+1)*f[k+1,n]", R)
        assert len(p.terms) == 2

    def test_backward(self):
        R = parse_ring("n; f", "backward")
        p = parse_expression("f[n-1] - n*f[n]", R)
        # internal coordinates negate shifts and the index
        assert p.terms[Monomial((1,), 0)] == R.field(1)
        assert p.terms[Monomial((0,), 0)] == R.field.gen("n")


class TestNormalizeDirection:
    def test_lift(self):
        assert normalize_direction(parse_system("f[n+1] - f[n] - f[n-1]", RN).polys) == parse_system(
            "f[n+2] - f[n+1] - f[n]", RN
        ).polys

    def test_unchanged(self):
        F = parse_system("u[x+1,y] - u[x,y]", R2).polys
        assert normalize_direction(F) == F

    def test_twist(self):
        assert normalize_direction(parse_system("1/n*f[n-1]", RN).polys) == parse_system("1/(n+1)*f[n]", RN).polys

    def test_rhs_shifted(self):
        ps = normalize_direction(parse_system("f[n-1] = n", RN))
        assert ps.rhs[0] == RN.field.gen("n") + 1


def _random_negative_system(seed):
    s = random_system(seed)
    rng = random.Random(seed)
    F = []
    for p in s.polys:
        vec = [-rng.randint(0, 3) for _ in range(s.ring.n)]
        F.append(p.shift(vec))
    return s, F


class TestCrossReduction:
    @pytest.mark.parametrize("seed", range(0, 50, 5))
    def test_semantics_preserved(self, seed):
        s, F = _random_negative_system(seed)
        N = normalize_direction(F)
        assert all(p.is_nonnegative() for p in N)
        V = [max(0, -min(m.shift[i] for p in F for m in p.terms)) for i in range(s.ring.n)]
        common = [p.shift(V) for p in F]
        JN = janet_basis([p for p in N if p], s.ranking)
        JC = janet_basis([p for p in common if p], s.ranking)
        for p in common:
            assert inv_reduce(p, JN).is_zero
        for g in JC.polys:
            assert inv_reduce(g, JN).is_zero


class TestConvert:
    def test_shift2pol(self):
        rows = shift2pol(parse_expression("u[x+1,y] - u[x,y]", R2))
        assert list(rows) == [0]
        assert str(rows[0]) == "S_x - 1"
        assert format_rows(rows) == "(S_x - 1)*u"

    def test_pol2shift_inverse(self):
        op = OperatorPoly(R2, {(1, 0): R2.field(1), (0, 0): R2.field(-1)})
        assert pol2shift({0: op}) == parse_expression("u[x+1,y] - u[x,y]", R2)

    def test_twist_left_coefficient(self):
        n = RN.field.gen("n")
        op = OperatorPoly(RN, {(1,): n})
        p = pol2shift({0: op})
        assert p == parse_expression("n*f[n+1]", RN)
        assert shift2pol(p)[0].terms == {(1,): n}

    def test_pol2shift_targets(self):
        op = OperatorPoly(RN, {(1,): RN.field(1)})
        target = parse_expression("n*f[n]", RN)
        assert pol2shift({0: op}, {0: target}) == parse_expression("(n+1)*f[n+1]", RN)

    def test_composition_matches_application(self):
        n = RN.field.gen("n")
        a = OperatorPoly(RN, {(1,): n, (0,): RN.field(1)})
        b = OperatorPoly(RN, {(2,): 1 / (n + 1)})
        f = RN.var("f", 0)
        assert (a * b).apply(f) == a.apply(b.apply(f))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 199))
    def test_round_trip(self, seed):
        for p in random_system(seed).polys:
            assert pol2shift(shift2pol(p), ring=p.ring) == p
            assert parse_expression(format_rows(shift2pol(p)), p.ring) == p


poly_terms = st.dictionaries(
    st.tuples(st.tuples(st.integers(-2, 3), st.integers(-2, 3)), st.integers(0, 2)),
    st.tuples(st.integers(-4, 4), st.integers(1, 3), st.sampled_from([None, "x", "y", "d"])),
    min_size=1,
    max_size=4,
)
RP = parse_ring("x,y; u,v,w; d")


def _build(layout):
    K = RP.field
    terms = {}
    for (sh, k), (a, b, sym) in layout.items():
        c = K(a) / K(b)
        if sym:
            c = c * (K.gen(sym) + 1) / (K.gen(sym) - 2)
        terms[Monomial(sh, k)] = c
    return DiffPoly(RP, terms)


class TestSerialize:
    def test_fibonacci_text(self):
        J = janet_basis(parse_system("f[n+2] - f[n+1] - f[n]", RN).polys)
        assert serialize(J) == "f[n+2] - f[n+1] - f[n]"

    def test_fibonacci_masters(self):
        J = janet_basis(parse_system("f[n+2] - f[n+1] - f[n]", RN).polys)
        doc = json.loads(serialize(residue_class_basis(J), "json"))
        assert doc["masters"] == ["f[n]", "f[n+1]"]

    def test_json_schema(self):
        J = janet_basis(parse_system("u[x+1,y] - u[x,y]; u[x,y+1] - u[x,y]", R2).polys)
        doc = json.loads(serialize(J, "json"))
        assert set(doc) == {"ring", "ranking", "mode", "elements", "masters", "series", "conditions"}
        assert doc["elements"] == ["u[x,y+1] - u[x,y]", "u[x+1,y] - u[x,y]"]
        assert doc["mode"] == "janet"

    def test_basis_fixed_point(self):
        for seed in range(0, 200, 10):
            s = random_system(seed)
            J = janet_basis(s.polys, s.ranking)
            text = serialize(J)
            again = janet_basis(parse_system(text, s.ring).polys, s.ranking)
            assert serialize(again) == text
            assert parse_system(text, s.ring).polys == J.polys

    @settings(max_examples=150, deadline=None)
    @given(poly_terms)
    def test_parse_format_identity(self, layout):
        p = _build(layout)
        if not p:
            return
        text = format_poly(p)
        assert parse_expression(text, RP) == p
        assert format_poly(parse_expression(text, RP)) == text

    def test_backward_display(self):
        R = parse_ring("n; f", "backward")
        p = parse_expression("f[n-1] - n*f[n]", R)
        assert parse_expression(format_poly(p), R) == p
        assert "f[n-1]" in format_poly(p)

    def test_system_text(self):
        F = parse_system("u[x+1,y]; u[x,y+1]", R2).polys
        assert format_system(F) == "u[x+1,y];\nu[x,y+1]"

    def test_bad_format(self):
        J = janet_basis(parse_system("f[n+1]", RN).polys)
        with pytest.raises(ValueError):
            serialize(J, "xml")


class TestRelationsText:
    def test_pattern(self):
        R = parse_ring("k,n; f")
        assert parse_relation("f[0,*]", R) == RelationPattern(0, (0, None))

    def test_file(self):
        R = parse_ring("k,n; f")
        pats = parse_relations("# zero sector\nf[0,*]\n\nf[*,1]\n", R)
        assert pats == [RelationPattern(0, (0, None)), RelationPattern(0, (None, 1))]

    @pytest.mark.parametrize("text", ["g[0,*]", "f[0]", "f[a,*]", "f[-1,*]", "f 0"])
    def test_bad(self, text):
        with pytest.raises(ParseError):
            parse_relation(text, parse_ring("k,n; f"))


class TestSession:
    def test_options_validated(self):
        with pytest.raises(ValueError):
            SessionOptions(mode="pommaret")
        assert SessionOptions(criteria=("1", "C3")).criteria == ("C1", "C3")

    def test_workflow(self):
        s = Session(RN)
        J = s.basis("f[n+1] - f[n] - f[n-1]")
        assert serialize(J) == "f[n+2] - f[n+1] - f[n]"
        assert s.reduce("f[n+2]", J) == parse_expression("f[n+1] + f[n]", RN)
        s.add_relation("f[0]")
        s.add_relation("f[0]")
        assert len(s.list_relations()) == 1
        assert s.reduce("f[n+2]", J) == RN.var("f", 1)
        assert [m.shift for m in s.masters(J)] == [(1,)]

    def test_per_call_override(self):
        s = Session(R2, mode="janet")
        F = "u[x+2,y] - u[x,y+1]; u[x+1,y+1] - u[x,y]"
        a = s.basis(F)
        b = s.basis(F, mode="janet-like")
        assert b.mode == "janet-like" and s.options.mode == "janet"
        assert residue_class_basis(a, 6).enumerate(6) == residue_class_basis(b, 6).enumerate(6)

    def test_comp_cond(self):
        s = Session(R2)
        assert len(s.comp_cond("u[x+1,y] - u[x,y]; u[x,y+1] - u[x,y]")) == 1
