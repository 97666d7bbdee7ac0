import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from parcont.cli import run_command
from parcont.parser import (
    FamilySyntaxError,
    format_family,
    parse_assignment,
    parse_family,
    parse_polynomial,
)
from parcont.ideals import FamilySpec

from .conftest import FAMILIES, P
from .strategies import CTX3, polynomials

EX1 = str(FAMILIES / "example1.fam")
EX2 = str(FAMILIES / "example2.fam")
LIN = str(FAMILIES / "linear2.fam")


class TestParse:
    def test_example1(self):
        F = parse_family("vars: x\nparams: a,b,c\nf1 = a*x^2+b*x+c")
        assert F.x_vars == ("x",) and F.p_vars == ("a", "b", "c")
        assert str(F.polynomials[0]) == "x^2*a + x*b + c"

    def test_example2_bindings_expand(self, ex2):
        ctx = ex2.context
        gamma = P(ctx, "x1^2 + x2^2 - 1")
        assert ex2.polynomials[0] == P(ctx, "x1 - a") * P(ctx, "x1 - 1") * gamma
        assert ex2.polynomials[1] == P(ctx, "x2 - 3") * P(ctx, "x2 - 4") ** 2 * gamma
        assert ex2.names == ("f1", "f2")
        assert max(f.degree() for f in ex2.polynomials) == 5

    def test_no_params(self):
        F = parse_family("vars: x\nparams:\nf = x^2 - 2")
        assert F.p_vars == ()

    def test_comments_and_rationals(self):
        F = parse_family("# c\nvars: x # trailing\nparams: a\nf = 1/2*x - 3/4*a")
        assert str(F.polynomials[0]) == "1/2*x - 3/4*a"

    def test_truncated(self):
        with pytest.raises(FamilySyntaxError, match="end of input") as info:
            parse_family("vars: x\nparams: a\nf1 = x +")
        assert info.value.line == 3

    def test_bad_character_position(self):
        with pytest.raises(FamilySyntaxError) as info:
            parse_family("vars: x\nparams: a\nf1 = x $ a")
        assert (info.value.line, info.value.col) == (3, 8)

    def test_undeclared(self):
        with pytest.raises(FamilySyntaxError, match="undeclared identifier 'z'"):
            parse_family("vars: x\nparams: a\nf1 = x + z")

    def test_nonsquare(self):
        with pytest.raises(FamilySyntaxError, match="nonsquare"):
            parse_family("vars: x, z\nparams: a\nf1 = x - a")

    def test_redeclared(self):
        with pytest.raises(FamilySyntaxError, match="already declared"):
            parse_family("vars: x\nparams: a\nlet x = a\nf1 = x")

    def test_rational_exponent(self):
        with pytest.raises(FamilySyntaxError, match="natural"):
            parse_family("vars: x\nparams: a\nf1 = x^1/2")

    def test_round_trip_files(self):
        for path in (EX1, EX2, LIN):
            F = parse_family(open(path).read())
            G = parse_family(format_family(F))
            assert G.polynomials == F.polynomials and G.context == F.context and G.names == F.names

    @settings(max_examples=100, deadline=None)
    @given(polynomials())
    def test_polynomial_round_trip(self, f):
        assert parse_polynomial(str(f), CTX3) == f

    @settings(max_examples=50, deadline=None)
    @given(polynomials(), polynomials())
    def test_family_round_trip(self, f, g):
        F = FamilySpec(CTX3, (f, g), ("f1", "f2"))
        G = parse_family(format_family(F))
        assert G.polynomials == F.polynomials

    def test_assignment(self):
        assert parse_assignment("a=1, b=-2/3") == {"a": 1, "b": Fraction(-2, 3)}
        with pytest.raises(ValueError):
            parse_assignment("a")


def run(*argv):
    code, out = run_command(list(argv))
    return code, (json.loads(out) if out.strip().startswith("{") else out)


class TestCli:
    def test_discriminant_example1(self):
        code, doc = run("discriminant", EX1)
        assert code == 0
        assert doc["command"] == "discriminant"
        assert set(doc["result"]["raw_factors"]) == {"a", "b", "4*a*c - b^2"}
        assert doc["result"]["generic_count"] == 2
        assert set(doc) == {"command", "family", "result", "timings"}

    def test_discriminant_flags(self):
        code, doc = run("discriminant", EX2, "--squarefree")
        assert code == 0 and doc["result"]["squarefree_factors"] == ["a - 1", "a^2 + 8"]
        assert "raw_factors" not in doc["result"]
        code, doc = run("discriminant", EX2, "--raw")
        assert code == 0 and "squarefree_factors" not in doc["result"]
        assert run("discriminant", EX1, "--squarefree")[0] == 2

    def test_count(self):
        assert run("count", EX2, "--at", "a=2")[1]["result"]["count"] == 2
        assert run("count", EX2, "--at", "a=1")[1]["result"]["count"] == 0
        assert run("count", EX1, "--at", "a=1,b=3,c=2")[1]["result"]["count"] == 2

    def test_gb_and_saturate(self):
        code, doc = run("gb", LIN)
        assert code == 0 and doc["result"]["basis"] == ["x2 - p2", "x1 - p1"]
        code, doc = run("saturate", EX2)
        assert code == 0
        assert doc["result"]["saturated_basis"] == ["x2 - 3", "x1^2 - x1*a - x1 + a"]
        assert doc["result"]["generically_regular"] is True

    def test_specialize(self):
        code, doc = run("specialize", EX2, "--at", "a=2")
        assert code == 0 and doc["result"]["agree"]
        code, doc = run("specialize", EX2, "--at", "a=1")
        assert code == 1 and doc["result"]["saturated_at_q"] == ["1"]
        assert doc["result"]["guard_failure"]["coefficient"]

    def test_solve(self):
        code, doc = run("solve", EX1, "--at", "a=1,b=-2,c=1")
        assert code == 0
        assert doc["result"]["regular_count"] == doc["result"]["symbolic_count"] == 0
        assert doc["result"]["zeros"][0]["multiplicity"] == 2

    def test_track(self):
        code, doc = run("track", EX1, "--from", "a=1,b=3,c=2", "--to", "a=1,b=-5,c=6")
        assert code == 0
        ends = sorted(round(p["end"][0][0], 6) for p in doc["result"]["paths"])
        assert ends == [2, 3]
        code, doc = run("track", EX1, "--from", "a=1,b=3,c=2", "--to", "a=1,b=-2,c=1")
        assert code == 1

    def test_verify(self):
        code, doc = run("verify", EX1, "--trials", "5")
        assert code == 0 and doc["result"]["ok"]

    def test_guard_exit_for_degenerate_family(self, tmp_path):
        f = tmp_path / "flat.fam"
        f.write_text("vars: x\nparams: p1\nf1 = p1*x^2\n")
        assert run("discriminant", str(f))[0] == 1
        assert run("verify", str(f), "--trials", "2")[0] == 1
        g = tmp_path / "zero.fam"
        g.write_text("vars: x\nparams: p1\nf1 = p1\n")
        assert run("saturate", str(g))[0] == 1

    @pytest.mark.parametrize(
        "argv",
        [
            ["count", EX2],
            ["count", EX2, "--at", "b=2"],
            ["count", EX2, "--at", "a=2,b=1"],
            ["count", EX2, "--at", "a=x"],
            ["count", "/nonexistent.fam", "--at", "a=1"],
            ["frobnicate", EX1],
            ["verify", EX1, "--trials", "0"],
        ],
    )
    def test_input_errors(self, argv):
        assert run(*argv)[0] == 2

    def test_syntax_error_file(self, tmp_path):
        f = tmp_path / "bad.fam"
        f.write_text("vars: x\nparams: a\nf1 = x +\n")
        assert run("gb", str(f))[0] == 2

    def test_byte_stable(self):
        for argv in (["discriminant", EX1], ["discriminant", EX2], ["verify", EX2, "--seed", "0"]):
            assert run_command(argv) == run_command(argv)

    def test_timings_opt_in(self):
        assert run("gb", LIN)[1]["timings"] == {}
        assert "total_seconds" in run("gb", LIN, "--timings")[1]["timings"]
