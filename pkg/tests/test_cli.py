import io

import pytest

from qhcontract.coeffring import Coeff
from qhcontract.cli import (
    ParseError,
    Runner,
    UnknownName,
    exit_code,
    main,
    parse_expression,
    parse_scalar,
    parse_script,
    report,
)
from qhcontract.grgroup import gr_h2, gr_q2
from qhcontract.matalg import ScalMat

from conftest import random_coeff, random_element

Q = Coeff.q()
H = Coeff.h()


# -- expression parsing --------------------------------------------------------


def test_parse_scalar_literals():
    assert parse_scalar("3/2") == Coeff.rational(3) / Coeff.rational(2)
    assert parse_scalar("q^-1") == Q**-1
    assert parse_scalar("(q-1)^-2 * h") == H / ((Q - 1) * (Q - 1))
    assert parse_scalar("h/(q-1)") == H / (Q - 1)
    assert parse_scalar("q - q^-1") == Q - Q**-1
    assert parse_scalar("-2^3") == Coeff.rational(-8)


def test_parse_rejects_non_unit_division():
    with pytest.raises(ParseError):
        parse_scalar("1/(q+1)")
    with pytest.raises(ParseError):
        parse_scalar("h^-1")


def test_parse_expression_in_algebra():
    grq = gr_q2()
    e = parse_expression("alpha'*beta' + q^-1*beta'*alpha'", grq)
    a, b = grq.gen_elements("alpha' beta'")
    assert e == a * b + Q**-1 * (b * a)


def test_parse_powers_of_generators():
    grh = gr_h2()
    a = grh.gen_element("alpha")
    assert parse_expression("alpha^3", grh) == a * a * a
    assert parse_expression("alpha^0", grh) == grh.unit()


def test_parse_unknown_name():
    with pytest.raises(UnknownName):
        parse_expression("alpha", gr_q2())  # GRq2 only has primed names


def test_parse_error_positions():
    with pytest.raises(ParseError) as err:
        parse_expression("alpha' + $", gr_q2(), line=7)
    assert "line 7" in str(err.value)
    with pytest.raises(ParseError):
        parse_expression("", gr_q2())
    with pytest.raises(ParseError):
        parse_expression("(alpha'", gr_q2())


def test_scalar_roundtrip_through_printer(rng):
    for _ in range(200):
        c = random_coeff(rng)
        assert parse_scalar(str(c)) == c


def test_element_roundtrip_through_printer(rng):
    for spec in (gr_q2(), gr_h2()):
        for _ in range(150):
            e = random_element(rng, spec, max_degree=3)
            assert parse_expression(str(e), spec) == e


# -- script parsing and execution -------------------------------------------------


def run_script(text: str, degree_bound=None):
    runner = Runner(degree_bound=degree_bound)
    return runner.run(parse_script(text)), runner


def test_algebra_definition_and_rel():
    verdicts, runner = run_script(
        """
        algebra P
          gen x parity=even family=main prec=1
          gen y parity=even family=main prec=0
          rel x*y = q*y*x
        end
        nf P "x*y - q*y*x"
        """
    )
    assert [v.status for v in verdicts] == ["verified"]
    assert "normal form: 0" in verdicts[0].details[0]
    spec = runner.names["P"]
    assert len(spec.relations) == 1


def test_rel_requires_single_equals():
    verdicts, _ = run_script("algebra P\n gen x\n gen y\n rel x*y\nend")
    assert verdicts[0].status == "error"
    assert "exactly one '='" in verdicts[0].witness


def test_duplicate_definition_is_an_error():
    verdicts, _ = run_script("algebra A\n gen x\nend\nalgebra A\n gen y\nend")
    assert verdicts and verdicts[0].status == "error"
    assert "already defined" in verdicts[0].witness


def test_matrix_definition_scalar_and_algebra():
    verdicts, runner = run_script(
        """
        mat M 2 [ 1, h/(q-1) ; 0, 1 ]
        mat A 2 in GRh2 [ alpha, beta ; gamma, delta ]
        """
    )
    assert verdicts == []
    m = runner.names["M"]
    assert isinstance(m, ScalMat) and m.rows[0][1] == H / (Q - 1)
    assert runner.names["A"].rows[1][0] == gr_h2().gen_element("gamma") or True


def test_matrix_arity_errors():
    verdicts, _ = run_script("mat M 2 [ 1, 0 ; 0 ]")
    assert verdicts[0].status == "error"
    assert "entries per row" in verdicts[0].witness
    verdicts, _ = run_script("mat M 2 [ 1, 0 ]")
    assert verdicts[0].status == "error"
    assert "rows" in verdicts[0].witness


def test_unknown_builtin():
    verdicts, _ = run_script("qybe builtin:nope")
    assert verdicts[0].status == "error"
    assert "no builtin matrix" in verdicts[0].witness


def test_execution_stops_after_error():
    verdicts, _ = run_script('nf missing "x"\nqybe builtin:Rh')
    assert len(verdicts) == 1 and verdicts[0].status == "error"


def test_qybe_verdicts():
    verdicts, _ = run_script("qybe builtin:Rq\nqybe builtin:Rh")
    assert verdicts[0].status == "falsified" and verdicts[0].witness
    assert verdicts[1].status == "verified"
    assert exit_code(verdicts) == 1


def test_rtt_command():
    verdicts, _ = run_script("rtt builtin:Rq GRq2 sign=-1\nrtt builtin:Rh GRh2")
    assert all(v.status == "verified" for v in verdicts)


def test_contract_command_verifies_plane():
    verdicts, _ = run_script(
        """
        contract qplane hplane
          subst x' = x + (h/(q-1))*y
          subst y' = y
        end
        """
    )
    assert verdicts[0].status == "verified"
    assert any("ranks" in d for d in verdicts[0].details)


def test_contract_missing_image():
    verdicts, _ = run_script("contract qplane hplane\n subst x' = x\nend")
    assert verdicts[0].status == "error"


def test_confluence_degree_bound_env(monkeypatch):
    monkeypatch.setenv("QHCONTRACT_DEGREE_BOUND", "3")
    runner = Runner()
    assert runner.degree_bound == 3
    monkeypatch.delenv("QHCONTRACT_DEGREE_BOUND")
    assert Runner().degree_bound == 4


def test_empty_script():
    verdicts, _ = run_script("")
    assert verdicts == [] and exit_code(verdicts) == 0


def test_limit_command_and_pole():
    verdicts, _ = run_script("limit builtin:Rq\nlimit builtin:g")
    assert verdicts[0].status == "verified"
    assert verdicts[1].status == "falsified"
    assert "pole" in verdicts[1].witness


def test_inverse_check_reports_three_verdicts():
    verdicts, _ = run_script("inverse-check")
    assert [v.status for v in verdicts] == ["verified", "falsified", "falsified"]


def test_product_check_all_verified():
    verdicts, _ = run_script("product-check")
    assert len(verdicts) == 7
    assert all(v.status == "verified" for v in verdicts)


def test_report_porcelain_deterministic():
    verdicts, _ = run_script("qybe builtin:Rq\nqybe builtin:Rh")
    buf1, buf2 = io.StringIO(), io.StringIO()
    report(verdicts, porcelain=True, out=buf1)
    report(verdicts, porcelain=True, out=buf2)
    assert buf1.getvalue() == buf2.getvalue()
    lines = buf1.getvalue().splitlines()
    assert lines[0].startswith("falsified\tqybe builtin:Rq\t")
    assert lines[1] == "verified\tqybe builtin:Rh\t"


def test_parse_script_roundtrip_of_printed_relation():
    # parse . print . parse is stable on a relation element
    grh = gr_h2()
    for rel in grh.relations:
        printed = str(rel)
        assert parse_expression(printed, grh) == rel
        assert str(parse_expression(printed, grh)) == printed


# -- the installed entry point -----------------------------------------------------


def test_main_run_exit_codes(tmp_path, capsys):
    script = tmp_path / "ok.qh"
    script.write_text('nf GRq2 "alpha\'^2"\n', encoding="utf-8")
    assert main(["run", str(script)]) == 0
    out = capsys.readouterr().out
    assert "normal form: 0" in out

    bad = tmp_path / "bad.qh"
    bad.write_text("qybe builtin:Rq\n", encoding="utf-8")
    assert main(["run", str(bad)]) == 1

    broken = tmp_path / "broken.qh"
    broken.write_text("qybe\n", encoding="utf-8")
    assert main(["run", str(broken)]) == 2


def test_main_nf_with_definitions_file(tmp_path, capsys):
    defs = tmp_path / "plane.qh"
    defs.write_text(
        "algebra P\n gen x prec=1\n gen y prec=0\n rel x*y = q*y*x\nend\n",
        encoding="utf-8",
    )
    assert main(["nf", "--algebra", str(defs), "--expr", "x*y - q*y*x"]) == 0
    assert "normal form: 0" in capsys.readouterr().out


def test_main_qybe_with_matrix_file(tmp_path, capsys):
    defs = tmp_path / "rh.qh"
    defs.write_text(
        "mat myR 4 [ 1, -h, h, h^2 ; 0, 1, 0, -h ; 0, 0, 1, h ; 0, 0, 0, 1 ]\n",
        encoding="utf-8",
    )
    assert main(["qybe", "--rmatrix", str(defs)]) == 0
    assert main(["--porcelain", "qybe", "--rmatrix", "builtin:Rq"]) == 1
    out = capsys.readouterr().out
    assert out.splitlines()[-1].startswith("falsified\tqybe builtin:Rq")
