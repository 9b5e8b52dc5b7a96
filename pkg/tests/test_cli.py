from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbfrob.cli import format_config, main, parse_input, run
from orbfrob.errors import InputSyntaxError, UndeclaredVariable, WeightMismatch

SESSIONS = Path(__file__).resolve().parent.parent / "sessions"


def session(name: str) -> str:
    return str(SESSIONS / name)


def cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", ["a3.session", "d5_odd.session", "d5_even.session"])
def test_golden_sessions_are_canonical(name):
    text = (SESSIONS / name).read_text()
    assert format_config(parse_input(text)) == text


def test_build_a3(capsys):
    code, out, _ = cli(capsys, "build", session("a3.session"))
    assert code == 0
    assert out.rstrip().endswith("build: PASS")
    assert "FAIL" not in out


def test_series_a3(capsys):
    code, out, _ = cli(capsys, "series", session("a3.session"))
    assert code == 0
    assert "A_e: 1 + t^{1/4} + t^{1/2}" in out


def test_dn_recognition(capsys):
    code, out, _ = cli(capsys, "invariants", session("d5_odd.session"))
    assert code == 0 and "invariants ≅ D_5: PASS" in out
    code, out, _ = cli(capsys, "invariants", session("d5_even.session"))
    assert code == 0 and "invariants ≅ A_4: PASS" in out


def test_output_is_deterministic(capsys):
    first = cli(capsys, "build", session("d5_odd.session"))
    second = cli(capsys, "build", session("d5_odd.session"))
    assert first == second


def test_format_command(capsys):
    code, out, _ = cli(capsys, "format", session("a3.session"))
    assert code == 0
    assert out == (SESSIONS / "a3.session").read_text()


def test_dump_then_check(tmp_path, capsys):
    dump = tmp_path / "a3.dump"
    code, _, _ = cli(capsys, "build", session("a3.session"), "--dump", str(dump))
    assert code == 0
    code, out, _ = cli(capsys, "check", str(dump))
    assert code == 0 and "FAIL" not in out
    code, out, _ = cli(capsys, "tqft-check", str(dump), "--from-dump")
    assert code == 0


def test_corrupted_dump_fails_with_witness(tmp_path, capsys):
    dump = tmp_path / "a3.dump"
    cli(capsys, "build", session("a3.session"), "--dump", str(dump))
    lines = dump.read_text().splitlines()
    # give the metric a second, wrongly graded entry
    k = next(i for i, l in enumerate(lines) if l.startswith("eta "))
    lines.insert(k, "eta 0 0 1")
    bad = tmp_path / "bad.dump"
    bad.write_text("\n".join(lines) + "\n")
    code, out, _ = cli(capsys, "check", str(bad))
    assert code == 3
    assert "FAIL" in out and "witness=" in out


def write(tmp_path, text: str) -> str:
    p = tmp_path / "s.session"
    p.write_text(text)
    return str(p)


BASE = "vars z\nweights 1/4\npoly f = z^4\n"


@pytest.mark.parametrize("text,code", [
    ("", 2),
    ("vars z\nweights 1/4 1/2\npoly f = z^4\n", 2),
    ("vars z\nweights 1/4\npoly f = z^4 + q\n", 2),
    (BASE + "group j = [[w(1/4)]\n", 2),
    (BASE + "group j = [[w(1/3)]]\n", 3),
    (BASE + "parity k = odd\n", 2),
    (BASE + "frobnicate\n", 2),
])
def test_exit_codes(tmp_path, capsys, text, code):
    got, _, err = cli(capsys, "build", write(tmp_path, text))
    assert got == code
    assert err.startswith("error: ")


def test_resource_limit_exit(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ORBFROB_MAX_GROUP", "2")
    got, _, err = cli(capsys, "build", session("a3.session"))
    assert got == 4 and "NotFinite" in err


def test_parse_errors_carry_positions():
    with pytest.raises(InputSyntaxError) as exc:
        parse_input(BASE + "group j = [[1, 2]]\n")
    assert exc.value.line == 4
    with pytest.raises(UndeclaredVariable) as exc:
        parse_input("vars z\nweights 1/4\npoly f = z^4 + 2*y\n")
    assert exc.value.witness[0] == "y"
    assert exc.value.witness[1] == 3
    with pytest.raises(WeightMismatch):
        parse_input("vars x y\nweights 1/3\npoly f = x^3 + y^3\n")
    with pytest.raises(InputSyntaxError) as exc:
        parse_input(BASE + "vars y\n")
    assert exc.value.line == 4


def test_run_without_command_builds():
    res = run(parse_input((SESSIONS / "a3.session").read_text()))
    assert res.status == 0
    assert res.dump.startswith("# orbfrob gfrobenius dump v1")


scalars = st.sampled_from(["1", "-1", "w(1/4)", "w(3/8)", "2*w(1/3)+1", "i", "1/2"])
gens = st.lists(st.sampled_from(["j", "k", "s"]), unique=True, max_size=2)


@st.composite
def sessions(draw):
    lines = [f"field {draw(st.sampled_from(['auto', '24', '48']))}",
             "vars x y", "weights 1/3 1/3"]
    c = draw(scalars)
    lines.append(f"poly f = x^3 + {'' if c == '1' else '(' + c + ')*'}y^3")
    names = draw(gens)
    for g in names:
        a, b = draw(scalars), draw(scalars)
        lines.append(f"group {g} = [[{a}, 0], [0,{b}]]")
    for g in names:
        if draw(st.booleans()):
            lines.append(f"parity {g} = {draw(st.sampled_from(['even', 'odd']))}")
    lines.append(draw(st.sampled_from(["torsion trivial", "torsion table(e, e: 1)"])))
    lines.append(draw(st.sampled_from(["cocycle closed", "cocycle solve", "cocycle table(e, e: 0:1)"])))
    if draw(st.booleans()):
        lines.append(f"command {draw(st.sampled_from(['build', 'series', 'dual']))}")
    if draw(st.booleans()):
        lines.append("verbose 2")
    return "\n".join(lines) + "\n"


@given(sessions())
def test_format_round_trip_is_byte_identical(text):
    cfg = parse_input(text)
    canon = format_config(cfg)
    again = parse_input(canon)
    assert again == cfg
    assert format_config(again) == canon
