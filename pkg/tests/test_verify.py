from twistkh.codes import parse
from twistkh.corpus import fixture, fixtures, parse_corpus
from twistkh.verify import CHECKS, verify_corpus, verify_diagram


def test_fixtures_load():
    names = [e.name for e in fixtures()]
    assert "virtual trefoil" in names and len(names) == 10
    assert fixture("figure-eight").n == 4


def test_parse_corpus_names_and_comments():
    entries = parse_corpus("# header\nO1+U1+  # kink\n\n@1\n")
    assert [(e.name, e.line) for e in entries] == [("kink", 2), ("@1", 4)]


def test_verify_diagram_all_checks():
    rep = verify_diagram(parse("O1+O2+U1+U2+"), "vt")
    assert [r.check for r in rep.results] == list(CHECKS)
    assert rep.passed and rep.genus == 1 and rep.orientable is False
    assert rep.thickness.bound == 3


def test_negative_control_reports_violation():
    rep = verify_diagram(parse("O1-U2-O3+U4+O2-U1-O4+U3+"), twisted=False)
    assert not rep.passed
    assert rep.results[0].check == "d2" and "AnticommutativityViolation" in rep.results[0].detail


def test_parallel_matches_serial():
    items = [(e.name, e.diagram) for e in fixtures()[:6]]
    a = verify_corpus(items, ("d2", "euler", "uct"), jobs=1).to_json()
    b = verify_corpus(items, ("d2", "euler", "uct"), jobs=2).to_json()
    assert a == b
