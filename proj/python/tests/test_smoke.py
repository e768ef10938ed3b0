import hpt


def test_corpus_checks():
    report = hpt.corpus()
    assert report["assertions_failed"] == 0
    assert report["declarations_checked"] >= 25
    assert not [d for d in report["diagnostics"] if d["severity"] == "error"]


def test_manifest_anchors():
    anchors = [e["anchor"] for e in hpt.manifest()]
    assert any("Theorem (Eckmann-Hilton)" in a for a in anchors)
    assert any("Theorem (Syllepsis)" in a for a in anchors)


def test_check_text_reports_position():
    report = hpt.check_text("axiom A : Type\ndef f : A := A\n", "t.hpt")
    assert report["declarations_checked"] == 1
    [diag] = report["diagnostics"]
    assert (diag["file"], diag["line"], diag["col"]) == ("t.hpt", 2, 14)
    assert diag["message"] == "type mismatch"


def test_eval():
    report = hpt.eval_expr("inv (refl star)")
    assert report["value"] == "refl star"
    assert report["type"] == "star = star"
