import pytest

from ptarith.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_encode_seq_golden(capsys):
    assert run(capsys, "encode-seq", "3", "4", "5") == (0, "0b11101101101011011111\n", "")
    code, out, _ = run(capsys, "encode-seq", "--decimal", "3", "4", "5")
    assert out.strip() == str(0b11101101101011011111)


def test_decode_seq(capsys):
    code, out, _ = run(capsys, "decode-seq", "0b11101101101011011111")
    assert code == 0 and "3" in out and "5" in out


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["encode-seq"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_domain_error_exits_1(capsys):
    code, _, err = run(capsys, "run", "no-such-machine", "3")
    assert code == 1 and err.startswith("error:")
    code, _, err = run(capsys, "sat", "--code", "5")
    assert code == 1


def test_run_corpus_machine(capsys):
    code, out, _ = run(capsys, "run", "accept-all", "3")
    assert code == 0 and "accept" in out


def test_tableau_cnf_then_sat(capsys, tmp_path):
    code, out, _ = run(capsys, "tableau", "reject-all", "--n", "2", "--emit", "cnf", "--force-accept")
    assert code == 0 and "p cnf" in out
    f = tmp_path / "r.cnf"
    f.write_text(out)
    assert run(capsys, "sat", str(f))[1].strip() == "UNSAT"
    code, out, _ = run(capsys, "tableau", "accept-all", "--n", "2", "--emit", "cnf", "--force-accept")
    f.write_text(out)
    assert run(capsys, "sat", str(f))[1].startswith("SAT")


def test_check_proof_exit_codes(capsys):
    assert run(capsys, "check-proof", '(node "0=0" axiom)', "--target", "0=0")[0] == 0
    code, out, _ = run(capsys, "check-proof", '(node "0=0" axiom)', "--target", "0=S(0)")
    assert code == 1 and out.startswith("reject")


def test_decide_and_scan(capsys):
    code, out, _ = run(capsys, "decide", "accept-all-program", "3", "--family", "refl")
    assert code == 0 and "CA=1" in out
    code, out, _ = run(capsys, "scan", "axiom-prover-even", "--mode", "prove", "--stop", "4")
    assert code == 0 and "a,verdict,truth,CA,CR,CD" in out


def test_quine_check(capsys):
    code, out, _ = run(capsys, "quine", "template-second", "--check", "1", "2")
    assert code == 0 and out.count("holds") == 2


def test_pnp_sentence_classify(capsys):
    code, out, _ = run(capsys, "pnp-sentence", "--classify")
    assert code == 0 and "DeltaP" in out


def test_config_unknown_key_rejected(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"tableau_cap": 8, "colour": "red"}')
    code, _, err = run(capsys, "--config", str(cfg), "encode-seq", "1")
    assert code == 1 and "colour" in err


def test_config_caps_must_be_positive(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"verifier_fuel": 0}')
    assert run(capsys, "--config", str(cfg), "encode-seq", "1")[0] == 1


def test_config_from_environment_sets_tableau_cap(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"tableau_cap": 2}')
    monkeypatch.setenv("PTARITH_CONFIG", str(cfg))
    code, _, err = run(capsys, "tableau", "parity", "--n", "3")
    assert code == 1 and "error" in err
    assert run(capsys, "tableau", "parity", "--n", "3", "--cap", "9")[0] == 0


def test_config_corpus_paths(capsys, tmp_path):
    (tmp_path / "mine.tm").write_text(
        "states: q0 a r\nstart: q0\naccept: a\nreject: r\nalphabet: 0 1 _\n"
        "q0 0 -> a 0 R\nq0 1 -> a 1 R\nq0 _ -> a _ R\n")
    cfg = tmp_path / "c.json"
    cfg.write_text('{"corpus_paths": ["%s"]}' % tmp_path)
    code, out, _ = run(capsys, "--config", str(cfg), "run", "mine", "1")
    assert code == 0 and out.startswith("accept")
