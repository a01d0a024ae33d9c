import json

import pytest

from extempore import (
    Session,
    TaskSpec,
    TermValue,
    log_document,
    session_records,
    task_document,
)
from extempore.cli import EXIT_DOMAIN, EXIT_PARSE, EXIT_VALIDATION, main


def write(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


@pytest.fixture()
def fig2_log(tmp_path, mini_tree, mini_lexicon):
    session = Session(mini_tree)
    session.utter("Democrat", mini_lexicon)
    session.utter("Senate", mini_lexicon)
    session.click("Georgia")
    doc = log_document(mini_tree, session_records(session))
    return write(tmp_path / "fig2.json", doc)


def test_validate_bundled_fixture(capsys):
    assert main(["validate", "--site", "mini-congress", "--vocab", "mini-congress"]) == 0
    out = capsys.readouterr().out
    assert "8 pages" in out and "OK" in out


def test_validate_rejects_duplicate_labels(tmp_path, mini_doc, capsys):
    doc = json.loads(json.dumps(mini_doc))
    doc["root"]["edges"].append(doc["root"]["edges"][0])
    path = write(tmp_path / "bad.json", doc)
    assert main(["validate", "--site", path]) == EXIT_VALIDATION
    err = capsys.readouterr().err
    assert "root" in err and "Alaska" in err


def test_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["validate", "--site", str(path)]) == EXIT_PARSE
    assert "parse error" in capsys.readouterr().err


def test_classify_tokens(capsys):
    assert main(["classify", "--tokens", "OOI"]) == 0
    assert capsys.readouterr().out.strip() == "OI"
    assert main(["classify", "--tokens", "OIO"]) == 0
    assert capsys.readouterr().out.strip() == "M OIO"


def test_classify_log(fig2_log, capsys):
    assert main(["classify", "--site", "mini-congress", "--vocab", "mini-congress",
                 "--log", fig2_log]) == 0
    assert capsys.readouterr().out.strip() == "OI"


def test_replay_prints_tokens(fig2_log, capsys):
    assert main(["replay", "--site", "mini-congress", "--log", fig2_log]) == 0
    assert capsys.readouterr().out.strip() == "OOI"


def test_replay_records_format(fig2_log, capsys):
    assert main(["replay", "--site", "mini-congress", "--log", fig2_log,
                 "--format", "records"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["tokens"] == ["O", "O", "I"]
    assert body["per_event"] == [["O"], ["O"], ["I"]]


def test_interact_scripted_session(tmp_path, capsys):
    events = {
        "format": "extempore-log/1",
        "site": "mini-congress",
        "events": [
            {"step": 1, "kind": "utterance", "payload": "Democratic Senators"},
            {"step": 2, "kind": "click", "payload": "Georgia"},
        ],
    }
    path = write(tmp_path / "script.json", events)
    assert main(["interact", "--site", "mini-congress", "--vocab", "mini-congress",
                 "--log", path]) == 0
    out = capsys.readouterr().out
    assert "links ['Georgia']" in out
    assert "terminal GA-SS" in out


def test_interact_is_deterministic(tmp_path, capsys):
    events = {
        "format": "extempore-log/1",
        "site": "mini-congress",
        "events": [{"step": 1, "kind": "utterance", "payload": "Democrat"}],
    }
    path = write(tmp_path / "script.json", events)
    outputs = []
    for _ in range(2):
        assert main(["interact", "--site", "mini-congress", "--vocab", "mini-congress",
                     "--log", path, "--format", "records"]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_mincount_district_twenty(tmp_path, capsys):
    task = TaskSpec(kind="top-level-set", constraints=(TermValue("seat", "District 20"),))
    path = write(tmp_path / "task.json", task_document(task))
    assert main(["mincount", "--site", "full-congress", "--task", path,
                 "--format", "records"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["out-of-turn-allowed"] == 1
    assert body["in-turn-only"] > 4


def test_orient(tmp_path, capsys):
    task = TaskSpec(kind="top-level-set", constraints=(TermValue("seat", "District 20"),))
    path = write(tmp_path / "task.json", task_document(task))
    assert main(["orient", "--site", "full-congress", "--task", path]) == 0
    assert capsys.readouterr().out.strip() == "out-of-turn-oriented"


def test_curve_output(fig2_log, capsys):
    assert main(["curve", "--site", "mini-congress", "--log", fig2_log]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines == ["0 8", "1 3", "2 1", "3 1"]


def test_report_table(tmp_path, mini_tree, mini_lexicon, capsys):
    task = TaskSpec(
        kind="top-level-set",
        constraints=(TermValue("party", "Democrat"), TermValue("branch", "Senate")),
    )
    task_path = write(tmp_path / "task.json", task_document(task))
    session = Session(mini_tree).utter("Democrat", mini_lexicon).utter("Senate", mini_lexicon)
    log_path = write(tmp_path / "log.json", log_document(mini_tree, session_records(session)))
    assert main(["report", "--site", "mini-congress", "--vocab", "mini-congress",
                 "--task", task_path, "--log", log_path, "--format", "records"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["classes"]["O"] == 1
    assert body["orientation"]["out-of-turn-oriented"]["other"] == 1


def test_domain_error_exit_code(tmp_path, capsys):
    bad_log = {
        "format": "extempore-log/1",
        "site": "mini-congress",
        "events": [{"step": 1, "kind": "click", "payload": "Mars"}],
    }
    path = write(tmp_path / "bad.json", bad_log)
    assert main(["replay", "--site", "mini-congress", "--log", path]) == EXIT_DOMAIN
    assert "replay" in capsys.readouterr().err
