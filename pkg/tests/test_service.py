import json
import threading

import pytest
from fastapi.testclient import TestClient

from extempore import (
    Session,
    build_lexicon,
    mini_vocab_document,
    parse_fds,
    parse_log_document,
    replay,
)
from extempore.service import SiteEntry, create_app


@pytest.fixture()
def client(mini_doc):
    app = create_app([SiteEntry.from_documents(mini_doc, mini_vocab_document())])
    with TestClient(app) as client:
        yield client


def _session(client, site_id="mini-congress"):
    response = client.post("/sessions", json={"siteId": site_id})
    assert response.status_code == 200
    body = response.json()
    return body["sessionId"], body["summary"]


def test_list_sites(client):
    body = client.get("/sites").json()
    assert body == [{
        "id": "mini-congress",
        "title": "Mini congressional directory",
        "facets": ["state", "branch", "party", "seat"],
        "leafCount": 8,
    }]


def test_default_catalog_serves_both_fixtures():
    with TestClient(create_app()) as client:
        sites = {s["id"]: s["leafCount"] for s in client.get("/sites").json()}
        assert sites == {"mini-congress": 8, "full-congress": 540}


def test_duplicate_site_ids_rejected(mini_doc):
    entry = SiteEntry.from_documents(mini_doc)
    with pytest.raises(ValueError):
        create_app([entry, entry])


def test_create_and_get_session(client):
    sid, summary = _session(client)
    assert summary["remainingLeafCount"] == 8
    assert summary["solicits"] == "state"
    assert client.get(f"/sessions/{sid}").json() == summary


def test_utterance_prunes_and_tokenizes(client):
    sid, _ = _session(client)
    body = client.post(f"/sessions/{sid}/utterance", json={"text": "Democrat"}).json()
    assert body["summary"]["links"] == ["American Samoa", "Georgia"]
    assert body["tokens"] == ["O"]


def test_unknown_term_is_422_with_suggestions(client):
    sid, _ = _session(client)
    response = client.post(f"/sessions/{sid}/utterance", json={"text": "Martian"})
    assert response.status_code == 422
    error = response.json()["error"]
    assert error["code"] == "unknown-term"
    assert "suggestions" in error["details"]


def test_no_results_and_conflict_codes(client):
    sid, _ = _session(client)
    client.post(f"/sessions/{sid}/utterance", json={"text": "Alaska"})
    response = client.post(f"/sessions/{sid}/utterance", json={"text": "Democrat"})
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "no-results"
    response = client.post(f"/sessions/{sid}/utterance", json={"text": "Georgia"})
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "conflict"


def test_click_flow_and_unknown_label(client):
    sid, _ = _session(client)
    summary = client.post(f"/sessions/{sid}/click", json={"label": "Georgia"}).json()
    assert summary["solicits"] == "branch"
    response = client.post(f"/sessions/{sid}/click", json={"label": "Mars"})
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "unknown-label"


def test_back_endpoint_and_at_start(client):
    sid, fresh = _session(client)
    client.post(f"/sessions/{sid}/click", json={"label": "Georgia"})
    assert client.post(f"/sessions/{sid}/back").json() == fresh
    response = client.post(f"/sessions/{sid}/back")
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "at-start"


def test_what_may_i_say_is_idempotent_read(client):
    sid, _ = _session(client)
    first = client.get(f"/sessions/{sid}/what-may-i-say").json()
    assert first["state"] == ["Alaska", "American Samoa", "Georgia"]
    assert client.get(f"/sessions/{sid}/what-may-i-say").json() == first
    # reads must not have logged events
    log = client.get(f"/sessions/{sid}/log").json()
    assert log["events"] == []


def test_log_endpoint_document(client):
    sid, _ = _session(client)
    client.post(f"/sessions/{sid}/utterance", json={"text": "Democratic Senators"})
    client.post(f"/sessions/{sid}/click", json={"label": "Georgia"})
    log = client.get(f"/sessions/{sid}/log").json()
    assert log["format"] == "extempore-log/1"
    assert [e["mode_tokens"] for e in log["events"]] == [["O", "O"], ["I"]]


def test_unknown_session_and_site_are_404(client):
    assert client.get("/sessions/nope").status_code == 404
    assert client.get("/sessions/nope").json()["error"]["code"] == "unknown-session"
    response = client.post("/sessions", json={"siteId": "nope"})
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "unknown-site"


def test_malformed_body_is_400(client):
    sid, _ = _session(client)
    assert client.post(f"/sessions/{sid}/click", json={"wrong": 1}).status_code == 400
    assert client.post("/sessions", json={}).status_code == 400


def test_click_at_terminal_is_422(client):
    sid, _ = _session(client)
    assert client.post(f"/sessions/{sid}/click", json={"label": "American Samoa"}).json()["terminal"]
    response = client.post(f"/sessions/{sid}/click", json={"label": "House"})
    assert response.status_code == 422
    assert response.json()["error"]["code"] == "terminal"


def test_service_log_replays_through_the_analysis_toolkit(client, mini_tree):
    # logs are interchangeable: a document emitted over the wire replays
    # offline to the same tokens it carries
    sid, _ = _session(client)
    client.post(f"/sessions/{sid}/utterance", json={"text": "Democratic Senators"})
    client.post(f"/sessions/{sid}/click", json={"label": "Georgia"})
    document = client.get(f"/sessions/{sid}/log").json()
    records = parse_log_document(document)
    result = replay(mini_tree, records)
    assert [e["mode_tokens"] for e in document["events"]] == result.tokens_per_event
    assert result.session.summary() == client.get(f"/sessions/{sid}").json()


def test_parallel_sessions_do_not_interfere(client):
    sids = [_session(client)[0] for _ in range(6)]
    scripts = [
        ["Democrat", "Senate"],
        ["Republican"],
        ["Junior"],
        ["Alaska"],
        ["Georgia", "House"],
        ["Delegate"],
    ]
    errors = []

    def drive(sid, script):
        try:
            for text in script:
                response = client.post(f"/sessions/{sid}/utterance", json={"text": text})
                assert response.status_code in (200, 422)
        except Exception as exc:  # noqa: BLE001
            errors.append(exc)

    threads = [
        threading.Thread(target=drive, args=(sid, script))
        for sid, script in zip(sids, scripts)
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert errors == []
    # each session saw only its own constraints
    first = client.get(f"/sessions/{sids[0]}").json()
    assert [c["value"] for c in first["constraints"]] == ["Democrat", "Senate"]
    second = client.get(f"/sessions/{sids[1]}").json()
    assert [c["value"] for c in second["constraints"]] == ["Republican"]


def test_session_expiry(mini_doc):
    now = [0.0]
    app = create_app(
        [SiteEntry.from_documents(mini_doc, mini_vocab_document())],
        idle_seconds=60,
        clock=lambda: now[0],
    )
    with TestClient(app) as client:
        sid, _ = _session(client)
        now[0] = 30.0
        assert client.get(f"/sessions/{sid}").status_code == 200
        now[0] = 120.0  # the access above refreshed the slot at t=30
        assert client.get(f"/sessions/{sid}").status_code == 404


def test_api_matches_direct_engine(client, mini_tree):
    vocab = mini_vocab_document()
    lexicon = build_lexicon(mini_tree, vocab)
    fds = parse_fds(mini_tree, vocab)
    sid, summary = _session(client)
    engine = Session(mini_tree)
    assert json.dumps(summary, sort_keys=True) == json.dumps(engine.summary(), sort_keys=True)
    script = [
        ("utterance", "Democrat"),
        ("utterance", "Senate"),
        ("click", "Georgia"),
        ("back", None),
    ]
    for kind, payload in script:
        if kind == "utterance":
            response = client.post(f"/sessions/{sid}/utterance", json={"text": payload})
            api_summary = response.json()["summary"]
            engine.utter(payload, lexicon, fds)
        elif kind == "click":
            api_summary = client.post(f"/sessions/{sid}/click", json={"label": payload}).json()
            engine.click(payload)
        else:
            api_summary = client.post(f"/sessions/{sid}/back").json()
            engine.back()
        assert json.dumps(api_summary, sort_keys=True) == json.dumps(
            engine.summary(), sort_keys=True
        )
