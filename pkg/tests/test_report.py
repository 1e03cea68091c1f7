import json

import pytest

from ckdim.errors import InvalidParameterError
from ckdim.report import SCHEMA, SCHEMA_VERSION, emit_machine, emit_text, parse_report
from ckdim.scenario import CROSSOVER, Scenario
from ckdim.verifier import verify_dimension_hypothesis
from fixtures import CASE2_CROSSOVER, SCENARIO_MATRIX


@pytest.mark.parametrize("scenario", SCENARIO_MATRIX, ids=lambda s: f"case{s.case.number}-{s.mode}")
def test_machine_report_round_trips(scenario):
    verdict = verify_dimension_hypothesis(scenario)
    text = emit_machine(verdict)
    assert parse_report(text) == verdict
    assert emit_machine(parse_report(text)) == text


def test_crossover_document_contents():
    verdict = verify_dimension_hypothesis(Scenario(CASE2_CROSSOVER, 1, CROSSOVER, 20))
    doc = json.loads(emit_machine(verdict))
    assert doc["schema"] == SCHEMA and doc["schema_version"] == SCHEMA_VERSION
    assert doc["verdict"]["n_min"] == 4
    rows = doc["verdict"]["ledger"]["rows"]
    assert [r["n"] for r in rows] == [1, 2, 3, 4]
    assert {r["zx_provenance"] for r in rows} == {"closed-form"}
    assert doc["provenance"]["user_supplied"] == ["R"]
    assert "stamp" not in doc


def test_divergence_document_embeds_chain():
    scenario = next(s for s in SCENARIO_MATRIX if s.case.number == 1 and s.mode == "asymptotic")
    doc = json.loads(emit_machine(verify_dimension_hypothesis(scenario)))
    chain = doc["verdict"]["certificate"]["chain"]
    assert chain[0] == {"by": "base", "larger": "2+sqrt(3)", "smaller": "2"}


def test_stamp_only_when_requested():
    verdict = verify_dimension_hypothesis(Scenario(CASE2_CROSSOVER))
    assert json.loads(emit_machine(verdict, stamp="2026-01-01T00:00:00+00:00"))["stamp"].startswith("2026")
    assert parse_report(emit_machine(verdict, stamp="x")) == verdict


def test_text_report_is_a_table():
    text = emit_text(verify_dimension_hypothesis(Scenario(CASE2_CROSSOVER)))
    assert "N_min = 4" in text
    assert "Selmer upper        6" in text
    lines = text.splitlines()
    header = next(i for i, line in enumerate(lines) if line.startswith("n  dim Z_X"))
    widths = {len(line) for line in lines[header + 1 : header + 6]}
    assert len(widths) == 1


def test_parse_rejects_foreign_documents():
    with pytest.raises(InvalidParameterError):
        parse_report(json.dumps({"schema": "other"}))
    with pytest.raises(InvalidParameterError):
        parse_report(json.dumps({"schema": SCHEMA, "schema_version": 99}))
