import json

import pytest

from conftest import e
from horoboundary import (
    ConeClass,
    ConeVector,
    DiscPoint,
    DomainError,
    InputError,
    PointSequence,
    SparseVector,
    classify_cone,
    validate_params,
)
from horoboundary.experiments import (
    ExperimentConfig,
    GeneratorSpec,
    ToleranceProfile,
    default_probes,
    parse_vector_file,
    read_terms,
    run_convergence,
    run_identity_suite,
    term_lines,
)


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return p

    return _write


class TestParse:
    def test_sparse(self, write):
        assert parse_vector_file(write("a.json", '{"1": 0.5}')) == e(1, 0.5)

    def test_cone(self, write):
        u = parse_vector_file(write("u.json", '{"lambda": 1.0, "spatial": {"2": 0.3}}'))
        assert isinstance(u, ConeVector)
        assert classify_cone(u) is ConeClass.INTERIOR

    def test_disc_outside(self, write):
        with pytest.raises(DomainError, match="a.json"):
            parse_vector_file(write("a.json", '{"1": 1.2}'), "disc")

    def test_malformed_reports_position(self, write):
        with pytest.raises(InputError, match="line 2"):
            parse_vector_file(write("a.json", '{"1": 0.5,\n "2": }'))

    def test_non_finite(self, write):
        with pytest.raises(InputError, match="non-finite"):
            parse_vector_file(write("a.json", '{"1": NaN}'))
        with pytest.raises(InputError, match="non-finite"):
            parse_vector_file(write("a.json", '{"lambda": Infinity}'))

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            parse_vector_file(tmp_path / "nope.json")

    def test_field_context(self, write):
        with pytest.raises(InputError, match="'x'"):
            parse_vector_file(write("a.json", '{"x": 0.5}'))

    def test_terms_round_trip(self, write):
        seq = GeneratorSpec("drift", e(1, 0.3), 0.8, 10).build()
        path = write("t.jsonl", term_lines(seq, 6))
        terms = read_terms(path)
        assert [n for n, _ in terms] == list(range(1, 7))
        assert all(p == seq.term(n) for n, p in terms)

    def test_terms_line_context(self, write):
        with pytest.raises(DomainError, match=":2"):
            read_terms(write("t.jsonl", '{"1": 0.5}\n{"1": 1.5}\n'))
        with pytest.raises(InputError, match="consecutive"):
            read_terms(write("t.jsonl", '{"n": 1, "1": 0.5}\n{"n": 3, "1": 0.5}\n'))


class TestProfile:
    def test_partial_override(self):
        tp = ToleranceProfile.from_json({"triangle": 1e-8})
        assert tp.triangle == 1e-8 and tp.gauge_rel == 1e-9

    @pytest.mark.parametrize("bad", [{"nope": 1.0}, {"triangle": -1.0}, {"cone_tol": 0.0}, [1]])
    def test_rejects(self, bad):
        with pytest.raises(InputError):
            ToleranceProfile.from_json(bad)

    def test_config_validation(self):
        with pytest.raises(InputError):
            ExperimentConfig(output_format="xml")
        with pytest.raises(InputError):
            ExperimentConfig(probes=[ConeVector(2.0)])


class TestConvergence:
    def test_drift_is_exact(self):
        cfg = ExperimentConfig(n_max=60)
        rep = run_convergence(cfg, GeneratorSpec("drift", e(1, 0.3), 0.8, 10))
        assert rep.passed
        assert max(r.sup_error for r in rep.rows) <= 1e-13
        assert [r.n for r in rep.rows] == list(range(1, 61))

    def test_boundary_approach(self):
        cfg = ExperimentConfig(n_max=10_000)
        rep = run_convergence(cfg, GeneratorSpec("boundary", e(1)), tol=1e-3, every=250)
        errs = [r.sup_error for r in rep.rows]
        assert all(b < a for a, b in zip(errs, errs[1:]))
        assert rep.passed and rep.final_error <= 1e-3

    def test_wrong_target_fails(self):
        seq = PointSequence.from_terms([DiscPoint(e(1, 0.2))] * 20)
        rep = run_convergence(ExperimentConfig(n_max=19), seq, target=validate_params(SparseVector(), 0.5))
        assert not rep.passed
        errs = {r.sup_error for r in rep.rows}
        assert len(errs) == 1 and errs.pop() > 0.01

    def test_diagnostic_column(self):
        rep = run_convergence(ExperimentConfig(n_max=20), GeneratorSpec("boundary", e(1)), tol=1.0, diagnostic=True)
        assert all(abs(r.q - 1.0) <= 1e-9 for r in rep.rows)

    def test_needs_target(self):
        seq = PointSequence.from_terms([DiscPoint(e(1, 0.2))] * 2)
        with pytest.raises(InputError):
            run_convergence(ExperimentConfig(), seq)

    def test_outputs(self):
        rep = run_convergence(ExperimentConfig(n_max=3), GeneratorSpec("drift", e(1, 0.3), 0.8, 10))
        lines = rep.to_csv().splitlines()
        assert lines[0] == "n,sup_error,norm,q" and len(lines) == 4
        js = rep.to_json()
        assert js["summary"]["passed"] is True and len(js["rows"]) == 3

    def test_default_probes_supported_on_e1_to_e5(self):
        for p in default_probes():
            assert set(p.spatial.support) <= {1, 2, 3, 4, 5}


class TestIdentitySuite:
    def test_small_run_passes(self):
        table = run_identity_suite(ExperimentConfig(), trials=40, seed=7, n_params=3)
        assert table.passed, table.to_csv()
        assert len(table.results) == 12

    def test_rejects_zero_trials(self):
        with pytest.raises(InputError):
            run_identity_suite(ExperimentConfig(), trials=0)

    def test_deterministic(self):
        a = run_identity_suite(ExperimentConfig(), trials=25, seed=3, n_params=2)
        b = run_identity_suite(ExperimentConfig(), trials=25, seed=3, n_params=2)
        assert a.to_csv() == b.to_csv()
        assert json.dumps(a.to_json()) == json.dumps(b.to_json())

    def test_unknown_prng(self):
        with pytest.raises(InputError):
            run_identity_suite(ExperimentConfig(rng="NoSuchGenerator"), trials=2)
