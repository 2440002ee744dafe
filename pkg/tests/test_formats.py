import numpy as np
import pytest

from udisc import GenSpec, shared_support_counterexample, random_ensemble
from udisc.errors import BadPriorsError, NotPsdError, ParseError, TraceNotOneError
from udisc.formats import (
    doc_seed,
    doc_to_ensemble,
    dump_document,
    ensemble_to_doc,
    load_document,
    load_ensemble,
    save_document,
)


def roundtrip(e):
    return doc_to_ensemble(ensemble_to_doc(e))


class TestRoundTrip:
    def test_counterexample_roundtrips_exactly(self):
        e = shared_support_counterexample()
        back = roundtrip(e)
        assert back.dim == e.dim
        assert np.array_equal(back.priors, e.priors)
        for a, b in zip(e.states, back.states):
            assert np.array_equal(a.matrix, b.matrix)

    @pytest.mark.parametrize("seed", range(4))
    def test_random_ensembles_roundtrip_exactly(self, seed):
        e = random_ensemble(GenSpec(dim=4, n=3, ranks=(1, 2, 3), seed=3200 + seed))
        back = roundtrip(e)
        for a, b in zip(e.states, back.states):
            assert np.array_equal(a.matrix, b.matrix)

    def test_seed_is_echoed(self):
        doc = ensemble_to_doc(shared_support_counterexample(), seed=123)
        assert doc["seed"] == 123
        assert doc_seed(doc) == 123
        assert doc_seed(ensemble_to_doc(shared_support_counterexample())) is None

    def test_dump_is_deterministic(self):
        doc = ensemble_to_doc(shared_support_counterexample())
        assert dump_document(doc) == dump_document(ensemble_to_doc(shared_support_counterexample()))

    def test_save_and_load(self, tmp_path):
        path = tmp_path / "e.json"
        e = random_ensemble(GenSpec(dim=3, n=2, ranks=(1, 1), seed=5))
        save_document(str(path), ensemble_to_doc(e))
        back = load_ensemble(str(path))
        for a, b in zip(e.states, back.states):
            assert np.array_equal(a.matrix, b.matrix)


class TestParseErrors:
    def base_doc(self):
        return ensemble_to_doc(shared_support_counterexample())

    def test_top_level_must_be_object(self):
        with pytest.raises(ParseError, match="top level"):
            doc_to_ensemble([1, 2, 3])

    def test_schema_version_checked(self):
        doc = self.base_doc()
        doc["schema_version"] = "udisc-0"
        with pytest.raises(ParseError, match="schema_version"):
            doc_to_ensemble(doc)

    def test_dimension_checked(self):
        doc = self.base_doc()
        doc["dimension"] = "two"
        with pytest.raises(ParseError, match="dimension"):
            doc_to_ensemble(doc)

    def test_states_must_be_list(self):
        doc = self.base_doc()
        doc["states"] = {}
        with pytest.raises(ParseError, match="states"):
            doc_to_ensemble(doc)

    def test_missing_matrix_is_positioned(self):
        doc = self.base_doc()
        del doc["states"][1]["matrix"]
        with pytest.raises(ParseError, match=r"states\[1\]\.matrix"):
            doc_to_ensemble(doc)

    def test_bad_cell_is_positioned(self):
        doc = self.base_doc()
        doc["states"][0]["matrix"][1][0] = [1.0]
        with pytest.raises(ParseError, match=r"states\[0\]\.matrix\[1\]\[0\]"):
            doc_to_ensemble(doc)

    def test_wrong_row_count_is_positioned(self):
        doc = self.base_doc()
        doc["states"][0]["matrix"] = doc["states"][0]["matrix"][:1]
        with pytest.raises(ParseError, match=r"states\[0\]\.matrix"):
            doc_to_ensemble(doc)

    def test_bad_prior_type_is_positioned(self):
        doc = self.base_doc()
        doc["states"][0]["prior"] = "half"
        with pytest.raises(ParseError, match=r"states\[0\]\.prior"):
            doc_to_ensemble(doc)

    def test_truncated_file_reports_line_and_column(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"schema_version": "udisc-1", "dimension": 2,\n  "states": [')
        with pytest.raises(ParseError, match="line"):
            load_document(str(path))


class TestValidationSplit:
    def test_physics_failures_are_not_parse_errors(self):
        doc = ensemble_to_doc(shared_support_counterexample())
        doc["states"][0]["matrix"][0][0] = [2.0, 0.0]
        with pytest.raises((NotPsdError, TraceNotOneError)):
            doc_to_ensemble(doc)

    def test_bad_priors_are_validation_errors(self):
        doc = ensemble_to_doc(shared_support_counterexample())
        doc["states"][0]["prior"] = 0.9
        with pytest.raises(BadPriorsError):
            doc_to_ensemble(doc)
