"""scikit-learn wrapper estimators."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import Pipeline

from conftest import age_scheme, age_table
from reidrisk import Table
from reidrisk.estimators import CandidateSetReidentifier, GeneralizationMasker
from reidrisk.reident import GeneralizationScheme, IdentityGeneralizer


class TestGeneralizationMasker:
    def test_fit_transform_on_arrays(self):
        masker = GeneralizationMasker(
            scheme=age_scheme(), attributes=("age",)
        )
        out = masker.fit_transform([[18], [22]])
        assert out.tolist() == [["[15,19]"], ["[20,25]"]]
        assert masker.n_features_in_ == 1
        assert masker.attributes_ == ("age",)

    def test_fit_transform_on_table(self):
        masker = GeneralizationMasker(scheme=age_scheme())
        out = masker.fit_transform(age_table())
        assert out[0, 0] == "[15,19]"
        assert out.shape == (6, 1)

    def test_default_attribute_names(self):
        scheme = GeneralizationScheme({"x0": IdentityGeneralizer()})
        masker = GeneralizationMasker(scheme=scheme)
        assert masker.fit_transform([[7]]).tolist() == [["7"]]

    def test_needs_scheme(self):
        with pytest.raises(ValueError, match="needs a scheme"):
            GeneralizationMasker().fit([[1]])

    def test_unfitted_transform_rejected(self):
        masker = GeneralizationMasker(scheme=age_scheme())
        with pytest.raises(NotFittedError):
            masker.transform([[18]])

    def test_attribute_mismatch_rejected(self):
        masker = GeneralizationMasker(scheme=age_scheme())
        masker.fit(age_table())
        with pytest.raises(ValueError, match="fitted on"):
            masker.transform(Table(("years",), ((18,),)))

    def test_scheme_missing_attribute(self):
        scheme = GeneralizationScheme({"age": IdentityGeneralizer()})
        masker = GeneralizationMasker(scheme=scheme)
        with pytest.raises(KeyError, match="no generalizer"):
            masker.fit(Table(("height",), ((170,),)))

    def test_clone_round_trip(self):
        masker = GeneralizationMasker(
            scheme=age_scheme(), attributes=("age",)
        )
        other = clone(masker)
        assert other.get_params() == masker.get_params()


class TestCandidateSetReidentifier:
    def test_predict_proba_uniform(self):
        model = CandidateSetReidentifier(scheme=age_scheme())
        model.fit(age_table())
        proba = model.predict_proba([("[15,19]",), ("[20,25]",)])
        expected = np.array([
            [1 / 3, 1 / 3, 1 / 3, 0, 0, 0],
            [0, 0, 0, 1 / 3, 1 / 3, 1 / 3],
        ])
        assert np.max(np.abs(proba - expected)) < 1e-12

    def test_predict_lowest_index_argmax(self):
        model = CandidateSetReidentifier(scheme=age_scheme())
        model.fit(age_table())
        out = model.predict([("[15,19]",), ("[20,25]",)])
        assert out.tolist() == [0, 3]

    def test_candidate_sets(self):
        model = CandidateSetReidentifier(scheme=age_scheme())
        model.fit(age_table())
        assert model.candidate_sets([("[15,19]",)]) == [(0, 1, 2)]

    def test_attrs_restriction(self):
        table = Table(("a", "b"), ((1, 1), (1, 2), (2, 1)))
        scheme = GeneralizationScheme(
            {"a": IdentityGeneralizer(), "b": IdentityGeneralizer()}
        )
        full = CandidateSetReidentifier(scheme=scheme)
        full.fit(table)
        assert full.candidate_sets([("1", "2")]) == [(1,)]
        partial = CandidateSetReidentifier(scheme=scheme, attrs=("a",))
        partial.fit(table)
        assert partial.candidate_sets([("1", "2")]) == [(0, 1)]

    def test_no_match_is_error(self):
        model = CandidateSetReidentifier(scheme=age_scheme())
        model.fit(age_table())
        with pytest.raises(ValueError, match="matches no record"):
            model.predict_proba([("[30,40]",)])

    def test_needs_scheme_and_fit(self):
        with pytest.raises(ValueError, match="needs a scheme"):
            CandidateSetReidentifier().fit(age_table())
        model = CandidateSetReidentifier(scheme=age_scheme())
        with pytest.raises(NotFittedError):
            model.candidate_sets([("[15,19]",)])

    def test_clone_keeps_params(self):
        model = CandidateSetReidentifier(
            scheme=age_scheme(), attrs=("age",), attributes=("age",)
        )
        other = clone(model)
        assert other.get_params() == model.get_params()

    def test_pipeline_composition(self):
        # The masker feeds masked strings to the linker, so the linker
        # matches them with an identity scheme: querying a raw row then
        # recovers its generalization class.
        pipeline = Pipeline([
            ("mask", GeneralizationMasker(scheme=age_scheme(),
                                          attributes=("age",))),
            ("link", CandidateSetReidentifier(
                scheme=GeneralizationScheme({"x0": IdentityGeneralizer()})
            )),
        ])
        pipeline.fit([[18], [16], [19], [22], [24], [24]])
        proba = pipeline.predict_proba([[18], [24]])
        expected = np.array([
            [1 / 3, 1 / 3, 1 / 3, 0, 0, 0],
            [0, 0, 0, 1 / 3, 1 / 3, 1 / 3],
        ])
        assert np.max(np.abs(proba - expected)) < 1e-12
