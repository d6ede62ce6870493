"""scikit-learn style wrappers for the table-facing operations.

Two estimators cover the workflow ends that behave like standard
transformers and predictors: masking a table (a stateless cellwise
transform) and linking masked rows back to candidate records (a
predictor fitted on the reference table).  The belief algebra itself
stays plain immutable values; wrapping it in estimators would add
surface without fit/transform semantics.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .reident import (
    GeneralizationScheme,
    Table,
    candidate_indices,
    candidate_set,
)


def _as_table(X, attributes: Optional[Sequence[str]]) -> Table:
    if isinstance(X, Table):
        return X
    rows = [tuple(row) for row in X]
    if not rows:
        raise ValueError("X must contain at least one row")
    if attributes is None:
        attributes = tuple(f"x{j}" for j in range(len(rows[0])))
    return Table(tuple(attributes), tuple(rows))


class GeneralizationMasker(BaseEstimator, TransformerMixin):
    """Cellwise generalization as a transformer.

    Parameters
    ----------
    scheme : GeneralizationScheme
        Per-attribute generalizers.
    attributes : sequence of str, optional
        Column names for plain array input; defaults to x0..x{m-1}.
        Ignored when X is already a Table.
    """

    def __init__(
        self,
        scheme: Optional[GeneralizationScheme] = None,
        attributes: Optional[Sequence[str]] = None,
    ) -> None:
        self.scheme = scheme
        self.attributes = attributes

    def fit(self, X, y=None):
        if self.scheme is None:
            raise ValueError("GeneralizationMasker needs a scheme")
        table = _as_table(X, self.attributes)
        for attr in table.attributes:
            self.scheme.generalizer_for(attr)
        self.attributes_ = table.attributes
        self.n_features_in_ = table.n_attributes
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self, "attributes_")
        table = _as_table(X, self.attributes_)
        if table.attributes != self.attributes_:
            raise ValueError(
                f"X has attributes {table.attributes!r}, fitted on "
                f"{self.attributes_!r}"
            )
        rows = [
            [self.scheme.label(a, row[j])
             for j, a in enumerate(table.attributes)]
            for row in table.records
        ]
        return np.array(rows, dtype=object)


class CandidateSetReidentifier(BaseEstimator):
    """Link masked rows back to the records that could have produced them.

    Fit on the reference table X; predictions run on masked rows.
    ``predict_proba`` returns the uniform candidate-set distribution per
    query row, ``predict`` its lowest-index argmax (the candidate-set
    semantics have no tie-breaking of their own).

    Parameters
    ----------
    scheme : GeneralizationScheme
        The masking declared for the reference table.
    attrs : sequence of str, optional
        Attribute subset the intruder knows; defaults to all.
    attributes : sequence of str, optional
        Column names for plain array input.
    """

    def __init__(
        self,
        scheme: Optional[GeneralizationScheme] = None,
        attrs: Optional[Sequence[str]] = None,
        attributes: Optional[Sequence[str]] = None,
    ) -> None:
        self.scheme = scheme
        self.attrs = attrs
        self.attributes = attributes

    def fit(self, X, y=None):
        if self.scheme is None:
            raise ValueError("CandidateSetReidentifier needs a scheme")
        table = _as_table(X, self.attributes)
        self.table_ = table
        self.attrs_mask_ = (
            table.full_attrs
            if self.attrs is None
            else table.attrs_mask(self.attrs)
        )
        if self.attrs_mask_ == 0:
            raise ValueError("attrs must name at least one attribute")
        self.n_features_in_ = table.n_attributes
        return self

    def candidate_sets(self, Y) -> list[tuple[int, ...]]:
        """Record positions matching each masked row."""
        check_is_fitted(self, "table_")
        return [
            candidate_indices(
                candidate_set(
                    tuple(row), self.table_, self.scheme, self.attrs_mask_
                )
            )
            for row in Y
        ]

    def predict_proba(self, Y) -> np.ndarray:
        """Uniform distribution over each row's candidate set."""
        sets = self.candidate_sets(Y)
        out = np.zeros((len(sets), self.table_.n_records))
        for i, members in enumerate(sets):
            if not members:
                raise ValueError(
                    f"query row {i} matches no record under the scheme"
                )
            out[i, list(members)] = 1.0 / len(members)
        return out

    def predict(self, Y) -> np.ndarray:
        """Lowest-index most-probable record per query row."""
        return np.argmax(self.predict_proba(Y), axis=1)
