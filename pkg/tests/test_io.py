"""CSV and JSON round trips."""

import json

import numpy as np
import pytest

from conftest import age_scheme, age_table
from reidrisk import (
    Frame,
    MassAssignment,
    ProbabilityDistribution,
    mask_generalize,
)
from reidrisk.io import (
    dump_json,
    load_json,
    mass_from_dict,
    mass_to_dict,
    masked_csv_text,
    probability_from_dict,
    probability_to_dict,
    read_table_csv,
    set_function_from_dict,
    set_function_to_dict,
    write_masked_csv,
)


class TestTableCsv:
    def test_read_types(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text(
            "age,city,code\n18,porto,007\n21,faro,12\n", encoding="utf-8"
        )
        table = read_table_csv(path)
        assert table.attributes == ("age", "city", "code")
        # "007" is not a canonical integer rendering, so it stays text.
        assert table.records == ((18, "porto", "007"), (21, "faro", 12))

    def test_negative_int_cell(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("v\n-3\n", encoding="utf-8")
        assert read_table_csv(path).records == ((-3,),)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(ValueError, match="empty CSV"):
            read_table_csv(path)

    def test_header_only(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("a,b\n", encoding="utf-8")
        with pytest.raises(ValueError, match="no data rows"):
            read_table_csv(path)

    def test_ragged_row_line_number(self, tmp_path):
        path = tmp_path / "t.csv"
        path.write_text("a,b\n1,2\n3\n", encoding="utf-8")
        with pytest.raises(ValueError, match=":3:"):
            read_table_csv(path)

    def test_masked_round_trip(self, tmp_path):
        masked = mask_generalize(age_table(), age_scheme())
        path = tmp_path / "masked.csv"
        write_masked_csv(masked, path)
        text = path.read_text(encoding="utf-8")
        assert text == masked_csv_text(masked)
        # Interval labels contain the delimiter, so they are quoted.
        assert '"[15,19]"' in text
        back = read_table_csv(path)
        assert back.records == masked.rows

    def test_write_is_deterministic(self, tmp_path):
        masked = mask_generalize(age_table(), age_scheme())
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_masked_csv(masked, p1)
        write_masked_csv(masked, p2)
        assert p1.read_bytes() == p2.read_bytes()


class TestSetFunctionJson:
    def test_round_trip(self):
        frame = Frame(("r0", "r1", "r2"))
        mass = MassAssignment.from_dict(
            frame, {("r0", "r1"): 0.25, ("r0", "r1", "r2"): 0.75}
        )
        data = mass_to_dict(mass)
        assert data["frame"] == ["r0", "r1", "r2"]
        assert {"subset": ["r0", "r1"], "value": 0.25} in data["assignments"]
        back = mass_from_dict(data)
        assert back.frame == frame
        assert np.max(np.abs(back.values - mass.values)) < 1e-15

    def test_unlisted_subsets_are_zero(self):
        frame, values = set_function_from_dict(
            {"frame": ["a", "b"], "assignments": [
                {"subset": ["a", "b"], "value": 1.0}
            ]}
        )
        assert values.tolist() == [0.0, 0.0, 0.0, 1.0]

    def test_duplicate_subsets_accumulate(self):
        _, values = set_function_from_dict(
            {"frame": ["a"], "assignments": [
                {"subset": ["a"], "value": 0.25},
                {"subset": ["a"], "value": 0.75},
            ]}
        )
        assert values.tolist() == [0.0, 1.0]

    def test_missing_keys(self):
        with pytest.raises(ValueError, match="'frame' and 'assignments'"):
            set_function_from_dict({"frame": ["a"]})
        with pytest.raises(ValueError, match="'subset' and 'value'"):
            set_function_from_dict(
                {"frame": ["a"], "assignments": [{"subset": ["a"]}]}
            )

    def test_unknown_label(self):
        with pytest.raises(KeyError):
            set_function_from_dict(
                {"frame": ["a"], "assignments": [
                    {"subset": ["z"], "value": 1.0}
                ]}
            )

    def test_empty_set_serialized_when_nonzero(self):
        frame = Frame(("a",))
        data = set_function_to_dict(frame, np.array([0.5, 0.5]))
        assert {"subset": [], "value": 0.5} in data["assignments"]


class TestProbabilityJson:
    def test_round_trip(self):
        frame = Frame(("a", "b", "c"))
        dist = ProbabilityDistribution(frame, [0.2, 0.3, 0.5])
        back = probability_from_dict(probability_to_dict(dist))
        assert back.frame == frame
        assert back.p.tolist() == dist.p.tolist()

    def test_missing_keys(self):
        with pytest.raises(ValueError, match="'frame' and 'p'"):
            probability_from_dict({"frame": ["a"]})


class TestJsonFiles:
    def test_dump_and_load(self, tmp_path):
        path = tmp_path / "d.json"
        text = dump_json({"x": [1, 2]}, path)
        assert text.endswith("\n")
        assert json.loads(text) == {"x": [1, 2]}
        assert load_json(path) == {"x": [1, 2]}
        assert path.read_text(encoding="utf-8") == text

    def test_dump_without_path_returns_text(self):
        assert json.loads(dump_json({"a": 1}, None)) == {"a": 1}

    def test_invalid_json_names_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(ValueError, match="invalid JSON"):
            load_json(path)

    def test_non_object_rejected(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ValueError, match="JSON object"):
            load_json(path)
