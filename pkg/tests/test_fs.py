"""
Tests for flowhom.fs - atomic output files.
"""

import json

import pytest

from flowhom.fs import atomic_write, dumps, read_jsonl, write_json, write_jsonl


class TestAtomicWrite:
    """Tests for atomic_write function."""

    def test_basic_write(self, tmp_path):
        path = tmp_path / "g.edges"
        atomic_write(path, "a b\n")
        assert path.read_text() == "a b\n"

    def test_creates_parent_directories(self, tmp_path):
        path = tmp_path / "corpus" / "nested" / "g.edges"
        atomic_write(path, "content")
        assert path.read_text() == "content"

    def test_overwrites_existing(self, tmp_path):
        path = tmp_path / "g.edges"
        atomic_write(path, "first")
        atomic_write(path, "second")
        assert path.read_text() == "second"

    def test_no_temp_files_left_on_success(self, tmp_path):
        atomic_write(tmp_path / "g.edges", "content")
        assert [p.name for p in tmp_path.iterdir()] == ["g.edges"]

    def test_temp_file_removed_on_failure(self, tmp_path):
        path = tmp_path / "g.edges"
        with pytest.raises(TypeError):
            atomic_write(path, None)
        assert list(tmp_path.iterdir()) == []


class TestJson:
    def test_dumps_is_stable(self):
        assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'

    def test_write_json(self, tmp_path):
        path = tmp_path / "summary.json"
        write_json(path, {"n": 4, "total": 7})
        assert json.loads(path.read_text()) == {"n": 4, "total": 7}

    def test_jsonl(self, tmp_path):
        path = tmp_path / "manifest.jsonl"
        rows = [{"file": "a.edges", "beta1": 1}, {"file": "b.edges", "beta1": 0}]
        assert write_jsonl(path, rows) == 2
        assert path.read_text().splitlines()[0] == '{"beta1":1,"file":"a.edges"}'
        assert read_jsonl(path) == rows

    def test_jsonl_empty(self, tmp_path):
        path = tmp_path / "manifest.jsonl"
        assert write_jsonl(path, []) == 0
        assert read_jsonl(path) == []
