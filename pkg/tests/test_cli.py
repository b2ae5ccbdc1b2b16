"""CLI contract: subcommands, exit codes, determinism, file formats."""

import json

import pytest

from rigidity.cli import main
from rigidity.defaults import TOLERANCES, VERSION
from rigidity.surfaces import field_to_dict, ingest_field, save_field
from rigidity.verify import CHECK_FAMILIES


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


class TestVerify:
    def test_small_campaign_passes(self, tmp_path):
        out = tmp_path / "report.json"
        code = main(["verify", "--n", "4,5,6", "--samples", "200", "--seed", "42",
                     "--out", str(out)])
        assert code == 0
        report = read_json(out)
        assert report["version"] == VERSION
        assert set(report["checks"].keys()) == set(CHECK_FAMILIES)
        assert all(stats["pass"] for stats in report["checks"].values())
        assert report["tolerances"] == {k: pytest.approx(v) for k, v in TOLERANCES.items()}
        assert report["pass"] is True

    def test_zero_samples_usage_error(self, tmp_path, capsys):
        code = main(["verify", "--samples", "0", "--seed", "1",
                     "--out", str(tmp_path / "r.json")])
        assert code == 2
        assert "samples must be >= 1" in capsys.readouterr().err

    def test_seed_required(self, tmp_path):
        code = main(["verify", "--samples", "10", "--out", str(tmp_path / "r.json")])
        assert code == 2

    def test_same_seed_byte_identical(self, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        for out in (a, b):
            assert main(["verify", "--n", "4,5", "--samples", "120", "--seed", "7",
                         "--out", str(out)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_thread_count_does_not_change_bytes(self, tmp_path):
        outputs = []
        for threads in (1, 4):
            out = tmp_path / f"t{threads}.json"
            assert main(["verify", "--n", "4,5", "--samples", "150", "--seed", "3",
                         "--threads", str(threads), "--out", str(out)]) == 0
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

    def test_bad_dimension(self, tmp_path, capsys):
        code = main(["verify", "--n", "3", "--samples", "10", "--seed", "1",
                     "--out", str(tmp_path / "r.json")])
        assert code == 2
        assert ">= 4" in capsys.readouterr().err

    def test_threads_env_fallback(self, tmp_path, monkeypatch):
        monkeypatch.setenv("RIGIDITY_THREADS", "2")
        out = tmp_path / "env.json"
        assert main(["verify", "--n", "4", "--samples", "50", "--seed", "5",
                     "--out", str(out)]) == 0
        ref = tmp_path / "ref.json"
        assert main(["verify", "--n", "4", "--samples", "50", "--seed", "5",
                     "--threads", "1", "--out", str(ref)]) == 0
        assert out.read_bytes() == ref.read_bytes()


class TestCatalog:
    def test_catenoid_round_trip(self, tmp_path):
        out = tmp_path / "cat.json"
        code = main(["catalog", "--surface", "catenoid", "--n", "4",
                     "--grid", "24x4", "--out", str(out)])
        assert code == 0
        field = ingest_field(out)
        assert field.spec.kind == "Catenoid"
        assert field.minimal_claimed
        round_trip = tmp_path / "cat2.json"
        save_field(field, round_trip)
        assert out.read_bytes() == round_trip.read_bytes()

    def test_cylinder_constant_eigenvalues(self, tmp_path):
        out = tmp_path / "cyl.json"
        code = main(["catalog", "--surface", "cylinder", "--n", "4", "--radius", "2",
                     "--grid", "4x4", "--out", str(out)])
        assert code == 0
        field = ingest_field(out)
        first = field.samples[0].shape_operator.entries
        for sample in field.samples:
            assert (sample.shape_operator.entries == first).all()

    def test_unknown_surface_lists_names(self, tmp_path, capsys):
        code = main(["catalog", "--surface", "torus", "--n", "4",
                     "--out", str(tmp_path / "t.json")])
        assert code == 2
        err = capsys.readouterr().err
        assert "catenoid" in err and "cylinder" in err

    def test_bad_params_exit_2(self, tmp_path, capsys):
        code = main(["catalog", "--surface", "sphere", "--n", "4", "--radius", "-1",
                     "--out", str(tmp_path / "s.json")])
        assert code == 2

    def test_ellipsoid_semi_axes_validation(self, tmp_path, capsys):
        code = main(["catalog", "--surface", "ellipsoid", "--n", "4",
                     "--semi-axes", "1,1.2", "--out", str(tmp_path / "e.json")])
        assert code == 2
        assert "semi-axes" in capsys.readouterr().err


@pytest.fixture(scope="module")
def catenoid_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("fields") / "catenoid.json"
    assert main(["catalog", "--surface", "catenoid", "--n", "4",
                 "--grid", "16x4", "--out", str(path)]) == 0
    return path


class TestAnalyze:
    def test_catenoid_assert_zero_passes(self, tmp_path, catenoid_path):
        out = tmp_path / "report.json"
        code = main(["analyze", "--field", str(catenoid_path), "--out", str(out),
                     "--assert-zero", "1e-6"])
        assert code == 0
        report = read_json(out)
        assert report["report"]["classification"] == "CatenoidCandidate"

    def test_ellipsoid_assert_zero_fails(self, tmp_path):
        field_path = tmp_path / "ell.json"
        assert main(["catalog", "--surface", "ellipsoid", "--n", "4",
                     "--grid", "3x3x3x4", "--fd-step", "1e-4",
                     "--out", str(field_path)]) == 0
        out = tmp_path / "report.json"
        code = main(["analyze", "--field", str(field_path), "--out", str(out),
                     "--assert-zero", "1e-6"])
        assert code == 1
        assert read_json(out)["report"]["E_rot"] > 0.0

    def test_sphere_all_umbilic(self, tmp_path):
        field_path = tmp_path / "sphere.json"
        assert main(["catalog", "--surface", "sphere", "--n", "4", "--grid", "4",
                     "--out", str(field_path)]) == 0
        out = tmp_path / "report.json"
        assert main(["analyze", "--field", str(field_path), "--out", str(out)]) == 0
        report = read_json(out)
        assert report["report"]["classification"] == "AllUmbilic"
        assert report["report"]["E_rot"] == 0.0
        assert report["report"]["E_rot_conf"] == 0.0

    def test_csv_export(self, tmp_path, catenoid_path):
        out = tmp_path / "report.json"
        csv_path = tmp_path / "samples.csv"
        assert main(["analyze", "--field", str(catenoid_path), "--out", str(out),
                     "--csv", str(csv_path)]) == 0
        lines = csv_path.read_text(encoding="utf-8").strip().splitlines()
        assert lines[0].startswith("coord0,coord1,tracefree_norm_sq")
        assert len(lines) == 1 + len(ingest_field(catenoid_path).samples)

    def test_schema_error_names_sample(self, tmp_path, catenoid_path, capsys):
        field = ingest_field(catenoid_path)
        data = field_to_dict(field)
        data["samples"][3]["shape_operator"][0][1] = 99.0
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(data), encoding="utf-8")
        code = main(["analyze", "--field", str(bad), "--out", str(tmp_path / "r.json")])
        assert code == 2
        assert "sample 3" in capsys.readouterr().err

    def test_parse_error_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "broken.json"
        bad.write_text("{", encoding="utf-8")
        code = main(["analyze", "--field", str(bad), "--out", str(tmp_path / "r.json")])
        assert code == 2
