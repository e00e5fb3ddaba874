import json
import math

import pytest

from logstair.cli import main

TWO_PI = 2.0 * math.pi


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_path(tmp_path, name, points):
    data = {"points": [[complex(p).real, complex(p).imag] for p in points]}
    target = tmp_path / name
    target.write_text(json.dumps(data))
    return str(target)


def grab(out, key):
    for line in out.splitlines():
        if line.startswith(key + "="):
            return line.split("=", 1)[1]
    raise AssertionError(f"no {key}= line in output:\n{out}")


def parse_pair(text):
    re_s, im_s = text.split(",")
    return complex(float(re_s), float(im_s))


@pytest.fixture
def loop_file(tmp_path):
    return write_path(tmp_path, "loop.json", [2, 2j, -2, -2j, 2])


@pytest.fixture
def segment_file(tmp_path):
    return write_path(tmp_path, "seg.json", [1, 2])


class TestWind:
    def test_loop(self, capsys, loop_file):
        code, out, _ = run(capsys, "wind", "--path", loop_file)
        assert code == 0
        assert out == "W=1\n"

    def test_branch_invariance(self, capsys, loop_file):
        code, out, _ = run(capsys, "wind", "--path", loop_file, "--branch-im", str(TWO_PI))
        assert code == 0
        assert out == "W=1\n"


class TestLift:
    def test_stdout_csv(self, capsys, segment_file):
        code, out, _ = run(capsys, "lift", "--path", segment_file)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "lift_re,lift_im"
        assert len(lines) == 3
        assert parse_pair(lines[-1]) == pytest.approx(math.log(2))

    def test_out_file(self, capsys, segment_file, tmp_path):
        dest = tmp_path / "lift.csv"
        code, out, _ = run(capsys, "lift", "--path", segment_file, "--out", str(dest))
        assert code == 0
        assert parse_pair(grab(out, "lift_end")) == pytest.approx(math.log(2))
        assert dest.read_text().splitlines()[0] == "lift_re,lift_im"


class TestContinue:
    def test_log_germ_completes(self, capsys, segment_file):
        code, out, _ = run(capsys, "continue", "--path", segment_file)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "t,center_re,center_im,radius_est"
        assert grab(out, "status") == "completed"
        assert parse_pair(grab(out, "value")) == pytest.approx(math.log(2), abs=1e-10)

    def test_branch_flag_shifts_value(self, capsys, segment_file):
        code, out, _ = run(
            capsys, "continue", "--path", segment_file, "--germ", f"log:{TWO_PI}"
        )
        assert code == 0
        expected = complex(math.log(2), TWO_PI)
        assert parse_pair(grab(out, "value")) == pytest.approx(expected, abs=1e-10)

    def test_h_germ_fails_past_boundary(self, capsys, tmp_path):
        path = write_path(tmp_path, "out.json", [0.5, 2])
        code, out, _ = run(capsys, "continue", "--path", path, "--germ", "h")
        assert code == 0
        assert grab(out, "status") == "failed"
        assert 0.0 < float(grab(out, "t_fail")) < 1.0
        assert grab(out, "reason")

    def test_bad_germ_spec(self, capsys, segment_file):
        code, _, err = run(capsys, "continue", "--path", segment_file, "--germ", "exp")
        assert code == 2
        assert "error:" in err


class TestOracle:
    def test_blocked_crossing(self, capsys, tmp_path):
        path = write_path(tmp_path, "cross.json", [0.5, 2])
        code, out, _ = run(capsys, "oracle", "--path", path)
        assert code == 0
        assert grab(out, "verdict") == "blocked"
        assert float(grab(out, "first_exit_t")) == pytest.approx(1 / 3, abs=1e-6)

    def test_continuable_loop_out(self, capsys, tmp_path):
        path = write_path(tmp_path, "loopout.json", [0.5, 0.5j, -0.5, -0.5j, 0.5, 2])
        code, out, _ = run(capsys, "oracle", "--path", path)
        assert code == 0
        assert grab(out, "verdict") == "continuable"
        assert grab(out, "first_exit_t") == "none"
        expected = complex(math.log(2), TWO_PI)
        assert parse_pair(grab(out, "lift_end")) == pytest.approx(expected, abs=1e-9)


class TestClassify:
    def test_continuable_with_witness(self, capsys, tmp_path):
        dest = tmp_path / "witness.json"
        code, out, _ = run(
            capsys,
            "classify",
            f"--omega={-math.e**2},0",
            "--m",
            "2",
            "--n",
            "3",
            "--out",
            str(dest),
        )
        assert code == 0
        assert grab(out, "verdict") == "continuable"
        expected = complex(2.0, 5 * math.pi)
        assert parse_pair(grab(out, "lift_end")) == pytest.approx(expected, abs=1e-9)

        # the saved witness is itself certified by the oracle
        code, out, _ = run(capsys, "oracle", "--path", str(dest))
        assert code == 0
        assert grab(out, "verdict") == "continuable"

    def test_blocked_writes_no_witness(self, capsys, tmp_path):
        dest = tmp_path / "none.json"
        code, out, _ = run(
            capsys, "classify", "--omega", "0.6", "--m", "0", "--n", "0",
            "--out", str(dest),
        )
        assert code == 0
        assert grab(out, "verdict") == "blocked"
        assert not dest.exists()

    def test_off_slit_is_domain_error(self, capsys):
        code, _, err = run(capsys, "classify", "--omega", "2", "--m", "0", "--n", "0")
        assert code == 1
        assert "error:" in err

    def test_bad_omega_is_usage_error(self, capsys):
        code, _, err = run(capsys, "classify", "--omega", "nope", "--m", "0", "--n", "0")
        assert code == 2
        assert "error:" in err


class TestTable:
    ARGS = ("table", "--m-range", "0:1", "--n-offsets", "0,1", "--samples", "2")

    def test_header_and_summary(self, capsys):
        code, out, _ = run(capsys, *self.ARGS)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "M,N,omega_re,omega_im,lift_re,lift_im,verdict"
        assert lines[-1] == "theorem_b: PASS"
        # 2 M values x 2 offsets x (2 circle + 1 segment) samples
        assert len(lines) == 2 + 2 * 2 * 3

    def test_deterministic(self, capsys):
        _, first, _ = run(capsys, *self.ARGS)
        _, second, _ = run(capsys, *self.ARGS)
        assert first == second

    def test_bad_range(self, capsys):
        code, _, err = run(capsys, "table", "--m-range", "q:1")
        assert code == 2
        assert "error:" in err


class TestReach:
    def test_round_trip_through_oracle(self, capsys, tmp_path):
        dest = tmp_path / "route.json"
        code, out, _ = run(capsys, "reach", "--omega", "0,2", "--out", str(dest))
        assert code == 0
        assert out == "W=0\n"
        data = json.loads(dest.read_text())
        assert data["points"][0] == [0.5, 0.0]
        assert data["points"][-1] == pytest.approx([0.0, 2.0])

        code, out, _ = run(capsys, "oracle", "--path", str(dest))
        assert code == 0
        assert grab(out, "verdict") == "continuable"

    def test_negative_target_winds(self, capsys):
        code, out, _ = run(capsys, "reach", "--omega", f"{-math.e**3}")
        assert code == 0
        assert out.splitlines()[-1] == "W=3"

    def test_origin_is_domain_error(self, capsys):
        code, _, err = run(capsys, "reach", "--omega", "0")
        assert code == 1
        assert "error:" in err


class TestDemoExpExp:
    def test_report_lines(self, capsys):
        code, out, _ = run(capsys, "demo-expexp")
        assert code == 0
        assert grab(out, "branch_a") == "failed"
        assert abs(parse_pair(grab(out, "fail_point")) - 1.0) < 0.05
        assert grab(out, "branch_b") == "completed"
        expected = complex(math.log(TWO_PI), math.pi / 2)
        assert parse_pair(grab(out, "final_value")) == pytest.approx(expected, abs=1e-6)


class TestMapCommands:
    def test_build_map_nodes(self, capsys, tmp_path):
        dest = tmp_path / "nodes.csv"
        code, out, _ = run(
            capsys, "build-map", "--resolution", "64", "--out", str(dest)
        )
        assert code == 0
        assert float(grab(out, "base_image")) == 0.0
        n = int(grab(out, "nodes"))
        lines = dest.read_text().splitlines()
        assert lines[0] == "node_re,node_im"
        assert len(lines) == n + 1
        # boundary nodes stay inside the truncation box of the default domain
        # (columns -2..2, so x spans [-2, 3]; floor at 2*pi*(-2), roof at 8*pi)
        points = [parse_pair(line) for line in lines[1:]]
        assert all(-2 - 1e-9 <= p.real <= 3 + 1e-9 for p in points)
        assert all(-4 * math.pi - 1e-9 <= p.imag <= 8 * math.pi + 1e-9 for p in points)

    def test_map_report_json(self, capsys):
        code, out, _ = run(capsys, "map-report", "--resolution", "64")
        assert code == 0
        report = json.loads(out)
        assert set(report) >= {
            "interior_max_modulus",
            "boundary_min_modulus",
            "boundary_mean_modulus",
            "grid_injectivity_min_separation",
        }
        assert report["interior_max_modulus"] < 1.0
        assert report["grid_injectivity_min_separation"] > 0.0

    def test_bad_truncation(self, capsys):
        code, _, err = run(capsys, "map-report", "--truncation", "0:2")
        assert code == 2
        assert "error:" in err


class TestUsageErrors:
    def test_unknown_flag(self, capsys, segment_file):
        code, _, _ = run(capsys, "wind", "--path", segment_file, "--bogus")
        assert code == 2

    def test_missing_required(self, capsys):
        code, _, _ = run(capsys, "wind")
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "wind", "--path", "/no/such/file.json")
        assert code == 2
        assert "error:" in err

    def test_malformed_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, _, err = run(capsys, "wind", "--path", str(bad))
        assert code == 2
        assert "error:" in err

    def test_wrong_shape(self, capsys, tmp_path):
        bad = tmp_path / "shape.json"
        bad.write_text('{"points": [[1, 2, 3]]}')
        code, _, err = run(capsys, "wind", "--path", str(bad))
        assert code == 2
        assert "error:" in err
