import json
import math

import pytest

from switchyield.cli import main
from switchyield.closedform import gamma2_correlated, gamma2_uncorrelated


def run(tmp_path, args, name="out.csv"):
    out = tmp_path / name
    rc = main(args + ["--out", str(out)])
    return rc, out


class TestSweepModes:
    def test_correlated_matches_closed_form(self, tmp_path):
        rc, out = run(tmp_path, ["sweep", "--mode", "correlated", "--n", "2",
                                 "--delta-min", "0.5", "--delta-max", "3.0",
                                 "--delta-step", "0.5"])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "delta,q,w,n,gamma,p_1,p_2"
        for row in lines[1:]:
            vals = row.split(",")
            d, gamma = float(vals[0]), float(vals[4])
            assert gamma == pytest.approx(gamma2_correlated(d, 0.5, 30.0), abs=1e-8)
            p1, p2 = float(vals[5]), float(vals[6])
            assert gamma == pytest.approx(2 * 0.5 * p1 + p2, abs=1e-8)

    def test_uncorrelated_matches_closed_form(self, tmp_path):
        rc, out = run(tmp_path, ["sweep", "--mode", "uncorrelated", "--n", "2",
                                 "--delta-min", "1.0", "--delta-max", "2.0",
                                 "--delta-step", "0.5"])
        assert rc == 0
        for row in out.read_text().splitlines()[1:]:
            d, _, _, _, gamma = map(float, row.split(","))
            assert gamma == pytest.approx(gamma2_uncorrelated(d, 0.5, 30.0), abs=1e-8)

    def test_td_single_row(self, tmp_path):
        rc, out = run(tmp_path, ["sweep", "--mode", "td", "--delta-min", "3",
                                 "--delta-max", "3", "--delta-step", "1"])
        assert rc == 0
        rows = out.read_text().splitlines()
        assert rows[0] == "delta,q,w,gamma"
        assert float(rows[1].split(",")[-1]) == 1.0

    def test_advantage_columns_and_values(self, tmp_path):
        rc, out = run(tmp_path, ["sweep", "--mode", "advantage", "--delta-min", "3",
                                 "--n-min", "2", "--n-max", "4"])
        assert rc == 0
        rows = out.read_text().splitlines()
        assert rows[0] == "n,delta,q,w,gamma_u,gamma_c,delta_n"
        assert len(rows) == 4
        for row in rows[1:]:
            n, d, q, w, gu, gc, dn = row.split(",")
            assert dn == f"{(float(gc) - float(gu)) / float(gu):.17g}"

    def test_mutualinfo_columns(self, tmp_path):
        rc, out = run(tmp_path, ["sweep", "--mode", "mutualinfo",
                                 "--delta-min", "3", "--delta-max", "3",
                                 "--delta-step", "1"])
        assert rc == 0
        rows = out.read_text().splitlines()
        assert rows[0] == "delta,gamma,p0,p1,p2,mutual_information"
        d, gamma, p0, p1, p2, mi = map(float, rows[1].split(","))
        assert p0 + 2 * p1 + p2 == pytest.approx(1.0, abs=1e-8)
        assert mi > 0.1  # strong correlations at delta = 3

    def test_json_format(self, tmp_path):
        rc, out = run(tmp_path, ["sweep", "--mode", "single", "--delta-min", "1",
                                 "--delta-max", "2", "--delta-step", "1",
                                 "--format", "json"], name="out.json")
        assert rc == 0
        payload = json.loads(out.read_text())
        assert [sorted(row) for row in payload] == \
            [sorted(["delta", "q", "w", "gamma"])] * 2

    def test_coherence_mode(self, tmp_path):
        rc, out = run(tmp_path, ["sweep", "--mode", "coherence", "--alpha", "0.25",
                                 "--delta-min", "15", "--delta-max", "15",
                                 "--delta-step", "1"])
        assert rc == 0
        rows = out.read_text().splitlines()
        assert rows[0] == "delta,q,w,alpha,gamma_correlated,gamma_uncorrelated"
        _, _, _, _, gc, gu = map(float, rows[1].split(","))
        assert gc >= gu - 1e-9

    def test_fivelevel_mode(self, tmp_path):
        rc, out = run(tmp_path, ["sweep", "--mode", "fivelevel",
                                 "--delta-min", "3", "--delta-max", "3",
                                 "--delta-step", "1", "--omega0", "0.1",
                                 "--omega-delta", "0.1", "--beta0", "100"])
        assert rc == 0
        rows = out.read_text().splitlines()
        assert rows[0] == "delta,q,w,omega0,omega_delta,beta0,n,gamma"
        assert float(rows[1].split(",")[-1]) == pytest.approx(0.797406094, abs=1e-6)


class TestDeterminism:
    def test_byte_identical_across_threads(self, tmp_path):
        args = ["sweep", "--mode", "correlated", "--n", "3", "--delta-min", "0.5",
                "--delta-max", "6.0", "--delta-step", "0.5"]
        rc1, f1 = run(tmp_path, args + ["--threads", "1"], "a.csv")
        rc2, f2 = run(tmp_path, args + ["--threads", "4"], "b.csv")
        rc3, f3 = run(tmp_path, args + ["--threads", "1"], "c.csv")
        assert rc1 == rc2 == rc3 == 0
        assert f1.read_bytes() == f2.read_bytes() == f3.read_bytes()


class TestConfigFile:
    def test_config_and_flag_override(self, tmp_path):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text("# defaults\nmode=td\ndelta-min=3\ndelta-max=5\n"
                       "delta-step=1\nq=0.5\nw=30\nformat=csv\n")
        rc, out = run(tmp_path, ["sweep", "--config", str(cfg)])
        assert rc == 0
        assert len(out.read_text().splitlines()) == 4  # header + 3 rows
        rc, out2 = run(tmp_path, ["sweep", "--config", str(cfg),
                                  "--delta-max", "3"], "b.csv")
        assert rc == 0
        assert len(out2.read_text().splitlines()) == 2  # flag overrides file

    def test_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("mode=td\nbogus=1\n")
        assert main(["sweep", "--config", str(cfg), "--out", str(tmp_path / "x")]) == 2


class TestExitCodes:
    def test_config_error(self, tmp_path):
        assert main(["sweep", "--mode", "bogus", "--out", str(tmp_path / "x")]) == 2
        assert main(["sweep", "--mode", "td", "--delta-min", "5",
                     "--delta-max", "1", "--out", str(tmp_path / "x")]) == 2

    def test_numerical_error(self, tmp_path):
        # delta above w is outside the model's domain -> exit 3
        rc = main(["sweep", "--mode", "uncorrelated", "--n", "2",
                   "--delta-min", "40", "--delta-max", "40", "--delta-step", "1",
                   "--w", "30", "--out", str(tmp_path / "x")])
        assert rc == 3


class TestCurveDump:
    def test_initial_state_elbows(self, tmp_path):
        out = tmp_path / "curve.csv"
        rc = main(["curve", "--state", "initial", "--delta", "3", "--n", "1",
                   "--out", str(out)])
        assert rc == 0
        rows = out.read_text().splitlines()
        assert rows[0] == "x,y,log_x"
        assert rows[1].startswith("0,0,")
        xs = [float(r.split(",")[0]) for r in rows[1:]]
        ys = [float(r.split(",")[1]) for r in rows[1:]]
        assert xs == sorted(xs)
        z = 1 + math.exp(-3.0) + math.exp(-30.0)
        assert xs[-1] == pytest.approx(z, rel=1e-12)
        assert ys[-1] == pytest.approx(1.0, abs=1e-10)

    def test_final_state_gamma(self, tmp_path):
        out = tmp_path / "curve.csv"
        rc = main(["curve", "--state", "final", "--delta", "3", "--n", "2",
                   "--gamma", "0.7", "--out", str(out)])
        assert rc == 0
        assert len(out.read_text().splitlines()) >= 4

    def test_final_state_pops_vector(self, tmp_path):
        out = tmp_path / "curve.csv"
        rc = main(["curve", "--state", "final", "--delta", "3", "--n", "2",
                   "--pops", "0.25,0.25,0.25", "--out", str(out)])
        assert rc == 0

    def test_binding_elbow_case_split_around_kink(self, tmp_path):
        # the binding constraint of the optimal final curve flips across the
        # uncorrelated kink: the doubly-switched prefix binds below it, the
        # full switched prefix binds above it
        from switchyield.states import ModelParams, tensor_power_grouped, \
            uncorrelated_final_state
        from switchyield.curves import build_curve
        from switchyield.closedform import branch_points_two_mol, gamma2_uncorrelated
        d_u2, _, _ = branch_points_two_mol(0.5, 30.0)
        tight_sets = []
        for d in (d_u2 - 0.4, d_u2 + 0.4):
            gamma = gamma2_uncorrelated(d, 0.5, 30.0)
            p = ModelParams(d, 30.0, 0.5, 2)
            rho = build_curve(tensor_power_grouped(p))
            sigma = build_curve(uncorrelated_final_state(p, gamma))
            tight = tuple(
                k for k, (x, y) in enumerate(sigma.elbows)
                if abs(rho.evaluate(x).to_linear() - y.to_linear()) < 1e-9
                and y.to_linear() < 1 - 1e-12)
            tight_sets.append(tight)
        assert tight_sets[0] != tight_sets[1]
