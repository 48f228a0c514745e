import json

from mdtds.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBall:
    def test_row_counts(self, capsys):
        code, out, err = run(capsys, "ball", "--s", "2", "--n", "1")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 1 + 5
        assert lines[0] == "word,length,parent,letter"
        assert "5 words" in err

    def test_radius_zero(self, capsys):
        code, out, _ = run(capsys, "ball", "--s", "2", "--n", "0")
        assert code == 0
        assert out.strip().splitlines()[1:] == ["e,0,,"]

    def test_three_generators(self, capsys):
        code, out, _ = run(capsys, "ball", "--s", "3", "--n", "2")
        assert code == 0
        # (6 * 5^2 - 2) / 4 = 37 words
        assert len(out.strip().splitlines()) == 1 + 37

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "ball", "--s", "2", "--n", "1",
                           "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert [row["word"] for row in payload] == \
            ["e", "s1", "s1^-1", "s2", "s2^-1"]


class TestOrbit:
    def test_bank_values(self, capsys):
        code, out, _ = run(capsys, "orbit", "--model", "bank", "--q", "2,3",
                           "--x", "1", "--n", "1")
        assert code == 0
        rows = dict(line.split(",") for line in out.strip().splitlines()[1:])
        assert rows == {"e": "1", "s1": "2", "s1^-1": "1/2",
                        "s2": "3", "s2^-1": "1/3"}

    def test_circle_values(self, capsys):
        code, out, _ = run(capsys, "orbit", "--model", "circle",
                           "--theta", "1/2,1/3", "--x", "0", "--n", "1")
        assert code == 0
        values = sorted(line.split(",")[1]
                        for line in out.strip().splitlines()[1:])
        assert values == sorted(["0", "1/2", "1/2", "1/3", "2/3"])

    def test_identity_constant_column(self, capsys):
        code, out, _ = run(capsys, "orbit", "--model", "identity", "--s", "2",
                           "--x", "3/7", "--n", "2")
        assert code == 0
        values = {line.split(",")[1] for line in out.strip().splitlines()[1:]}
        assert values == {"3/7"}


class TestCesaro:
    def test_csv_output(self, capsys):
        code, out, _ = run(capsys, "cesaro", "--model", "bank", "--q", "2,3",
                           "--x", "1", "--nmax", "1")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "n,ball_size,ball_sum,C_n"
        assert lines[1] == "0,1,1,1"
        assert lines[2] == "1,5,41/6,41/30"

    def test_threads_flag_identical_output(self, capsys):
        _, base, _ = run(capsys, "cesaro", "--model", "bank", "--q", "2,3",
                         "--x", "1", "--nmax", "6")
        _, threaded, _ = run(capsys, "cesaro", "--model", "bank", "--q", "2,3",
                             "--x", "1", "--nmax", "6", "--threads", "8")
        assert base == threaded


class TestVerdicts:
    def test_fixed_set_circle(self, capsys):
        code, out, _ = run(capsys, "fixed", "--model", "circle",
                           "--theta", "1,2")
        assert code == 0
        assert json.loads(out)["set"]["kind"] == "full"

    def test_fixed_point_residual(self, capsys):
        code, out, _ = run(capsys, "fixed", "--model", "bank", "--q", "2,3",
                           "--x", "1")
        payload = json.loads(out)
        assert code == 0 and payload["fixed"] is False
        assert payload["residual"] == "2"

    def test_h_fixed_verdict(self, capsys):
        code, out, _ = run(capsys, "fixed", "--model", "circle",
                           "--theta", "1/2,1/3", "--subgroup", "cyclic:s1^2",
                           "--x", "1/5", "--depth", "4")
        payload = json.loads(out)
        assert code == 0 and payload["verdict"]["type"] == "verified_up_to"

    def test_periodic_set_bank(self, capsys):
        code, out, _ = run(capsys, "periodic", "--model", "bank", "--q", "2,3",
                           "--subgroup", "bal:", "--depth", "3")
        payload = json.loads(out)
        assert code == 0 and payload["set"]["kind"] == "all_positive_reals"

    def test_periodic_point_verdict_round_trips(self, capsys):
        code, out, _ = run(capsys, "periodic", "--model", "circle",
                           "--theta", "1/2,1/3", "--subgroup", "cyclic:s1",
                           "--x", "1/5", "--depth-t", "3", "--depth-r", "3")
        payload = json.loads(out)
        assert code == 0
        verdict = payload["verdict"]
        assert verdict["type"] == "counterexample"
        assert json.loads(json.dumps(verdict)) == verdict


class TestPaper:
    def test_single_item(self, capsys):
        code, out, _ = run(capsys, "paper", "--item", "thm6.1")
        assert code == 0
        assert out.startswith("PASS [thm6.1]")

    def test_sign_item_with_parameters(self, capsys):
        code, out, _ = run(capsys, "paper", "--item", "ex3.9", "--q", "4",
                           "--nmax", "8")
        assert code == 0 and out.startswith("PASS")

    def test_all_items_pass(self, capsys):
        code, out, _ = run(capsys, "paper")
        assert code == 0
        statuses = [line.split()[0] for line in out.splitlines()
                    if line and not line.startswith(" ")]
        assert statuses and set(statuses) == {"PASS"}


class TestExitCodes:
    def test_usage_error(self, capsys):
        code, _, err = run(capsys, "orbit", "--model", "bank", "--x", "1",
                           "--n", "1")
        assert code == 1 and "error" in err

    def test_bad_word_text(self, capsys):
        code, _, _ = run(capsys, "periodic", "--model", "bank", "--q", "2,3",
                         "--subgroup", "cyclic:zz", "--depth", "2")
        assert code == 1

    def test_node_cap(self, capsys):
        code, _, err = run(capsys, "ball", "--s", "2", "--n", "10",
                           "--node-cap", "100")
        assert code == 2 and "cap" in err

    def test_domain_violation(self, capsys):
        code, _, _ = run(capsys, "orbit", "--model", "bank", "--q", "2,3",
                         "--x", "-1", "--n", "1")
        assert code == 3

    def test_info(self, capsys):
        code, out, _ = run(capsys, "info")
        payload = json.loads(out)
        assert code == 0 and payload["kernel_backend"] in ("cython", "python")


class TestOutputFile:
    def test_writes_to_path(self, capsys, tmp_path):
        target = tmp_path / "ball.csv"
        code, out, _ = run(capsys, "ball", "--s", "2", "--n", "1",
                           "--output", str(target))
        assert code == 0 and out == ""
        assert len(target.read_text().strip().splitlines()) == 6
