"""CLI behavior tests: exit codes, grammar errors, output determinism.

The binary path arrives via the GAUSSUM_CLI environment variable (set by
ctest); defaults to the usual build location.
"""

import json
import os
import pathlib
import subprocess

import pytest

CLI = os.environ.get(
    "GAUSSUM_CLI",
    str(pathlib.Path(__file__).resolve().parents[2] / "build" / "tools" / "gaussum"),
)

pytestmark = pytest.mark.skipif(not os.path.exists(CLI), reason="gaussum binary not built")


def run(*args, **kw):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kw)


def test_usage_error_without_subcommand():
    res = run()
    assert res.returncode == 2


def test_verify_small_field_passes():
    res = run("verify", "--fields", "5,9")
    assert res.returncode == 0
    assert "conjugation" in res.stdout
    assert "hd_lifting" in res.stdout
    assert "within tolerance" in res.stdout


def test_verify_rejects_empty_field_list():
    res = run("verify", "--fields", "")
    assert res.returncode == 2


def test_verify_char2_field():
    # characteristic 2 exercises the chi(-1) = 1 branch
    res = run("verify", "--fields", "4")
    assert res.returncode == 0


def test_gauss_dump():
    res = run("gauss", "--field", "5", "--all")
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    assert lines[0] == "index,re,im,abs"
    assert len(lines) == 5
    first = lines[1].split(",")
    assert abs(float(first[1]) - 1.0) < 1e-10


def test_weyl_csv_and_manifest(tmp_path):
    out = tmp_path / "weyl.csv"
    args = (
        "weyl",
        "--q", "3",
        "--entries", "[eta=0/1; a=(1)]*[eta=0/1; a=(2)]",
        "--c", "(1,-1)",
        "--m-min", "1",
        "--m-max", "5",
        "--out", str(out),
    )
    res = run(*args)
    assert res.returncode == 0
    text = out.read_text()
    lines = text.strip().splitlines()
    assert lines[0] == "m,q,c,re,im,abs,s_size,a,rhs"
    # m = 1 is inadmissible for this config: first row is m = 2
    assert lines[1].startswith("2,3,")
    # rhs populated only past the calibration window
    assert lines[1].endswith(",")
    assert not lines[3].endswith(",")

    manifest = json.loads((tmp_path / "weyl.csv.manifest.json").read_text())
    assert manifest["config"]["command"] == "weyl"
    assert manifest["config"]["seed"] == 1
    assert manifest["version"]["gaussum"]

    # identical configuration implies bit-identical output
    out2 = tmp_path / "weyl2.csv"
    res = run(*args[:-1], str(out2))
    assert res.returncode == 0
    assert out2.read_text() == text


def test_weyl_parse_error_position():
    res = run("weyl", "--q", "3", "--entries", "[eta=0/1 a=(1)]")
    assert res.returncode == 2
    assert "position" in res.stderr


def test_sweep_q(tmp_path):
    out = tmp_path / "sweep.csv"
    res = run(
        "sweep-q",
        "--primes", "5..13",
        "--entries", "[eta=0/1; a=(1)]*[eta=0/1; a=(2)]",
        "--c", "(1,-1)",
        "--out", str(out),
    )
    assert res.returncode == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "q,c,re,im,abs,s_size,a"
    assert [line.split(",")[0] for line in lines[1:]] == ["5", "7", "11", "13"]


def test_sweep_q_skips_inadmissible_primes():
    # q = 3 has q <= 1 + a for this config (a = 3): skipped with a note
    res = run("sweep-q", "--primes", "3..7",
              "--entries", "[eta=0/1; a=(1)]*[eta=0/1; a=(2)]", "--c", "(1,-1)")
    assert res.returncode == 0
    rows = res.stdout.strip().splitlines()[1:]
    assert [r.split(",")[0] for r in rows] == ["5", "7"]
    assert "inadmissible" in res.stderr


def test_sweep_q_counterexample_rejected():
    # a = (q-1) breaks the uniform exponent cap
    res = run(
        "sweep-q",
        "--primes", "5..13",
        "--entries", "[eta=1/2; a=(q-1)]",
        "--c", "(1)",
    )
    assert res.returncode == 2
    assert "cap" in res.stderr


def test_sweep_q_counterexample_is_constant_when_cap_lifted():
    # a = (q-1) makes chi^{q-1} trivial, so Phi is constant in chi and
    # |Sigma_1| = 1 for every prime: the series does not decay. The default
    # cap exists to exclude exactly this.
    res = run(
        "sweep-q",
        "--primes", "5..13",
        "--entries", "[eta=1/2; a=(q-1)]",
        "--c", "(1)",
        "--amax", "100",
    )
    assert res.returncode == 0
    for line in res.stdout.strip().splitlines()[1:]:
        abs_sigma = float(line.split(",")[4])
        assert abs(abs_sigma - 1.0) < 1e-9


def test_jacobi_fixed_tail_preset():
    res = run("jacobi", "--preset", "fixed_tail", "--q", "7", "--free-count", "1",
              "--etas", "1/2;1/3", "--m-min", "1", "--m-max", "2", "--cmax", "1")
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    assert lines[0] == "m,c,re,im,abs,s_size"
    # output lives on (S^1)^2: c tuples have two coordinates
    assert '"(0,1)"' in res.stdout or '"(1,0)"' in res.stdout


def test_sweep_q_matches_weyl_at_m1():
    cfg = "[eta=0/1; a=(1)]*[eta=0/1; a=(2)]"
    sweep = run("sweep-q", "--primes", "7", "--entries", cfg, "--c", "(1,-1)")
    weyl = run("weyl", "--q", "7", "--entries", cfg, "--c", "(1,-1)",
               "--m-min", "1", "--m-max", "1")
    assert sweep.returncode == 0 and weyl.returncode == 0
    srow = sweep.stdout.strip().splitlines()[1].split(",")
    wrow = weyl.stdout.strip().splitlines()[1].split(",")
    # sweep columns: q,c,re,im,... weyl columns: m,q,c,re,im,...
    assert srow[3] == wrow[4]
    assert srow[4] == wrow[5]


def test_decompose_worked_example(tmp_path):
    cert = tmp_path / "cert.json"
    res = run(
        "decompose",
        "[eta=0/1; a=(2)]*[eta=0/1; a=(1); exp=-1]*[eta=1/2; a=(1); exp=-1]",
        "--p", "5",
        "--q", "5",
        "--crosscheck",
        "--out", str(cert),
    )
    assert res.returncode == 0
    assert res.stdout.strip() == "InH"
    data = json.loads(cert.read_text())
    assert data["verdict"] == "InH"
    assert len(data["moves"]) == 1
    assert data["moves"][0]["kind"] == "R"
    assert all(c["deviation"] <= 1e-8 for c in data["crosscheck"])


def test_decompose_not_in_h():
    res = run("decompose", "[eta=0/1; a=(1)]", "--p", "5", "--q", "5")
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert data["verdict"] == "NotInH"
    assert data["witness"]["kind"] == "independent"
    assert data["witness"]["pivot_trace"]


def test_decompose_malformed_grammar():
    res = run("decompose", "[eta=1/2; a=(1]", "--p", "5", "--q", "5")
    assert res.returncode == 2
    assert "position" in res.stderr


def test_jacobi_preset():
    res = run("jacobi", "--preset", "all_free", "--q", "3", "--n", "2",
              "--m-min", "1", "--m-max", "3", "--cmax", "1")
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    assert lines[0] == "m,c,re,im,abs,s_size"
    assert len(lines) > 3


def test_verify_tolerance_failure_exit_code():
    res = run("verify", "--fields", "5", "--tol", "1e-20")
    assert res.returncode == 1
    assert "TOLERANCE FAILURE" in res.stdout


def test_weyl_thread_count_does_not_change_output():
    args = ("weyl", "--q", "3", "--entries", "[eta=0/1; a=(1)]*[eta=0/1; a=(2)]",
            "--c", "(1,-1)", "--m-min", "2", "--m-max", "6")
    one = run(*args, "--threads", "1")
    four = run(*args, "--threads", "4")
    assert one.returncode == 0 and four.returncode == 0
    assert one.stdout == four.stdout


def test_gauss_alpha_twist():
    plain = run("gauss", "--field", "7", "--index", "1")
    twisted = run("gauss", "--field", "7", "--index", "1", "--alpha", "g^0")
    assert plain.stdout == twisted.stdout
    coded = run("gauss", "--field", "7", "--index", "1", "--alpha", "3")
    row = coded.stdout.strip().splitlines()[1].split(",")
    assert abs(float(row[3]) - 7 ** 0.5) < 1e-9  # |G(alpha, chi)| = sqrt(q)


def test_config_file_equivalent_to_flags(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text(
        "[weyl]\n"
        "q=3\n"
        'entries="[eta=0/1; a=(1)]*[eta=0/1; a=(2)]"\n'
        'c="(1,-1)"\n'
        "m-min=2\n"
        "m-max=4\n"
    )
    from_file = run("--config", str(conf), "weyl")
    from_flags = run("weyl", "--q", "3", "--entries", "[eta=0/1; a=(1)]*[eta=0/1; a=(2)]",
                     "--c", "(1,-1)", "--m-min", "2", "--m-max", "4")
    assert from_file.returncode == 0
    assert from_file.stdout == from_flags.stdout


def test_gauss_cache_dir(tmp_path):
    env = dict(os.environ, GAUSSUM_CACHE_DIR=str(tmp_path / "cache"))
    res1 = subprocess.run([CLI, "gauss", "--field", "25", "--all"],
                          capture_output=True, text=True, env=env)
    assert res1.returncode == 0
    cached = list((tmp_path / "cache").glob("*.bin"))
    assert cached
    res2 = subprocess.run([CLI, "gauss", "--field", "25", "--all"],
                          capture_output=True, text=True, env=env)
    assert res2.stdout == res1.stdout
