"""CLI driver: schemas, exit codes, determinism, config file."""

import json
import math

import pytest

from mirrorspec import cli


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_mirror_paths_schema_and_summary(capsys):
    code, out, _ = run(["mirror-paths", "--n", "4"], capsys)
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "path_id,bounce_sequence,tau,tau_as_log_of"
    assert lines[1].startswith("0,2-1-2,")
    assert lines[2].startswith("1,4,")
    assert lines[3].startswith("summary,composite,")


def test_mirror_paths_prime(capsys):
    code, out, _ = run(["mirror-paths", "--n", "7"], capsys)
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 3
    assert lines[-1].startswith("summary,prime,")


def test_exit_code_config_error(capsys):
    code, _, err = run(["mirror-paths", "--n", "1"], capsys)
    assert code == 2 and "configuration error" in err
    code, _, err = run(["scan", "--model", "dirichlet", "--grid", "1"], capsys)
    assert code == 2


def test_empty_scan_range_header_only(capsys):
    code, out, _ = run(["scan", "--emin", "5", "--emax", "4", "--grid", "8",
                        "--model", "harmonic", "--jobs", "1"], capsys)
    assert code == 0
    assert out.strip() == "E,theta,verdict,growth_exponent,ci_lo,ci_hi,R_K,Phi_K"


def test_scan_deterministic_and_serial_parallel_equal(tmp_path, capsys):
    base = ["scan", "--model", "harmonic", "--epsilon", "0.3", "--emin", "2",
            "--emax", "4", "--grid", "6", "--kmax", "200"]
    paths = [tmp_path / n for n in ("a.csv", "b.csv", "c.csv")]
    for p, jobs in zip(paths, ("1", "1", "2")):
        code = cli.main(base + ["--jobs", jobs, "--out", str(p)])
        assert code == 0
    a, b, c = (p.read_bytes() for p in paths)
    assert a == b == c


def test_zeros_first_row(capsys):
    code, out, _ = run(["zeros", "--emax", "22"], capsys)
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "n,E_n,Zprime_sign,theta_at_zero,vartheta_star"
    first = lines[1].split(",")
    assert first[0] == "1"
    assert abs(float(first[1]) - 14.134725) < 1e-4
    assert first[2] == "1"
    assert len(lines) == 3  # two zeros below 22


def test_zeros_dirichlet_variant(capsys):
    code, out, _ = run(["zeros", "--modulus", "4", "--char-index", "1",
                        "--emax", "8"], capsys)
    lines = out.strip().splitlines()
    assert code == 0
    assert abs(float(lines[1].split(",")[1]) - 6.0209489) < 1e-4


def test_amp_trace_columns_and_rho_free_model(capsys):
    code, out, _ = run(["amp-trace", "--model", "polylog", "--epsilon", "0",
                        "--emin", "3.0", "--theta", "1.0", "--kmax", "5"], capsys)
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "k,A2_exact,A2_bch,R_k,Phi_k"
    for row in lines[1:]:
        vals = row.split(",")
        assert abs(float(vals[1]) - 2.0) < 1e-12  # no couplings: constant norm
        assert abs(float(vals[3])) < 1e-15


def test_json_format_mirrors_columns(capsys):
    code, out, _ = run(["theta-of-zero", "--grid", "1", "--format", "json"],
                       capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload[0].keys() == {"n", "E_n", "vartheta_star"}
    assert abs(payload[0]["E_n"] - 14.134725) < 1e-4


def test_xp_spectrum_counts(capsys):
    code, out, _ = run(["xp-spectrum", "--emax", "13"], capsys)
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "E_root,residual,count_formula"
    assert len(lines) == 3
    assert abs(float(lines[1].split(",")[0]) - 9.3259) < 1e-3


def test_perron_convergent_region(capsys):
    code, out, _ = run(["perron", "--sigma", "2", "--emin", "0",
                        "--kmax", "100000", "--grid", "6"], capsys)
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "x,re,im,modulus,log_x_fit"
    last = lines[-1].split(",")
    assert abs(float(last[3]) - 6 / math.pi**2) < 1e-3


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("model=harmonic\nepsilon=0.3\nemin=2\nemax=2\ngrid=1\nkmax=150\n")
    out1 = tmp_path / "o1.csv"
    code = cli.main(["scan", "--config", str(cfg), "--jobs", "1",
                     "--out", str(out1)])
    assert code == 0
    rows = out1.read_text().strip().splitlines()
    assert len(rows) == 2 and rows[1].startswith("2,")
    # explicit flag overrides the file value
    out2 = tmp_path / "o2.csv"
    code = cli.main(["scan", "--config", str(cfg), "--emin", "3", "--emax", "3",
                     "--jobs", "1", "--out", str(out2)])
    assert code == 0
    assert out2.read_text().strip().splitlines()[1].startswith("3,")


def test_float_formatting_roundtrip(capsys):
    code, out, _ = run(["theta-of-zero", "--grid", "1"], capsys)
    val = out.strip().splitlines()[1].split(",")[1]
    assert float(val) == float(format(float(val), ".17g"))
    assert abs(float(val) - 14.1347251417347) < 1e-10
