import math

import numpy as np
import pytest

from setsp import io as setfn_io
from setsp.cli import main, parse_oracle_spec
from setsp.core import GroundSet, SetFunction
from setsp.transforms import dsft


def _write_signal(path, values, n):
    setfn_io.write_setfn(path, SetFunction(GroundSet(n), values))
    return str(path)


def test_transform_model3_twice_is_identity(tmp_path):
    rng = np.random.default_rng(40)
    src = _write_signal(tmp_path / "s.setfn", rng.standard_normal(16), 4)
    mid = str(tmp_path / "mid.setfn")
    out = str(tmp_path / "out.setfn")
    assert main(["transform", "--model", "3", "--in", src, "--out", mid]) == 0
    # the model-3 transform is self-inverse, so forward twice returns the input
    spec = setfn_io.read_spectrum(mid)
    setfn_io.write_setfn(tmp_path / "mid2.setfn", SetFunction(spec.ground, spec.coeffs))
    assert main(["transform", "--model", "3", "--in", str(tmp_path / "mid2.setfn"), "--out", out]) == 0
    original = setfn_io.read_setfn(src)
    final = setfn_io.read_spectrum(out)
    assert np.abs(final.coeffs - original.values).max() < 1e-12


def test_transform_forward_inverse_roundtrip(tmp_path):
    rng = np.random.default_rng(41)
    src = _write_signal(tmp_path / "s.setfn", rng.standard_normal(32), 5)
    spec = str(tmp_path / "spec.setfn")
    back = str(tmp_path / "back.setfn")
    assert main(["transform", "--model", "5", "--in", src, "--out", spec]) == 0
    assert main(["transform", "--model", "5", "--inverse", "--in", spec, "--out", back]) == 0
    original = setfn_io.read_setfn(src)
    final = setfn_io.read_setfn(back)
    assert np.abs(final.values - original.values).max() < 1e-12


def test_transform_model_mismatch_fails(tmp_path):
    rng = np.random.default_rng(42)
    src = _write_signal(tmp_path / "s.setfn", rng.standard_normal(8), 3)
    spec = str(tmp_path / "spec.setfn")
    assert main(["transform", "--model", "2", "--in", src, "--out", spec]) == 0
    rc = main(["transform", "--model", "4", "--inverse", "--in", spec, "--out", str(tmp_path / "x.setfn")])
    assert rc == 2


def test_convolve_and_freqresp(tmp_path):
    rng = np.random.default_rng(43)
    src = _write_signal(tmp_path / "s.setfn", rng.standard_normal(8), 3)
    taps = tmp_path / "taps.setfn"
    setfn_io.write_entries(taps, 3, "sparse", None, [(0, 1.0)])
    out = str(tmp_path / "conv.setfn")
    assert main(["convolve", "--model", "4", "--filter", str(taps), "--in", src, "--out", out]) == 0
    result = setfn_io.read_setfn(out)
    assert np.abs(result.values - setfn_io.read_setfn(src).values).max() < 1e-12

    fr_out = str(tmp_path / "fr.setfn")
    assert main(["freqresp", "--model", "1", "--filter", str(taps), "--out", fr_out]) == 0
    fr = setfn_io.read_setfn(fr_out)
    assert np.array_equal(fr.values, np.ones(8))


def test_generate_gaussian_identity(tmp_path):
    cov = tmp_path / "cov.csv"
    setfn_io.write_covariance(cov, np.eye(3))
    out = str(tmp_path / "ent.setfn")
    assert main(["generate", "gaussian", "--cov", str(cov), "--out", out]) == 0
    fn = setfn_io.read_setfn(out)
    unit = 0.5 * (1.0 + math.log(2.0 * math.pi))
    expected = unit * np.bitwise_count(np.arange(8))
    assert np.abs(fn.values - expected).max() < 1e-12


def test_generate_modular_is_one_bandlimited(tmp_path):
    out = str(tmp_path / "mod.setfn")
    assert main(["generate", "modular", "--n", "5", "--seed", "3", "--out", out]) == 0
    fn = setfn_io.read_setfn(out)
    spec = dsft(3, fn)
    high = np.bitwise_count(np.arange(32)) >= 2
    assert np.abs(spec.coeffs[high]).max() < 1e-10


def test_generate_sparse4_zero_k(tmp_path):
    out = str(tmp_path / "zero.setfn")
    assert main(["generate", "sparse4", "--n", "4", "--k", "0", "--seed", "1", "--out", out]) == 0
    oracle = parse_oracle_spec(f"sparse4:{out}")
    assert oracle.query_many(np.arange(16)).tolist() == [0.0] * 16


def test_generate_coverage(tmp_path):
    frag = tmp_path / "frag.setfn"
    # sparse model-4 file: mask 0 holds s_N, others hold negated weights
    setfn_io.write_entries(frag, 2, "sparse", 4, [(0, 6.0), (1, -1.0), (2, -3.0), (3, -2.0)])
    out = str(tmp_path / "cov.setfn")
    assert main(["generate", "coverage", "--fragments", str(frag), "--out", out]) == 0
    fn = setfn_io.read_setfn(out)
    assert fn.values.tolist() == [0.0, 3.0, 5.0, 6.0]


def test_compress_command_orders_methods(tmp_path):
    cov = tmp_path / "cov.csv"
    rng = np.random.default_rng(44)
    W = rng.standard_normal((8, 8))
    setfn_io.write_covariance(cov, W @ W.T / 8 + np.eye(8))
    out = str(tmp_path / "table.csv")
    rc = main([
        "compress", "--oracle", f"gaussian:{cov}", "--order", "2",
        "--wht-samples", "64", "--probes", "2000", "--seed", "5", "--out", out,
    ])
    assert rc == 0
    lines = (tmp_path / "table.csv").read_text().splitlines()
    assert lines[0].startswith("method,")
    assert len(lines) == 3
    assert lines[1].startswith("dsft4-band,")
    assert lines[2].startswith("wht-regression,")


def test_sample_and_error_commands(tmp_path):
    spec_path = str(tmp_path / "truth.setfn")
    assert main(["generate", "sparse4", "--n", "10", "--k", "20", "--seed", "6", "--out", spec_path]) == 0
    from setsp.sampling import load_sparse_spectrum, save_support

    truth = load_sparse_spectrum(spec_path)
    support_path = str(tmp_path / "support.setfn")
    save_support(support_path, truth.support)

    coeff_path = str(tmp_path / "coeffs.setfn")
    rc = main(["sample", "--oracle", f"sparse4:{spec_path}", "--support", support_path, "--out", coeff_path])
    assert rc == 0
    got = load_sparse_spectrum(coeff_path)
    assert np.abs(got.coeffs - truth.coeffs).max() < 1e-10

    err_path = str(tmp_path / "err.csv")
    rc = main([
        "error", "--oracle", f"sparse4:{spec_path}", "--approx", coeff_path,
        "--probes", "500", "--seed", "2", "--out", err_path,
    ])
    assert rc == 0
    row = (tmp_path / "err.csv").read_text().splitlines()[1].split(",")
    assert float(row[7]) < 1e-10  # exact theorem case: zero relative error


def test_oracle_spec_errors():
    with pytest.raises(ValueError, match="unknown oracle kind"):
        parse_oracle_spec("mystery:thing")
    with pytest.raises(ValueError, match="parameters"):
        parse_oracle_spec("gaussian")
    with pytest.raises(ValueError, match="seed"):
        parse_oracle_spec("synthetic-sparse:n=4,k=2")


def test_synthetic_oracle_spec():
    oracle = parse_oracle_spec("synthetic-sparse:n=6,k=5,seed=11")
    assert oracle.ground.n == 6
    values = oracle.query_many(np.arange(64))
    assert np.isfinite(values).all()


def test_missing_file_exits_nonzero(tmp_path):
    rc = main(["transform", "--model", "1", "--in", str(tmp_path / "nope.setfn"), "--out", str(tmp_path / "o")])
    assert rc == 2


def test_transform_reports_addition_count(tmp_path, capsys):
    rng = np.random.default_rng(50)
    src = _write_signal(tmp_path / "s.setfn", rng.standard_normal(1024), 10)
    assert main(["transform", "--model", "1", "--in", src, "--out", str(tmp_path / "o.setfn")]) == 0
    err = capsys.readouterr().err
    assert "additions=5120" in err  # n * 2**(n-1) for n=10
    assert "n=10" in err and "model=1" in err


def test_help_lists_subcommands():
    from setsp.cli import build_parser

    text = build_parser().format_help()
    for name in ("transform", "convolve", "freqresp", "generate", "compress", "sample", "error"):
        assert name in text
