import math

import numpy as np
import pytest

import tricomi_lab as tl


def test_besselk_closed_form():
    for z in (0.5, 1.0, 5.0, 20.0):
        exact = math.sqrt(math.pi / (2 * z)) * math.exp(-z)
        assert tl.besselk(0.5, z) == pytest.approx(exact, rel=1e-13)
    assert tl.besselk_scaled(0.5, 1.0) == pytest.approx(math.sqrt(math.pi / 2), rel=1e-13)


def test_invalid_arguments_raise_value_error():
    with pytest.raises(ValueError):
        tl.besselk(0.5, -1.0)
    with pytest.raises(ValueError):
        tl.ModelParams(p=0.5)
    with pytest.raises(ValueError):
        tl.TestFunctionSet(tl.ModelParams(mu=1, nu=1)).rho(2.0)


def test_model_params_and_rho():
    p = tl.ModelParams(m=3, mu=10, nu=4)
    assert p.delta == 17
    tfs = tl.TestFunctionSet(p)
    assert tfs.order == pytest.approx(math.sqrt(17) / 8)
    assert abs(tfs.rho_ode_residual(2.0)) < 1e-10
    assert tfs.rho(1.5) > 0
    kind, alpha = tl.ModelParams(p=2).lifespan_exponent()
    assert kind == "power" and alpha == pytest.approx(1.0)


def test_ode_figures():
    f1 = tl.ode_figure(1)
    assert isinstance(f1["F2"], np.ndarray)
    assert f1["F2"].min() > 0
    assert tl.ode_figure(4)["sign_changes"] >= 2
    assert tl.ode_figure(7)["min_F2"] < tl.ode_figure(6)["min_F2"]
    custom = tl.ode_run(tl.ModelParams(m=3, mu=10, nu=4), f1=1.0, f1p=1.0, t_end=3.0)
    np.testing.assert_allclose(custom["F2"], custom["F1p"] + custom["t"] ** 3 * custom["F1"], rtol=1e-12, atol=1e-14)


def test_pde_run_and_sweep():
    cfg = tl.PdeConfig(tl.ModelParams(m=1, mu=2, eps=0.1))
    cfg.nx = 401
    cfg.t_max = 1.5
    cfg.frames = 5
    run = tl.pde_run(cfg)
    assert run["reason"] == "survived"
    assert len(run["t"]) == 6
    assert run["u"].shape == run["x"].shape

    sweep_cfg = tl.PdeConfig(tl.ModelParams(eps=0.5, radius=4.0))
    sweep_cfg.u0 = "zero"
    sweep_cfg.dx = 0.08
    sweep_cfg.t_max = 40.0
    sweep_cfg.keep_fields = False
    rec = tl.lifespan_sweep(sweep_cfg, [0.5, 0.4, 0.3], threads=2)
    times = [t for _, t, _ in rec["entries"]]
    assert all(t is not None for t in times)
    assert times == sorted(times)
    assert rec["alpha"] == pytest.approx(1.0)


def test_run_cli():
    code, out, _ = tl.run_cli(["bessel", "--order", "0.5", "--z", "1"])
    assert code == 0
    assert out.startswith("0.4610685044")
    code, _, err = tl.run_cli(["bessel", "--order", "0.5"])
    assert code == 2 and "usage error" in err
