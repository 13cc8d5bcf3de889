"""Figure renderer: schema validation, shading fidelity, determinism."""

import numpy as np
import pytest

figrender = pytest.importorskip("figrender")
PIL_Image = pytest.importorskip("PIL.Image")

from figrender import SHADED_RGB, UNSHADED_RGB, FigureSpec, SchemaError, render


def write_region_csv(path, resolution=200):
    """200x200 convergence-region CSV straight from the closed-form rule."""
    mus = np.linspace(0.0, 1.0, resolution)
    alphas = np.linspace(0.005, 1.0, resolution)
    shaded_cells = total = 0
    with open(path, "w") as fh:
        fh.write("mu,alpha,shaded\n")
        for mu in mus:
            for alpha in alphas:
                shaded = int(1.0 + mu > 1.5 * alpha)
                shaded_cells += shaded
                total += 1
                fh.write(f"{float(mu)!r},{float(alpha)!r},{shaded}\n")
    return shaded_cells / total


def write_quadbench_csv(path, methods=("gd",)):
    with open(path, "w") as fh:
        fh.write("t,method,logJ,theta0,theta1\n")
        for method in methods:
            for t in range(1, 51):
                logj = 2.0 - 0.05 * t
                fh.write(f"{t},{method},{logj!r},{float(np.cos(t / 7))!r},{float(np.sin(t / 7))!r}\n")


def write_autoencoder_csv(path):
    with open(path, "w") as fh:
        fh.write("epoch,method,train_bce\n")
        for method in ("gd", "nag", "rud"):
            for epoch in range(1, 21):
                bce = 0.7 * np.exp(-0.1 * epoch * (1.0 if method == "gd" else 2.0))
                fh.write(f"{epoch},{method},{float(bce)!r}\n")


def pixel_fraction(png_path):
    img = np.asarray(PIL_Image.open(png_path).convert("RGB"))
    shaded = int(np.all(img == SHADED_RGB, axis=-1).sum())
    unshaded = int(np.all(img == UNSHADED_RGB, axis=-1).sum())
    assert shaded + unshaded > 0, "no palette pixels found"
    return shaded / (shaded + unshaded)


class TestShadingFidelity:
    def test_fig1a_pixel_fraction_matches_csv(self, tmp_path):
        """Shaded pixel share equals the CSV's shaded-cell share within 2%."""
        csv_path = tmp_path / "region.csv"
        cell_fraction = write_region_csv(csv_path, resolution=200)
        out = tmp_path / "fig1a.png"
        render(FigureSpec("fig1a", csv_path, out))
        frac = pixel_fraction(out)
        assert abs(frac - cell_fraction) / cell_fraction <= 0.02, (frac, cell_fraction)
        print(f"[acceptance] fig1a shading fidelity "
              f"(pixels {frac:.4f} vs cells {cell_fraction:.4f}): PASS")

    def test_all_region_panels_render(self, tmp_path):
        csv_path = tmp_path / "region.csv"
        write_region_csv(csv_path, resolution=40)
        for fig in ("fig1a", "fig1b", "fig1c", "fig1d"):
            out = tmp_path / f"{fig}.png"
            render(FigureSpec(fig, csv_path, out))
            assert out.stat().st_size > 0


class TestSchemaValidation:
    def test_missing_column_named(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("mu,alpha\n0.1,0.2\n")
        with pytest.raises(SchemaError, match="shaded"):
            render(FigureSpec("fig1a", bad, tmp_path / "x.png"))

    def test_empty_csv_rejected(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("mu,alpha,shaded\n")
        with pytest.raises(SchemaError, match="no data rows"):
            render(FigureSpec("fig1a", empty, tmp_path / "x.png"))

    def test_unknown_figure_id_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="fig9"):
            FigureSpec("fig9", tmp_path / "a.csv", tmp_path / "b.png")

    def test_quadbench_schema_for_fig2b(self, tmp_path):
        bad = tmp_path / "qb.csv"
        bad.write_text("t,method,logJ\n1,gd,0.5\n")
        with pytest.raises(SchemaError, match="theta0"):
            render(FigureSpec("fig2b", bad, tmp_path / "x.png"))


class TestCurveFigures:
    def test_fig2a_single_method(self, tmp_path):
        csv_path = tmp_path / "qb.csv"
        write_quadbench_csv(csv_path, methods=("gd",))
        out = tmp_path / "fig2a.png"
        render(FigureSpec("fig2a", csv_path, out))
        assert out.stat().st_size > 0

    def test_fig2b_and_fig3(self, tmp_path):
        qb = tmp_path / "qb.csv"
        write_quadbench_csv(qb, methods=("gd", "nag", "rud"))
        render(FigureSpec("fig2b", qb, tmp_path / "fig2b.png"))
        ae = tmp_path / "ae.csv"
        write_autoencoder_csv(ae)
        render(FigureSpec("fig3", ae, tmp_path / "fig3.png"))
        assert (tmp_path / "fig2b.png").stat().st_size > 0
        assert (tmp_path / "fig3.png").stat().st_size > 0


class TestDeterminism:
    def test_identical_inputs_identical_pixels(self, tmp_path):
        csv_path = tmp_path / "region.csv"
        write_region_csv(csv_path, resolution=30)
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        render(FigureSpec("fig1a", csv_path, a))
        render(FigureSpec("fig1a", csv_path, b))
        pa = np.asarray(PIL_Image.open(a).convert("RGB"))
        pb = np.asarray(PIL_Image.open(b).convert("RGB"))
        assert np.array_equal(pa, pb)


class TestCli:
    def test_render_cli_round_trip(self, tmp_path, capsys):
        csv_path = tmp_path / "region.csv"
        write_region_csv(csv_path, resolution=20)
        out = tmp_path / "out.png"
        assert figrender.main(["--figure", "fig1a", "--in", str(csv_path),
                               "--out", str(out)]) == 0
        assert out.exists()

    def test_render_cli_schema_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("mu,alpha\n0.1,0.2\n")
        assert figrender.main(["--figure", "fig1a", "--in", str(bad),
                               "--out", str(tmp_path / "x.png")]) == 1
        assert "shaded" in capsys.readouterr().err
