import numpy as np
import pytest

from plotkit.cli import main
from plotkit.render import (
    PlotSpec,
    SchemaError,
    build_figure,
    read_sweep_csv,
    render_heatmap,
)

HEADER = "theta,tau,dH,overlap_angle,E_G,G_E,lhs,delta"


def write_csv(path, thetas, taus, delta_fn):
    lines = [HEADER]
    for theta in thetas:
        for tau in taus:
            d = delta_fn(theta, tau)
            lines.append(f"{theta},{tau},0.5,0.3,0.2,0.1,{0.1 + d},{d}")
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def sweep_csv(tmp_path):
    return write_csv(
        tmp_path / "sweep.csv",
        np.linspace(0.0, np.pi, 5),
        np.linspace(0.0, 3.0, 7),
        lambda theta, tau: tau * np.sin(theta) * 0.4,
    )


class TestReadSweepCsv:
    def test_grid_shape_and_values(self, sweep_csv):
        grid = read_sweep_csv(sweep_csv)
        assert grid.delta.shape == (5, 7)
        assert grid.thetas[0] == 0.0
        assert grid.taus[-1] == 3.0
        assert grid.delta[0, 0] == 0.0

    def test_missing_column_named_in_error(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("theta,tau,dH,overlap_angle,E_G,G_E,lhs\n0,0,0,0,0,0,0\n")
        with pytest.raises(SchemaError, match="'delta'"):
            read_sweep_csv(bad)

    def test_header_only_is_rejected(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text(HEADER + "\n")
        with pytest.raises(ValueError, match="empty grid"):
            read_sweep_csv(empty)

    def test_ragged_grid_is_rejected(self, tmp_path):
        ragged = tmp_path / "ragged.csv"
        ragged.write_text(HEADER + "\n0,0,0,0,0,0,0,0\n0,1,0,0,0,0,0,0\n1,0,0,0,0,0,0,0\n")
        with pytest.raises(ValueError, match="do not tile"):
            read_sweep_csv(ragged)


class TestBuildFigure:
    def test_axis_orientation(self, sweep_csv):
        fig = build_figure(PlotSpec(inputs=(str(sweep_csv),)))
        ax = fig.axes[0]
        assert "tau" in ax.get_xlabel()
        assert "theta" in ax.get_ylabel()
        assert ax.get_xlim()[1] == pytest.approx(3.0, abs=0.3)   # time horizontal
        assert ax.get_ylim()[1] == pytest.approx(np.pi, abs=0.4)  # theta vertical

    def test_panel_count_matches_layout(self, tmp_path):
        paths = [
            write_csv(tmp_path / f"p{k}.csv", [0.0, 1.0], [0.0, 1.0], lambda a, b: a + b + k)
            for k in range(6)
        ]
        fig = build_figure(PlotSpec(inputs=tuple(map(str, paths)), layout=(2, 3)))
        panel_axes = [ax for ax in fig.axes if ax.get_xlabel()]
        assert len(panel_axes) == 6

    def test_layout_mismatch_rejected(self, sweep_csv):
        with pytest.raises(ValueError, match="panels"):
            PlotSpec(inputs=(str(sweep_csv),), layout=(2, 3))

    def test_negative_delta_warns_and_marks(self, tmp_path):
        path = write_csv(
            tmp_path / "neg.csv", [0.0, 1.0], [0.0, 1.0],
            lambda theta, tau: -0.5 if theta == 1.0 and tau == 1.0 else 0.1,
        )
        with pytest.warns(UserWarning, match="delta < -1e-9"):
            fig = build_figure(PlotSpec(inputs=(str(path),)))
        markers = [c for c in fig.axes[0].collections if c.get_offsets().shape[0] == 1]
        assert markers, "expected a visible marker on the violating cell"


class TestRenderHeatmap:
    def test_writes_single_panel_image(self, sweep_csv, tmp_path):
        out = tmp_path / "fig1.png"
        result = render_heatmap(PlotSpec(inputs=(str(sweep_csv),), out=str(out)))
        assert result == out
        assert out.stat().st_size > 1000

    def test_six_panel_grid(self, tmp_path):
        paths = [
            write_csv(
                tmp_path / f"panel{k}.csv",
                np.linspace(0, np.pi, 4), np.linspace(0, 3, 5),
                lambda theta, tau, k=k: 0.2 * k + tau * np.sin(theta),
            )
            for k in range(6)
        ]
        out = tmp_path / "fig2.png"
        render_heatmap(
            PlotSpec(inputs=tuple(map(str, paths)), layout=(2, 3), out=str(out))
        )
        assert out.exists()

    def test_no_file_written_on_schema_error(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("x,y\n1,2\n")
        out = tmp_path / "should_not_exist.png"
        with pytest.raises(SchemaError):
            render_heatmap(PlotSpec(inputs=(str(bad),), out=str(out)))
        assert not out.exists()

    def test_deterministic_bytes(self, sweep_csv, tmp_path):
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        render_heatmap(PlotSpec(inputs=(str(sweep_csv),), out=str(a)))
        render_heatmap(PlotSpec(inputs=(str(sweep_csv),), out=str(b)))
        assert a.read_bytes() == b.read_bytes()


class TestCli:
    def test_end_to_end(self, sweep_csv, tmp_path, capsys):
        out = tmp_path / "cli.png"
        code = main(["--inputs", str(sweep_csv), "--layout", "1x1", "--out", str(out)])
        assert code == 0
        assert out.exists()
        assert str(out) in capsys.readouterr().out

    def test_schema_failure_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n")
        code = main(["--inputs", str(bad), "--out", str(tmp_path / "x.png")])
        assert code == 1
        assert "missing required column" in capsys.readouterr().err

    def test_bad_layout_string(self, capsys):
        with pytest.raises(SystemExit):
            main(["--inputs", "x.csv", "--layout", "banana", "--out", "y.png"])
