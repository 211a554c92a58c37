"""Renderer tests: dialect parsing, catalogue resolution, drawing
conventions, determinism, and the full pipeline against the simulator CLI.

The simulator is exercised only through its command line and CSV files —
the package boundary is the file format.
"""

import hashlib
import subprocess
import sys

import numpy as np
import pytest

from lambdaloop_plots.render import (DIALECT_COLUMNS, FIGURES,
                                     EmptyInputError, MissingColumnError,
                                     PlotInputError, UnknownFigureError,
                                     _figure, main, read_spectrum, render,
                                     resolve_figure)

HEADER = ",".join(DIALECT_COLUMNS)


def synthetic_csv(path, n=41, with_total=True, header=HEADER, comments=True):
    """A small dialect-conformant file with smooth deterministic curves."""
    lines = []
    if comments:
        lines += ["# format = synthetic-for-tests", "# config_sha256 = 0"]
    lines.append(header)
    for x in np.linspace(-4.0, 4.0, n):
        lor = 1.0 / (1.0 + x * x)
        cells = [f"{x:.17g}", "0"]
        for k in (1.0, 0.5, 0.25):  # direct, loop, counter
            cells += [f"{k * x * lor:.17g}", f"{-k * lor:.17g}"]
        cells += [f"{2 * x * lor:.17g}", f"{-2 * lor:.17g}"] if with_total else ["", ""]
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n")
    return path


def file_hashes(paths):
    return {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in paths}


# ---------------------------------------------------------------------------
# Dialect parsing
# ---------------------------------------------------------------------------


def test_read_spectrum_parses_dialect(tmp_path):
    columns = read_spectrum(synthetic_csv(tmp_path / "s.csv", n=11))
    assert set(columns) == set(DIALECT_COLUMNS)
    assert len(columns["axis"]) == 11
    assert columns["axis"][0] == -4.0 and columns["axis"][-1] == 4.0
    assert not np.any(np.isnan(columns["re_total"]))


def test_read_spectrum_empty_cells_become_nan(tmp_path):
    columns = read_spectrum(synthetic_csv(tmp_path / "s.csv", with_total=False))
    assert np.all(np.isnan(columns["re_total"]))
    assert not np.any(np.isnan(columns["re_direct"]))


def test_empty_inputs_are_rejected(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    with pytest.raises(EmptyInputError):
        read_spectrum(empty)
    header_only = tmp_path / "header.csv"
    header_only.write_text("# comment\n" + HEADER + "\n")
    with pytest.raises(EmptyInputError, match="no data rows"):
        read_spectrum(header_only)


def test_missing_column_is_named(tmp_path):
    truncated = ",".join(DIALECT_COLUMNS[:8])  # no total columns
    path = synthetic_csv(tmp_path / "fig3a.csv", header=truncated,
                         with_total=False)
    # reading succeeds; the failure happens when the total channel is drawn
    read_spectrum(path)
    spec = resolve_figure("fig3a")
    with pytest.raises(MissingColumnError, match="re_total"):
        render(spec, tmp_path, tmp_path / "out")


# ---------------------------------------------------------------------------
# Catalogue
# ---------------------------------------------------------------------------


def test_catalogue_layout():
    assert [len(FIGURES[f].panels) for f in
            ("fig3", "fig4", "fig5", "fig6", "fig7", "fig8")] == [3, 1, 2, 2, 3, 3]
    assert FIGURES["fig3"].channel == "total"
    assert FIGURES["fig4"].channel == "direct"
    assert FIGURES["fig5"].channel == "counter"
    for fid in ("fig6", "fig7", "fig8"):
        assert FIGURES[fid].channel == "direct"


def test_resolve_accepts_panel_ids():
    spec = resolve_figure("fig7b")
    assert spec.panels == ("fig7b",)
    assert spec.channel == "direct"
    with pytest.raises(UnknownFigureError, match="fig3a"):
        resolve_figure("fig99")


# ---------------------------------------------------------------------------
# Drawing conventions
# ---------------------------------------------------------------------------


def test_real_solid_imag_dashed(tmp_path):
    path = synthetic_csv(tmp_path / "fig4.csv")
    spec = resolve_figure("fig4")
    fig = _figure([("fig4", "", read_spectrum(path), path)], spec)
    try:
        ax = fig.axes[0]
        # lines[0] is the zero baseline; the data traces follow
        real, imag = ax.lines[1], ax.lines[2]
        assert real.get_linestyle() == "-" and real.get_color() == "tab:blue"
        assert imag.get_linestyle() == "--" and imag.get_color() == "tab:red"
        assert real.get_label() == "real part"
        assert imag.get_label() == "imag part"
        assert len(real.get_xdata()) == 41
    finally:
        import matplotlib.pyplot as plt
        plt.close(fig)


def test_render_single_and_multi_panel(tmp_path):
    for pid in ("fig3a", "fig3b", "fig3c"):
        synthetic_csv(tmp_path / f"{pid}.csv")
    synthetic_csv(tmp_path / "fig4.csv")

    out4 = render(resolve_figure("fig4"), tmp_path, tmp_path / "out4")
    assert [p.name for p in out4] == ["fig4.png"]

    out3 = render(resolve_figure("fig3"), tmp_path, tmp_path / "out3")
    assert [p.name for p in out3] == ["fig3a.png", "fig3b.png", "fig3c.png",
                                      "fig3.png"]
    assert all(p.stat().st_size > 0 for p in out3)

    only_b = render(resolve_figure("fig3b"), tmp_path, tmp_path / "outb")
    assert [p.name for p in only_b] == ["fig3b.png"]


def test_rerender_is_byte_identical(tmp_path):
    for pid in ("fig5a", "fig5b"):
        synthetic_csv(tmp_path / f"{pid}.csv")
    first = render(resolve_figure("fig5"), tmp_path, tmp_path / "a")
    second = render(resolve_figure("fig5"), tmp_path, tmp_path / "b")
    assert file_hashes(first) == file_hashes(second)


def test_missing_csv_is_an_input_error(tmp_path):
    with pytest.raises(PlotInputError, match="not found"):
        render(resolve_figure("fig4"), tmp_path, tmp_path / "out")


# ---------------------------------------------------------------------------
# Command line
# ---------------------------------------------------------------------------


def test_cli_renders_and_reports_paths(tmp_path, capsys):
    synthetic_csv(tmp_path / "fig4.csv")
    assert main(["fig4", str(tmp_path), str(tmp_path / "out")]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out == [str(tmp_path / "out" / "fig4.png")]
    assert (tmp_path / "out" / "fig4.png").exists()


def test_cli_error_paths(tmp_path, capsys):
    assert main(["fig99", str(tmp_path), str(tmp_path)]) == 1
    assert "unknown figure id" in capsys.readouterr().err
    assert main(["fig4", str(tmp_path), str(tmp_path)]) == 1
    assert "not found" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# Full pipeline against the simulator (its CLI + CSVs are the only contact)
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def simulator_csvs(tmp_path_factory):
    csv_dir = tmp_path_factory.mktemp("sim_csvs")
    for figure_id in FIGURES:
        done = subprocess.run(
            [sys.executable, "-m", "lambdaloop.cli", "reproduce", figure_id,
             "--out-dir", str(csv_dir)],
            capture_output=True, text=True, timeout=600)
        assert done.returncode == 0, done.stderr
    return csv_dir


def test_every_figure_id_renders_one_image_per_subfigure(simulator_csvs,
                                                         tmp_path):
    for figure_id, spec in FIGURES.items():
        out_dir = tmp_path / figure_id
        written = render(spec, simulator_csvs, out_dir)
        expected = [f"{pid}.png" for pid in spec.panels]
        if len(spec.panels) > 1:
            expected.append(f"{figure_id}.png")
        assert [p.name for p in written] == expected
        assert all(p.stat().st_size > 0 for p in written)


def test_pipeline_output_regenerates_byte_identically(simulator_csvs, tmp_path):
    spec = FIGURES["fig6"]
    first = render(spec, simulator_csvs, tmp_path / "a")
    second = render(spec, simulator_csvs, tmp_path / "b")
    assert file_hashes(first) == file_hashes(second)
