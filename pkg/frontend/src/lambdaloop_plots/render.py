"""Offline figure rendering for spectrum CSV files.

This package talks to the simulator exclusively through its public CSV
interchange dialect (header row ``axis,delta,re_direct,...``, ``#``-prefixed
comment lines, empty total columns off multiphoton resonance) — it never
imports simulator internals, so the two sides can evolve independently as
long as the file format holds.

Every sub-figure CSV becomes one PNG with the real part drawn as a solid
blue line and the imaginary part as a dashed red line.  Figure ids that
bundle several sub-figures additionally get one combined side-by-side image.
Rendering is deterministic: no timestamps or host details reach the output,
so unchanged inputs reproduce byte-identical images.
"""

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

#: Column order of the simulator's spectrum dialect.
DIALECT_COLUMNS = ("axis", "delta", "re_direct", "im_direct", "re_loop",
                   "im_loop", "re_counter", "im_counter", "re_total",
                   "im_total")

RAMAN_LABEL = r"$\delta_{12}$ (units of $\gamma_0$)"
PROBE_LABEL = r"$\Delta_{41}$ (units of $\gamma_0$)"


class PlotInputError(Exception):
    """Problem with the input CSVs or the requested figure (exit code 1)."""


class MissingColumnError(PlotInputError):
    """A required dialect column is absent from the CSV header."""


class EmptyInputError(PlotInputError):
    """The CSV holds no data rows."""


class UnknownFigureError(PlotInputError):
    """Figure id not in the catalogue."""


@dataclass(frozen=True)
class FigureSpec:
    """What to draw for one figure id: panels, channel, and layout."""

    figure_id: str
    panels: tuple  # sub-figure ids; also the CSV base names
    channel: str   # direct | loop | counter | total
    x_label: str
    titles: tuple  # one per panel

    def __post_init__(self):
        assert f"re_{self.channel}" in DIALECT_COLUMNS, self.channel
        assert len(self.titles) == len(self.panels)

    def columns(self):
        return f"re_{self.channel}", f"im_{self.channel}"


FIGURES = {
    "fig3": FigureSpec("fig3", ("fig3a", "fig3b", "fig3c"), "total",
                       RAMAN_LABEL,
                       (r"$\phi_0 = 0$", r"$\phi_0 = \pi$", r"$\phi_0 = \pi/2$")),
    "fig4": FigureSpec("fig4", ("fig4",), "direct", RAMAN_LABEL, ("",)),
    "fig5": FigureSpec("fig5", ("fig5a", "fig5b"), "counter", RAMAN_LABEL,
                       (r"$\phi_0 = 0$", r"$\phi_0 = \pi/2$")),
    "fig6": FigureSpec("fig6", ("fig6a", "fig6b"), "direct", PROBE_LABEL,
                       ("panel a", "panel b")),
    "fig7": FigureSpec("fig7", ("fig7a", "fig7b", "fig7c"), "direct",
                       PROBE_LABEL,
                       (r"$g_{31} = 0.7$", r"$g_{31} = 0.85$", r"$g_{31} = 1.5$")),
    "fig8": FigureSpec("fig8", ("fig8a", "fig8b", "fig8c"), "direct",
                       PROBE_LABEL,
                       (r"$g_{31} = 0.7$", r"$g_{31} = 0.85$", r"$g_{31} = 1.5$")),
}


def resolve_figure(figure_id: str) -> FigureSpec:
    """Catalogue lookup accepting either a group id or a single panel id."""
    if figure_id in FIGURES:
        return FIGURES[figure_id]
    for spec in FIGURES.values():
        if figure_id in spec.panels:
            i = spec.panels.index(figure_id)
            return FigureSpec(figure_id, (figure_id,), spec.channel,
                              spec.x_label, (spec.titles[i],))
    known = ", ".join(sorted(FIGURES) + sorted(
        p for s in FIGURES.values() for p in s.panels if p not in FIGURES))
    raise UnknownFigureError(f"unknown figure id {figure_id!r}; known: {known}")


def read_spectrum(path) -> dict:
    """Parse one dialect CSV into a column-name -> float array mapping.

    Comment lines are skipped, empty cells (the total columns off
    resonance) become NaN.  The file must carry a header row and at least
    one data row.
    """
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as fh:
        rows = [r for r in csv.reader(line for line in fh
                                      if not line.startswith("#")) if r]
    if not rows:
        raise EmptyInputError(f"{path}: no header row")
    header, data = rows[0], rows[1:]
    if not data:
        raise EmptyInputError(f"{path}: no data rows")
    columns = {}
    for j, name in enumerate(header):
        columns[name] = np.array(
            [float(row[j]) if j < len(row) and row[j] != "" else np.nan
             for row in data])
    return columns


def _require(columns: dict, name: str, path) -> np.ndarray:
    if name not in columns:
        raise MissingColumnError(f"{path}: column {name!r} missing "
                                 f"(header has {', '.join(columns)})")
    return columns[name]


def _figure(panels, spec: FigureSpec):
    """One matplotlib Figure with len(panels) side-by-side axes.

    panels: list of (panel_id, title, columns, path) tuples.
    """
    n = len(panels)
    fig, axes = plt.subplots(1, n, figsize=(4.4 * n, 3.4), dpi=130,
                             squeeze=False)
    re_col, im_col = spec.columns()
    for ax, (panel_id, title, columns, path) in zip(axes[0], panels):
        x = _require(columns, "axis", path)
        ax.axhline(0.0, color="0.8", lw=0.6, zorder=0)
        ax.plot(x, _require(columns, re_col, path), "-", color="tab:blue",
                label="real part")
        ax.plot(x, _require(columns, im_col, path), "--", color="tab:red",
                label="imag part")
        ax.set_xlabel(spec.x_label)
        ax.set_title(title if title else panel_id)
        ax.legend(loc="upper right", fontsize="small")
    axes[0][0].set_ylabel(f"probe response: {spec.channel}")
    fig.tight_layout()
    return fig


def _save(fig, path: Path) -> None:
    # Strip the renderer's software tag so the PNG depends only on the data.
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)


def render(spec: FigureSpec, csv_dir, out_dir) -> list:
    """Draw every sub-figure of `spec` plus the combined image.

    Reads `<panel>.csv` for each panel id from csv_dir, writes
    `<panel>.png` per sub-figure and, for multi-panel figures,
    `<figure_id>.png` with all panels side by side.  Returns the written
    paths in order.
    """
    csv_dir, out_dir = Path(csv_dir), Path(out_dir)
    loaded = []
    for panel_id, title in zip(spec.panels, spec.titles):
        path = csv_dir / f"{panel_id}.csv"
        if not path.exists():
            raise PlotInputError(f"input CSV not found: {path}")
        loaded.append((panel_id, title, read_spectrum(path), path))

    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for entry in loaded:
        out = out_dir / f"{entry[0]}.png"
        _save(_figure([entry], spec), out)
        written.append(out)
    if len(loaded) > 1:
        out = out_dir / f"{spec.figure_id}.png"
        _save(_figure(loaded, spec), out)
        written.append(out)
    return written


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lambdaloop-plots",
        description="Render spectrum CSVs (as produced by `lambdaloop "
                    "reproduce`) into per-sub-figure PNGs.")
    parser.add_argument("figure_id", help="group id (fig3) or panel id (fig3a)")
    parser.add_argument("csv_dir", help="directory holding <panel>.csv files")
    parser.add_argument("out_dir", help="directory for the rendered images")
    args = parser.parse_args(argv)
    try:
        spec = resolve_figure(args.figure_id)
        for path in render(spec, args.csv_dir, args.out_dir):
            print(path)
    except (PlotInputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
