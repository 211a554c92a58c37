"""Figure catalogue tests: resolution, grids, and frozen parameter values."""

import math

import numpy as np
import pytest

from lambdaloop.presets import (GROUPS, PRESETS, UnknownFigureError,
                                list_figures, resolve)


def on_grid(preset, x):
    return bool(np.any(np.abs(preset.grid() - x) < 1e-12))


def test_resolve_panel_group_and_unknown():
    (only,) = resolve("fig6b")
    assert only is PRESETS["fig6b"]
    assert [p.figure_id for p in resolve("fig7")] == ["fig7a", "fig7b", "fig7c"]
    assert [p.figure_id for p in resolve("fig4")] == ["fig4"]
    with pytest.raises(UnknownFigureError) as exc:
        resolve("fig99")
    assert "fig3a" in str(exc.value) and "fig8c" in str(exc.value)


def test_catalogue_is_complete_and_consistent():
    assert list_figures() == tuple(sorted(PRESETS))
    assert sum(len(v) for v in GROUPS.values()) == len(PRESETS)
    for figure_id, preset in PRESETS.items():
        assert preset.figure_id == figure_id
        assert preset.grid_points == 2001
        assert len(preset.grid()) == preset.grid_points
        p = preset.params
        assert p.g41 == 0.01
        assert p.gamma13 == p.gamma14 == p.gamma23 == p.gamma24 == 0.5
        assert p.gamma12_deph == 0.0 and p.kr == 0.0


def test_required_evaluation_points_land_on_grid_nodes():
    # line centres and the stated group-index evaluation points must be
    # exact nodes so nearest-node lookup does not move them
    assert on_grid(PRESETS["fig3a"], 0.0)
    assert on_grid(PRESETS["fig7a"], 0.0)
    for x in (-2.0, -1.0, 0.0, 1.0, 2.0, 3.0, -3.0, 0.5):
        assert on_grid(PRESETS["fig6a"], x)
    for x in (-5.0, 4.0):
        assert on_grid(PRESETS["fig8a"], x)


def test_frozen_parameter_spot_checks():
    assert PRESETS["fig3a"].params.phi0 == 0.0
    assert PRESETS["fig3b"].params.phi0 == math.pi
    assert PRESETS["fig3c"].params.phi0 == math.pi / 2
    assert all(PRESETS[f].channel == "total" for f in ("fig3a", "fig3b", "fig3c"))
    assert all(PRESETS[f].axis == "raman_delta12"
               for f in ("fig3a", "fig3b", "fig3c", "fig4", "fig5a", "fig5b"))
    assert PRESETS["fig4"].channel == "direct"
    assert PRESETS["fig5a"].channel == PRESETS["fig5b"].channel == "counter"
    assert PRESETS["fig5b"].params.phi0 == math.pi / 2

    a6 = PRESETS["fig6a"].params
    assert (a6.g31, a6.g32, a6.g42) == (1.8, 0.2, 0.5)
    assert PRESETS["fig6a"].axis == "probe_delta41"
    b6 = PRESETS["fig6b"].params
    assert b6.d31 == 10.0 and (b6.g31, b6.g32, b6.g42) == (0.1, 0.1, 0.5)
    assert (PRESETS["fig6b"].grid_start, PRESETS["fig6b"].grid_stop) == (-3.0, 3.0)

    for fid, g31 in (("fig7a", 0.7), ("fig7b", 0.85), ("fig7c", 1.5)):
        p = PRESETS[fid].params
        assert (p.g31, p.g32, p.g42) == (g31, 0.0, 0.2)
        assert p.d42 == 0.0
    for fid, g31 in (("fig8a", 0.7), ("fig8b", 0.85), ("fig8c", 1.5)):
        p = PRESETS[fid].params
        assert (p.g31, p.g32, p.g42) == (g31, 0.0, 0.6)
        assert p.d42 == -5.0
        assert (PRESETS[fid].grid_start, PRESETS[fid].grid_stop) == (-8.0, 4.5)


def test_preset_run_produces_its_channel():
    preset = PRESETS["fig6b"]
    spec = preset.run()
    assert spec.axis_name == preset.axis
    assert len(spec.grid) == preset.grid_points
    values = spec.channel(preset.channel)
    assert not np.any(np.isnan(values))
