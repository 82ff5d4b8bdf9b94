import numpy as np
import pytest

from slowvortex.config import (AxisSpec, ScenarioConfig, apply_overrides,
                               config_hash, preset_description, preset_dict,
                               preset_names, scenario_from_dict,
                               scenario_from_preset, scenario_to_dict)

# ==== axes ==================================================================


def test_axis_values_linear():
    ax = AxisSpec(0.0, 1.0, 5)
    assert np.allclose(ax.values(), [0.0, 0.25, 0.5, 0.75, 1.0])


def test_axis_without_endpoint():
    ax = AxisSpec(0.0, 2 * np.pi, 4, endpoint=False)
    assert np.allclose(ax.values(), [0.0, np.pi / 2, np.pi, 3 * np.pi / 2])


def test_axis_single_point():
    assert AxisSpec(0.3, 0.3, 1).values().tolist() == [0.3]


def test_axis_validation():
    with pytest.raises(ValueError):
        AxisSpec(0.0, 1.0, 0)
    with pytest.raises(ValueError):
        AxisSpec(1.0, 0.0, 5)


# ==== scenario parsing ======================================================


def test_default_scenario_is_valid():
    config = ScenarioConfig()
    assert config.sign_parity == "native"
    assert config.parity() == 1.0


def test_paper_parity_flag():
    config = ScenarioConfig(sign_parity="paper")
    assert config.parity() == -1.0
    with pytest.raises(ValueError):
        ScenarioConfig(sign_parity="other")


def test_round_trip_preserves_hash():
    for name in preset_names():
        config = scenario_from_preset(name)
        again = scenario_from_dict(scenario_to_dict(config))
        assert config_hash(again) == config_hash(config)


def test_hash_ignores_key_order():
    d = preset_dict("fig2")
    reordered = dict(reversed(list(d.items())))
    assert config_hash(scenario_from_dict(reordered)) == \
        config_hash(scenario_from_dict(d))


def test_hash_tracks_content():
    base = preset_dict("fig2")
    changed = apply_overrides(base, ["drive.omega_c=2.0"])
    assert config_hash(scenario_from_dict(changed)) != \
        config_hash(scenario_from_dict(preset_dict("fig2")))


def test_unknown_top_level_key_rejected():
    d = preset_dict("fig2")
    d["mystery"] = 1
    with pytest.raises(ValueError, match="unknown config key"):
        scenario_from_dict(d)


def test_unknown_nested_key_names_the_path():
    d = preset_dict("fig2")
    d["drive"]["typo"] = 0.0
    with pytest.raises(ValueError, match="drive"):
        scenario_from_dict(d)


def test_empty_azimuth_list_rejected():
    d = preset_dict("fig2")
    d["phi_list"]["count"] = 0
    with pytest.raises(ValueError):
        scenario_from_dict(d)


def test_negative_depth_rejected():
    d = preset_dict("fig3a")
    d["z_list"] = [0.0, -5.0]
    with pytest.raises(ValueError):
        scenario_from_dict(d)


def test_non_deterministic_mode_refused():
    d = preset_dict("fig2")
    d["deterministic"] = False
    with pytest.raises(ValueError):
        scenario_from_dict(d)


# ==== overrides =============================================================


def test_override_parses_numbers_and_strings():
    d = preset_dict("fig2")
    out = apply_overrides(d, ["drive.omega_c=5", "sign_parity=paper"])
    assert out["drive"]["omega_c"] == 5
    assert out["sign_parity"] == "paper"
    config = scenario_from_dict(out)
    assert config.drive.omega_c == 5.0
    assert config.parity() == -1.0


def test_override_is_not_in_place():
    d = preset_dict("fig2")
    apply_overrides(d, ["drive.omega_c=5"])
    assert d["drive"]["omega_c"] == 1.0


def test_override_nested_list_value():
    d = preset_dict("fig3a")
    out = apply_overrides(d, ["z_list=[0.0, 10.0]"])
    assert scenario_from_dict(out).z_list == (0.0, 10.0)


def test_override_requires_assignment():
    with pytest.raises(ValueError):
        apply_overrides(preset_dict("fig2"), ["drive.omega_c"])


def test_override_through_scalar_rejected():
    with pytest.raises(ValueError):
        apply_overrides(preset_dict("fig2"), ["zeta.deep=1"])


# ==== presets ===============================================================


def test_preset_names_sorted_and_described():
    names = preset_names()
    assert list(names) == sorted(names)
    assert "fig2" in names
    for name in names:
        assert preset_description(name)


def test_unknown_preset_rejected():
    with pytest.raises(ValueError):
        preset_dict("fig9")


def test_all_presets_parse():
    for name in preset_names():
        config = scenario_from_preset(name)
        assert isinstance(config, ScenarioConfig)


def test_fig2_preset_shape():
    config = scenario_from_preset("fig2")
    assert config.phi_list.count == 512
    assert not config.phi_list.endpoint
    assert config.delta_list.count == 512
    assert (config.delta_list.start, config.delta_list.stop) == (-3.0, 3.0)
    assert config.response.r == 1.0 and config.response.z == 0.0
    assert config.beam.epsilon == 1e-3


def test_figure_presets_differ_only_where_stated():
    weak = scenario_from_preset("fig5a")
    strong = scenario_from_preset("fig5")
    assert weak.drive.omega_c == 1.0
    assert strong.drive.omega_c == 5.0
    assert weak.drive.delta == strong.drive.delta == 0.1
    assert weak.beam.alpha == strong.beam.alpha == pytest.approx(np.pi / 8)


def test_sweep_presets_cover_expected_ranges():
    sweep = scenario_from_preset("fig4b").polarization.sweep
    assert sweep is not None
    assert (sweep.z.start, sweep.z.stop) == (0.0, 2000.0)
    assert (sweep.delta.start, sweep.delta.stop) == (-0.4, 0.4)
