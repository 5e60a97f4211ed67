import numpy as np
import pytest

from slitdisk.counterexample import VerificationReport
from slitdisk.plotting import FIGURES, save_figures
from slitdisk.render import (
    REGIONS,
    RegionError,
    default_region,
    domain_colors,
    parse_region,
    render,
    sample_grid,
    to_ppm,
    write_ppm,
)
from slitdisk.suite import run_group


def test_parse_region():
    assert parse_region("near-1") == REGIONS["near-1"]
    assert parse_region("0,1,-1,1") == (0.0, 1.0, -1.0, 1.0)
    for bad in ("nowhere", "1,0,0,1", "0,1,0", "0,1,0,nan"):
        with pytest.raises(RegionError):
            parse_region(bad)
    assert default_region("phi2") == "w1" and default_region("g") == "unit"


def test_sample_grid_orientation():
    z = sample_grid((0.0, 2.0, 0.0, 2.0), 2)
    assert z[0, 0] == 0.5 + 1.5j and z[1, 1] == 1.5 + 0.5j


def test_domain_colors_black_outside_and_bright_for_large_values():
    vals = np.array([[0.0, 1e6, 1.0, np.nan]], dtype=complex)
    valid = np.array([[True, True, False, True]])
    rgb = domain_colors(vals, valid)
    assert rgb[0, 0].tolist() == [0, 0, 0]        # |f| = 0 is dark
    assert rgb[0, 1].max() == 255
    assert rgb[0, 2].tolist() == [0, 0, 0]
    assert rgb[0, 3].tolist() == [0, 0, 0]


@pytest.mark.parametrize("target", ["phi1", "phi2", "g", "h", "B", "phi"])
def test_render_targets(target, cx):
    rgb = render(target, 16, cx=cx)
    assert rgb.shape == (16, 16, 3) and rgb.dtype == np.uint8
    assert rgb.any()


def test_render_is_deterministic_and_ppm_roundtrips(tmp_path, cx):
    a = render("phi", 12, "near-1", cx)
    assert np.array_equal(a, render("phi", 12, "near-1", cx))
    path = write_ppm(tmp_path / "out" / "phi.ppm", a)
    nums = [int(x) for x in path.read_text().split()[4:]]
    assert np.array_equal(np.array(nums, dtype=np.uint8).reshape(12, 12, 3), a)
    assert to_ppm(a).startswith("P3\n12 12\n255\n")


def test_render_rejects_bad_resolution():
    with pytest.raises(RegionError):
        render("g", 0)


def test_figures_are_written_and_reproducible(tmp_path):
    rep = VerificationReport()
    for group in ("thin", "products", "map", "counterexample"):
        rep.merge(run_group(group))
    first = save_figures(rep, tmp_path / "a")
    second = save_figures(rep, tmp_path / "b")
    assert sorted(p.name for p in first) == sorted(f"{n}.png" for n in FIGURES)
    for p, q in zip(first, second):
        assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
        assert p.read_bytes() == q.read_bytes()


def test_figures_skip_missing_profiles(tmp_path):
    assert save_figures(VerificationReport(), tmp_path) == []
