import pathlib

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import make_study
from contra import plotting
from contra.effectsize import EffectSizeSummary

GOLDEN = pathlib.Path(__file__).resolve().parent / "golden" / "contra_plot.svg"


def fake_summary(study_id, lo, hi, point=None, ls=None, ms=None):
    if point is None:
        point = (lo + hi) / 2.0
    if ls is None:
        ls = 0.0 if lo <= 0.0 <= hi else 100.0 * min(abs(lo), abs(hi))
    if ms is None:
        ms = 100.0 * max(abs(lo), abs(hi))
    return EffectSizeSummary(study_id=study_id, point_estimate=point,
                             ci_lo=lo, ci_hi=hi, ls_pct=ls, ms_pct=ms,
                             credible_level=0.95, k=1000, seed=1)


def null_row(study_id, ms):
    # symmetric interval spanning zero with the requested Ms%
    c = ms / 100.0
    return (make_study(id=study_id), fake_summary(study_id, -c, c, ms=ms))


# --- axis transform ----------------------------------------------------------

def test_transform_fixed_point():
    assert plotting.axis_transform(0.0) == 0.0


def test_transform_identity_on_negative_branch():
    assert plotting.axis_transform(-0.5) == -0.5


def test_transform_positive_branch():
    assert plotting.axis_transform(1.0) == 0.5


def test_transform_domain_error():
    with pytest.raises(ValueError):
        plotting.axis_transform(-1.001)


def test_transform_reciprocal_pairing():
    # (1+x)(1+y) = 1 pairs x > 0 with y = -x/(1+x); the pair must land
    # at mirrored positions
    rng = np.random.Generator(np.random.PCG64(42))
    for x in rng.uniform(0.001, 50.0, size=100):
        y = -(x / (x + 1.0))
        assert plotting.axis_transform(y) == -plotting.axis_transform(x)


@given(st.floats(-1.0, 100.0), st.floats(-1.0, 100.0))
@settings(max_examples=300, deadline=None)
def test_transform_strictly_increasing(a, b):
    if a == b:
        return
    a, b = min(a, b), max(a, b)
    assert plotting.axis_transform(a) < plotting.axis_transform(b)


def test_transform_range():
    for x in (-1.0, -0.999, 0.0, 1e6):
        assert -1.0 <= plotting.axis_transform(x) < 1.0


# --- ordering ----------------------------------------------------------------

def test_sort_center_out_worked_example():
    rows = [null_row(i + 1, ms) for i, ms in enumerate([8, 12, 20, 31])]
    ordered = [r[1].ms_pct for r in plotting.sort_studies(rows)]
    assert ordered == [31, 12, 8, 20]


def test_sort_all_significant_negative():
    rows = [(make_study(id=i), fake_summary(i, -0.5 - i / 10.0, -0.1 * i))
            for i in (1, 2, 3)]
    ordered = plotting.sort_studies(rows)
    ls_values = [r[1].ls_pct for r in ordered]
    assert ls_values == sorted(ls_values, reverse=True)


def test_sort_tie_break_by_id():
    rows = [null_row(5, 10.0), null_row(3, 10.0)]
    ordered = plotting.sort_studies(rows)
    # lower id takes the center; the other is placed above it
    assert [r[0].id for r in ordered] == [5, 3]


def test_sort_three_bands():
    rows = [
        (make_study(id=1), fake_summary(1, -0.5, -0.2)),   # negative band
        null_row(2, 15.0),                                 # null band
        (make_study(id=3), fake_summary(3, 0.2, 0.5)),     # positive band
    ]
    assert [r[0].id for r in plotting.sort_studies(rows)] == [1, 2, 3]


# --- rendering ---------------------------------------------------------------

def golden_spec():
    rows = [
        (make_study(id=1, mean_x=100.0, mean_y=95.0),
         fake_summary(1, -0.12, 0.02, point=-0.05)),
        (make_study(id=2, mean_x=100.0, mean_y=140.0),
         fake_summary(2, 0.15, 0.65, point=0.40)),
        (make_study(id=3, mean_x=100.0, mean_y=70.0),
         fake_summary(3, -0.45, -0.15, point=-0.30)),
    ]
    return plotting.ContraPlotSpec(
        studies=plotting.sort_studies(rows),
        negligible_threshold=0.30,
        meaningful_threshold=0.10,
        title="golden",
    )


def test_render_matches_golden_file():
    assert plotting.render_contra_plot(golden_spec()) == GOLDEN.read_text()


def test_render_deterministic():
    a = plotting.render_contra_plot(golden_spec())
    b = plotting.render_contra_plot(golden_spec())
    assert a == b


def test_render_empty_plot_rejected():
    with pytest.raises(ValueError, match="empty plot"):
        plotting.render_contra_plot(
            plotting.ContraPlotSpec(studies=[]))


def test_render_row_height_floor():
    spec = plotting.ContraPlotSpec(studies=[null_row(1, 5.0)], row_height_px=8)
    with pytest.raises(ValueError, match="row_height"):
        plotting.render_contra_plot(spec)


def test_spec_rejects_mismatched_ids():
    with pytest.raises(ValueError, match="does not match"):
        plotting.ContraPlotSpec(studies=[(make_study(id=1), fake_summary(2, -0.1, 0.1))])


def test_spec_rejects_nonpositive_threshold():
    with pytest.raises(ValueError):
        plotting.ContraPlotSpec(studies=[null_row(1, 5.0)],
                                negligible_threshold=0.0)


def test_every_study_rendered_once():
    rows = [null_row(i, float(i)) for i in range(1, 8)]
    svg = plotting.render_contra_plot(plotting.ContraPlotSpec(studies=rows))
    assert svg.count("<circle") == 7


def test_single_study_inside_band():
    spec = plotting.ContraPlotSpec(
        studies=[(make_study(id=1), fake_summary(1, -0.05, 0.05))],
        negligible_threshold=0.10,
    )
    svg = plotting.render_contra_plot(spec)
    assert "<rect" in svg and "<circle" in svg


def test_no_band_without_threshold():
    spec = plotting.ContraPlotSpec(studies=[null_row(1, 5.0)])
    svg = plotting.render_contra_plot(spec)
    assert "#d9d9d9" not in svg


def test_negligible_rows_lie_inside_band(plaque_path):
    # negligible by the zero-centered bound implies both signed interval
    # endpoints fall strictly inside the band, up to one order statistic
    from contra import effectsize, ingest
    delta = 0.35
    for s in ingest.load_studies_file(plaque_path):
        e = effectsize.summarize_study(s, k=40_000, seed=5)
        if effectsize.test_negligible(e.ms_pct, delta):
            tol = 2.0 / (e.k * min(s.alpha_dm, 1 - s.alpha_dm))
            assert abs(e.ci_lo) < delta + tol
            assert abs(e.ci_hi) < delta + tol
