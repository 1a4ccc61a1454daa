"""Contra plot: study ordering, axis transform, and SVG rendering.

The plot pairs a metadata table (left) with per-study interval segments
(right), similar to a forest plot but without a pooled summary. The
horizontal axis uses a reciprocal-symmetric transform so that a +100%
change sits at the mirror distance of a -50% change.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .effectsize import EffectSizeSummary
from .ingest import StudySummary

#: Metadata columns the table region knows how to render.
TABLE_COLUMNS = {
    "id": ("ID", lambda s, e: str(s.id)),
    "study": ("Study", lambda s, e: s.study_label),
    "year": ("Year", lambda s, e: str(s.year)),
    "group_x": ("Ctrl", lambda s, e: s.group_x_label),
    "group_y": ("Tx", lambda s, e: s.group_y_label),
    "units": ("Units", lambda s, e: s.units),
    "species": ("Sp", lambda s, e: s.species),
    "pmid": ("PMID", lambda s, e: s.pmid),
    "loc": ("Loc", lambda s, e: s.loc),
    "ls_pct": ("Ls%", lambda s, e: f"{e.ls_pct:.1f}"),
    "ms_pct": ("Ms%", lambda s, e: f"{e.ms_pct:.1f}"),
}

DEFAULT_COLUMNS = ["id", "study", "year", "group_x", "group_y",
                   "units", "species", "ls_pct", "ms_pct"]

#: Pre-transform tick positions (fractions) labeled on the axis.
AXIS_TICKS = [(-0.75, "-75%"), (-0.50, "-50%"), (-0.25, "-25%"),
              (0.0, "0"), (1.0 / 3.0, "+33%"), (1.0, "+100%"),
              (3.0, "+300%")]

MIN_ROW_HEIGHT = 12


@dataclass(frozen=True)
class ContraPlotSpec:
    """Everything needed to render one contra plot deterministically."""

    studies: list[tuple[StudySummary, EffectSizeSummary]]
    negligible_threshold: float | None = None
    meaningful_threshold: float | None = None
    metadata_columns: list[str] = field(default_factory=lambda: list(DEFAULT_COLUMNS))
    width_px: int = 1100
    row_height_px: int = 18
    title: str = ""

    def __post_init__(self):
        for s, e in self.studies:
            if s.id != e.study_id:
                raise ValueError(f"summary id {e.study_id} does not match study id {s.id}")
        if self.negligible_threshold is not None and self.negligible_threshold <= 0:
            raise ValueError("negligible threshold must be positive")
        if self.meaningful_threshold is not None and self.meaningful_threshold <= 0:
            raise ValueError("meaningful threshold must be positive")
        unknown = [c for c in self.metadata_columns if c not in TABLE_COLUMNS]
        if unknown:
            raise ValueError(f"unknown metadata column(s): {', '.join(unknown)}")


def axis_transform(x: float) -> float:
    """Reciprocal-symmetric axis position for a relative change x >= -1.

    Identity on the negative branch; x / (x + 1) on the positive branch,
    so paired changes that multiply to no net change ((1+x)(1+y) = 1)
    land at mirrored positions. Strictly increasing, range (-1, 1).
    """
    if x < -1:
        raise ValueError("relative decrease cannot exceed -100%")
    if x <= 0:
        return x
    return x / (x + 1.0)


def sort_studies(rows):
    """Order studies into three bands for plotting.

    Top: intervals entirely below zero, least-negligible first
    (Ls% descending). Middle: intervals containing zero, arranged
    center-out by Ms% ascending with the most negligible study at the
    center row and alternation starting above it. Bottom: intervals
    entirely above zero, Ls% ascending. Ties break by study id.
    """
    neg = sorted((r for r in rows if r[1].ci_hi < 0),
                 key=lambda r: (-r[1].ls_pct, r[0].id))
    pos = sorted((r for r in rows if r[1].ci_lo > 0),
                 key=lambda r: (r[1].ls_pct, r[0].id))
    null = sorted((r for r in rows if r[1].ci_lo <= 0 <= r[1].ci_hi),
                  key=lambda r: (r[1].ms_pct, r[0].id))
    above, below = [], []
    for i, r in enumerate(null[1:]):
        if i % 2 == 0:
            above.insert(0, r)
        else:
            below.append(r)
    return neg + above + null[:1] + below + pos


def _esc(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;"))


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def render_contra_plot(spec: ContraPlotSpec) -> str:
    """Render the plot as a self-contained SVG document (text).

    Byte-identical output for identical specs; no external fonts.
    """
    if not spec.studies:
        raise ValueError("empty plot")
    if spec.row_height_px < MIN_ROW_HEIGHT:
        raise ValueError(f"row_height_px must be >= {MIN_ROW_HEIGHT}")

    rows = spec.studies
    rh = spec.row_height_px
    char_w = 7
    pad = 8

    cols = []
    for key in spec.metadata_columns:
        header, cell = TABLE_COLUMNS[key]
        texts = [cell(s, e) for s, e in rows]
        width = max(len(header), *(len(t) for t in texts)) * char_w + pad
        cols.append((header, texts, width))
    table_w = sum(w for _, _, w in cols)

    plot_w = max(spec.width_px - table_w, 200)
    width = table_w + plot_w
    top = 30 if spec.title else 10
    header_h = rh
    axis_h = 24
    height = top + header_h + len(rows) * rh + axis_h
    plot_x0 = table_w

    def px(x: float) -> float:
        # interval bounds below -100% occur for near-zero control means;
        # pin them to the left edge rather than rejecting the whole plot
        t = axis_transform(max(x, -1.0))
        return plot_x0 + (t + 1.0) / 2.0 * plot_w

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}" '
        f'font-family="monospace" font-size="11">'
    )
    out.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>')
    if spec.title:
        out.append(f'<text x="{_fmt(width / 2)}" y="18" text-anchor="middle" '
                   f'font-size="14">{_esc(spec.title)}</text>')

    y0 = top + header_h  # top of first data row
    plot_h = len(rows) * rh

    # negligible-region band behind everything else in the plot region
    if spec.negligible_threshold is not None:
        d = spec.negligible_threshold
        x_lo, x_hi = px(-d), px(d)
        out.append(f'<rect x="{_fmt(x_lo)}" y="{y0}" '
                   f'width="{_fmt(x_hi - x_lo)}" height="{plot_h}" '
                   f'fill="#d9d9d9"/>')
    if spec.meaningful_threshold is not None:
        d = spec.meaningful_threshold
        for x in (px(-d), px(d)):
            out.append(f'<line x1="{_fmt(x)}" y1="{y0}" x2="{_fmt(x)}" '
                       f'y2="{y0 + plot_h}" stroke="#c8a200" stroke-width="1"/>')

    # zero line
    xz = px(0.0)
    out.append(f'<line x1="{_fmt(xz)}" y1="{y0}" x2="{_fmt(xz)}" '
               f'y2="{y0 + plot_h}" stroke="black" stroke-width="1"/>')

    # table header
    x = 0
    for header, _, w in cols:
        out.append(f'<text x="{x + 4}" y="{top + rh - 5}" '
                   f'font-weight="bold">{_esc(header)}</text>')
        x += w
    out.append(f'<line x1="0" y1="{y0}" x2="{width}" y2="{y0}" '
               f'stroke="#888888" stroke-width="1"/>')

    # data rows
    for i, (s, e) in enumerate(rows):
        ry = y0 + i * rh
        ty = ry + rh - 5
        x = 0
        for _, texts, w in cols:
            out.append(f'<text x="{x + 4}" y="{ty}">{_esc(texts[i])}</text>')
            x += w
        cy = ry + rh / 2.0
        x_lo, x_hi = px(e.ci_lo), px(e.ci_hi)
        out.append(f'<line x1="{_fmt(x_lo)}" y1="{_fmt(cy)}" x2="{_fmt(x_hi)}" '
                   f'y2="{_fmt(cy)}" stroke="#1f3b70" stroke-width="2"/>')
        xp = px(e.point_estimate)
        out.append(f'<circle cx="{_fmt(xp)}" cy="{_fmt(cy)}" r="3" '
                   f'fill="#1f3b70"/>')

    # axis
    ay = y0 + plot_h
    out.append(f'<line x1="{plot_x0}" y1="{ay}" x2="{width}" y2="{ay}" '
               f'stroke="black" stroke-width="1"/>')
    for tick, label in AXIS_TICKS:
        tx = px(tick)
        out.append(f'<line x1="{_fmt(tx)}" y1="{ay}" x2="{_fmt(tx)}" '
                   f'y2="{ay + 4}" stroke="black" stroke-width="1"/>')
        out.append(f'<text x="{_fmt(tx)}" y="{ay + 16}" '
                   f'text-anchor="middle">{_esc(label)}</text>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
