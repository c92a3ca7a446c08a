"""Matplotlib figures for reports.  Output files are byte-stable across runs."""

from __future__ import annotations

import io
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402
from matplotlib.patches import Patch  # noqa: E402

from .report import CELL_CM, CELL_CONIC, CELL_NOT_CM, FamilyReport  # noqa: E402

COLORS = {CELL_NOT_CM: "#f0f0f0", CELL_CM: "#d95f02", CELL_CONIC: "#1b9e77"}
CODES = {CELL_NOT_CM: 0, CELL_CM: 1, CELL_CONIC: 2}
LEGEND = {CELL_CONIC: "conic", CELL_CM: "CM, not conic", CELL_NOT_CM: "not CM"}

RC = {
    "svg.hashsalt": "segrecm",
    "svg.fonttype": "none",
    "font.size": 9,
    "axes.linewidth": 0.8,
}


def _cmap() -> ListedColormap:
    return ListedColormap([COLORS[CELL_NOT_CM], COLORS[CELL_CM], COLORS[CELL_CONIC]])


def _legend(ax):
    handles = [Patch(facecolor=COLORS[k], edgecolor="0.3", label=LEGEND[k]) for k in (CELL_CONIC, CELL_CM, CELL_NOT_CM)]
    ax.legend(handles=handles, loc="upper left", bbox_to_anchor=(1.02, 1.0), frameon=False)


def region_map_figure(report: FamilyReport):
    shown = report.shown()
    params = ", ".join(f"{k}={v}" for k, v in report.params.items())
    with plt.rc_context(RC):
        if report.family == "segre3":
            i_vals = sorted({r.label[0] for r in shown})
            j_vals = sorted({r.label[1] for r in shown})
            grid = [[0] * len(i_vals) for _ in j_vals]
            for r in shown:
                grid[j_vals.index(r.label[1])][i_vals.index(r.label[0])] = CODES[r.cell]
            size = max(3.0, 0.28 * len(i_vals))
            fig, ax = plt.subplots(figsize=(size + 1.8, size))
            ax.imshow(grid, origin="lower", cmap=_cmap(), vmin=0, vmax=2,
                      extent=(i_vals[0] - 0.5, i_vals[-1] + 0.5, j_vals[0] - 0.5, j_vals[-1] + 0.5))
            ax.set_xlabel("i")
            ax.set_ylabel("j")
        else:
            labels = [r.label for r in shown]
            row = [[CODES[r.cell] for r in shown]]
            fig, ax = plt.subplots(figsize=(max(4.0, 0.25 * len(labels)) + 1.8, 1.6))
            ax.imshow(row, cmap=_cmap(), vmin=0, vmax=2, aspect="auto",
                      extent=(labels[0] - 0.5, labels[-1] + 0.5, -0.5, 0.5))
            ax.set_yticks([])
            ax.set_xlabel("i")
        ax.set_title(f"{report.family} ({params})")
        _legend(ax)
        fig.tight_layout()
    return fig


def verify_summary_figure(segre_rows: list[dict], veronese_rows: list[dict]):
    """Left: CM vs conic counts per segre3 parameter set.  Right: veronese2 conic formula vs enumeration."""
    with plt.rc_context(RC):
        fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
        xs = list(range(len(segre_rows)))
        left.plot(xs, [r["cm"] for r in segre_rows], "o-", ms=3, lw=0.8, color=COLORS[CELL_CM], label="CM")
        left.plot(xs, [r["conic"] for r in segre_rows], "s-", ms=3, lw=0.8, color=COLORS[CELL_CONIC], label="conic")
        left.set_xlabel("segre3 parameter set (lexicographic m, n, p)")
        left.set_ylabel("classes")
        left.legend(frameon=False)
        enumerated = [r["enumerated"] for r in veronese_rows]
        formula = [r["formula"] for r in veronese_rows]
        agree = [r["enumerated"] == r["formula"] for r in veronese_rows]
        right.scatter(formula, enumerated, c=["#1b9e77" if a else "#d95f02" for a in agree], s=14)
        top = max(enumerated + formula + [1]) + 1
        right.plot([0, top], [0, top], color="0.5", lw=0.8)
        right.set_xlabel("m+n+c+d-3")
        right.set_ylabel("enumerated conic classes")
        right.set_title("veronese2 conic count")
        fig.tight_layout()
    return fig


def figure_bytes(fig, fmt: str) -> bytes:
    buf = io.BytesIO()
    metadata = {"Date": None} if fmt == "svg" else {"Software": None} if fmt == "png" else None
    with plt.rc_context(RC):
        fig.savefig(buf, format=fmt, metadata=metadata)
    plt.close(fig)
    return buf.getvalue()


def save_figure(fig, path) -> Path:
    path = Path(path)
    fmt = path.suffix.lstrip(".").lower() or "png"
    path.write_bytes(figure_bytes(fig, fmt))
    return path
