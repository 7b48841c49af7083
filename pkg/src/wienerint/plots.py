"""Figure rendering for the report-producing commands.

matplotlib loads lazily and is nudged onto the Agg backend, so these
work in headless runs; each function writes one figure to a file and
returns the path it wrote.
"""

from __future__ import annotations

__all__ = ["plot_interval", "plot_spectrum", "plot_battery"]


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    return plt


def plot_interval(report, path: str) -> str:
    """Measured run, claimed run and gaps on one value axis."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(9.0, 2.6))
    ax.hlines(
        1.0,
        report.measured_lo,
        report.measured_hi,
        color="tab:blue",
        lw=6,
        label=f"measured [{report.measured_lo}, {report.measured_hi}]",
    )
    if report.claimed_lo is not None and report.claimed_hi is not None:
        ax.hlines(
            0.8,
            report.claimed_lo,
            report.claimed_hi,
            color="tab:green",
            lw=6,
            label=f"claimed [{report.claimed_lo}, {report.claimed_hi}]",
        )
    for i, gap in enumerate(report.gaps[:200]):
        ax.axvline(gap, color="tab:red", lw=1.0, label="gap" if i == 0 else None)
    ax.set_ylim(0.55, 1.35)
    ax.set_yticks([])
    ax.set_xlabel("Wiener index value")
    ax.set_title(
        f"n={report.n}: contiguous coverage, parity step {report.parity_step}"
    )
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_spectrum(spectrum, path: str) -> str:
    """All achievable values at one n, in rank order."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    values = spectrum.values
    ax.plot(range(len(values)), values, ".", markersize=3, color="tab:blue")
    ax.axhline(spectrum.min_value, color="tab:green", lw=0.8, label=f"star {spectrum.min_value}")
    ax.axhline(spectrum.max_value, color="tab:orange", lw=0.8, label=f"path {spectrum.max_value}")
    ax.set_xlabel("rank")
    ax.set_ylabel("Wiener index value")
    ax.set_title(
        f"n={spectrum.n}: {len(values)} values over {spectrum.tree_count} trees"
    )
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_battery(entries, path: str) -> str:
    """Verdict matrix: one row per identity, one column per grid."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.0, 0.42 * max(len(entries), 4) + 1.2))
    colors = {"HOLDS": "tab:green", "FAILS": "tab:red"}
    for row, entry in enumerate(entries):
        for col, report in enumerate((entry.report_a, entry.report_b)):
            ax.scatter(
                col,
                row,
                marker="s",
                s=260,
                color=colors.get(report.verdict, "tab:gray"),
            )
    ax.set_xticks([0, 1], ["grid A", "grid B"])
    ax.set_yticks(range(len(entries)), [e.identity for e in entries])
    ax.set_xlim(-0.6, 1.6)
    ax.set_ylim(len(entries) - 0.4, -0.6)
    ax.set_title("identity verdicts (green HOLDS, red FAILS)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
