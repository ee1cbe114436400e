"""File reports: CSV tables and matplotlib figures written next to each other."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .homology import HomologyTable, occupied_diagonals  # noqa: E402
from .verify import VerifyReport  # noqa: E402


def write_homology_csv(table: HomologyTable, path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["i", "j", "free", "torsion"])
        for (i, j), (free, tor) in sorted(table.groups.items(), key=lambda kv: (kv[0][0], kv[0][1] or 0)):
            w.writerow([i, "" if j is None else j, free, " ".join(map(str, tor))])
    return path


def plot_homology(table: HomologyTable, path: str | Path, title: str = "") -> Path:
    """Dot chart of the (i, j) plane: circle area for free rank, crosses for torsion."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(5, 4))
    graded = table.graded
    for (i, j), (free, tor) in table.groups.items():
        y = j if graded else 0
        if free:
            ax.scatter([i], [y], s=80 * free, color="tab:blue", zorder=3)
            if free > 1:
                ax.annotate(str(free), (i, y), xytext=(6, 6), textcoords="offset points", fontsize=8)
        if tor:
            ax.scatter([i], [y], marker="x", s=70, color="tab:red", zorder=4)
            ax.annotate(",".join(f"Z{d}" for d in tor), (i, y), xytext=(6, -10),
                        textcoords="offset points", fontsize=7, color="tab:red")
    if graded:
        is_ = [i for i, _ in table.groups] or [0]
        for delta in occupied_diagonals(table):
            xs = [min(is_) - 0.5, max(is_) + 0.5]
            ax.plot(xs, [2 * x + delta for x in xs], lw=0.5, ls=":", color="0.6", zorder=1)
    ax.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax.set_xlabel("homological degree i")
    ax.set_ylabel("quantum degree j" if graded else "(ungraded)")
    ax.set_title(title or f"homology over {table.ring}")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_verify_csv(report: VerifyReport, path: str | Path) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["name", "code", "n", "check", "passed", "finding", "detail"])
        for d in report.diagrams:
            for r in d.results:
                w.writerow([d.name, d.code, d.n, r.check, int(r.passed), int(r.finding), r.detail])
    return path


def plot_verify(report: VerifyReport, path: str | Path) -> Path:
    """Pass counts per check, and homological width against the genus bound."""
    path = Path(path)
    counts = report.counts()
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.8))
    names = list(counts)
    passed = [counts[k][0] for k in names]
    failed = [counts[k][1] - counts[k][0] for k in names]
    ax1.bar(names, passed, color="tab:green", label="pass")
    ax1.bar(names, failed, bottom=passed, color="tab:red", label="fail")
    ax1.set_ylabel("diagrams")
    ax1.tick_params(axis="x", rotation=45, labelsize=8)
    ax1.legend(fontsize=8)
    pts = [(d.thickness.bound, float(d.thickness.thickness)) for d in report.diagrams if d.thickness]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    if xs:
        ax2.scatter(xs, ys, s=12, alpha=0.6)
        top = max(xs + ys) + 0.5
        ax2.plot([0, top], [0, top], ls="--", lw=0.8, color="0.4")
    ax2.set_xlabel("bound (2 + genus)")
    ax2.set_ylabel("width")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_homology_report(table: HomologyTable, outdir: str | Path, stem: str = "homology",
                          title: str = "") -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    return [write_homology_csv(table, outdir / f"{stem}.csv"),
            plot_homology(table, outdir / f"{stem}.png", title)]


def write_verify_report(report: VerifyReport, outdir: str | Path, stem: str = "verify") -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    return [write_verify_csv(report, outdir / f"{stem}.csv"), plot_verify(report, outdir / f"{stem}.png")]
