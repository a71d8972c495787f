"""Static SVG renderings of sweep and cycle tables (optional, needs matplotlib)."""
from __future__ import annotations

from pathlib import Path

import numpy as np

from ..errors import ConfigError


def _pyplot():
    try:
        import matplotlib
    except ImportError as exc:
        raise ConfigError("--svg needs matplotlib (pip install 'artifact[svg]')") from exc
    matplotlib.use("Agg")
    matplotlib.rcParams["svg.hashsalt"] = "photonic-engine"
    import matplotlib.pyplot as plt
    return plt


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})


def sweep_svgs(result, config, csv_path) -> list[Path]:
    """One file per quantity: line plot for one axis (or a short second axis), heatmap otherwise."""
    plt = _pyplot()
    axes = config.axis_values()
    gridded = config.gridded_axes()
    header = result.header
    data = np.array([[float(v) for v in row[:-1]] for row in result.rows])
    col = {h: i for i, h in enumerate(header[:-1])}
    stem = Path(csv_path).with_suffix("")
    written = []
    for q in config.quantities:
        fig, ax = plt.subplots(figsize=(5, 3.6))
        if not gridded:
            ax.plot([0], data[:, col[q]], "o")
        elif len(gridded) == 1:
            ax.plot(data[:, col[gridded[0]]], data[:, col[q]])
            ax.set_xlabel(gridded[0])
        else:
            outer, inner = gridded
            n_out, n_in = len(axes[outer]), len(axes[inner])
            z = data[:, col[q]].reshape(n_out, n_in)
            if n_out <= 4:
                for i, v in enumerate(axes[outer]):
                    ax.plot(axes[inner], z[i], label=f"{outer}={v:g}")
                ax.set_xlabel(inner)
                ax.legend()
            elif n_in <= 4:
                for j, v in enumerate(axes[inner]):
                    ax.plot(axes[outer], z[:, j], label=f"{inner}={v:g}")
                ax.set_xlabel(outer)
                ax.legend()
            else:
                mesh = ax.pcolormesh(axes[inner], axes[outer], z, shading="nearest")
                fig.colorbar(mesh, ax=ax)
                ax.set_xlabel(inner)
                ax.set_ylabel(outer)
        ax.set_title(q)
        fig.tight_layout()
        path = Path(f"{stem}_{q}.svg")
        _save(fig, path)
        plt.close(fig)
        written.append(path)
    return written


def cycle_svg(reports, csv_path) -> Path:
    """Cycle loops in the (omega_c offset, n) plane."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5, 3.6))
    for rep in reports:
        pts = rep.points
        x = [p.delta / (2 * np.pi) for p in pts]
        y = [p.n_th if p.stage == "compression" else p.n_ss for p in pts]
        # close the loop through the two isochores
        x = [pts[0].delta / (2 * np.pi)] + x
        y = [pts[0].n_th] + y
        label = ", ".join(f"{k}={v:g}" for k, v in rep.point.items() if k == "n_pair")
        ax.plot(x, y, label=label or None)
    ax.set_xlabel("omega_c offset / 2 pi (Hz)")
    ax.set_ylabel("mean photon number")
    if any(rep.point for rep in reports):
        ax.legend()
    fig.tight_layout()
    path = Path(csv_path).with_suffix(".svg")
    _save(fig, path)
    plt.close(fig)
    return path
