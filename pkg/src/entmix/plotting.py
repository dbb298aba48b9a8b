"""Static scatter figures rendered from dataset columns."""
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .criteria import DELTA_MU_MAX, LINEAR_PLANE, VON_NEUMANN_PLANE, product_surface  # noqa: E402
from .measures import LINEAR, VON_NEUMANN  # noqa: E402

BUNDLE_COLOURS = {
    "separable": "red",
    "0-0.25": "green",
    "0.25-0.5": "cyan",
    "0.5-0.75": "blue",
    "0.75-1": "magenta",
}

AXES = {
    "fig1a": ("sV1", "sV2", "sV"),
    "fig1b": ("sL1", "sL2", "sL"),
    "fig2": ("sL1", "sL2", "tangle"),
    "fig3a": ("sL1", "sL2", "sL"),
}
LABELS = {
    "sV1": r"$S_{V1}$", "sV2": r"$S_{V2}$", "sV": r"$S_V$",
    "sL1": r"$S_{L1}$", "sL2": r"$S_{L2}$", "sL": r"$S_L$",
    "tangle": r"$\mathcal{C}^2$", "delta_mu": r"$\Delta\mu$",
}

RC = {
    "font.size": 9,
    "axes.linewidth": 0.6,
    "svg.hashsalt": "entmix",
    "svg.fonttype": "none",
}


def _surface_grid(n=25):
    s = np.linspace(0.0, 1.0, n)
    return np.meshgrid(s, s)


def _scatter_bundles(ax, data, cols, size=1.0):
    bundles = data.get("bundle")
    for name, colour in BUNDLE_COLOURS.items():
        sel = bundles == name if bundles is not None else slice(None)
        if bundles is not None and not np.any(sel):
            continue
        ax.scatter(*(np.asarray(data[c][sel], dtype=float) for c in cols), s=size, c=colour,
                   depthshade=False, linewidths=0, label=name)


def render_figure(data, figure, path):
    """Write an SVG of one dataset; ``data`` maps column names to arrays."""
    series = np.asarray(data.get("series", np.full(len(data["id"]), "sample")))
    sample = {k: np.asarray(v)[series == "sample"] for k, v in data.items()}
    with plt.rc_context(RC):
        if figure == "fig3b":
            fig, ax = plt.subplots(figsize=(3.5, 3.0))
            ax.scatter(sample["delta_mu"].astype(float), sample["tangle"].astype(float), s=1.0,
                       c="blue", linewidths=0)
            d = np.linspace(0.0, DELTA_MU_MAX, 50)
            ax.plot(d, 2.0 * (DELTA_MU_MAX - d), color="red", lw=1.0)
            ax.set_xlabel(LABELS["delta_mu"])
            ax.set_ylabel(LABELS["tangle"])
        elif figure in AXES:
            cols = AXES[figure]
            fig = plt.figure(figsize=(4.5, 4.0))
            ax = fig.add_subplot(projection="3d")
            _scatter_bundles(ax, sample, cols)
            x, y = _surface_grid()
            if figure == "fig2":
                mem = {k: np.asarray(v)[series == "memms_surface"] for k, v in data.items()}
                if len(mem["id"]):
                    ax.plot_trisurf(mem["sL1"].astype(float), mem["sL2"].astype(float),
                                    mem["tangle"].astype(float), color="yellow", alpha=0.35, linewidth=0)
            else:
                kind = VON_NEUMANN if figure == "fig1a" else LINEAR
                ax.plot_surface(x, y, product_surface(kind, x, y), color="yellow", alpha=0.3, linewidth=0)
                if figure != "fig3a":
                    plane = VON_NEUMANN_PLANE if kind == VON_NEUMANN else LINEAR_PLANE
                    ax.plot_surface(x, y, np.full_like(x, plane), color="orangered", alpha=0.2, linewidth=0)
            ax.set_xlabel(LABELS[cols[0]])
            ax.set_ylabel(LABELS[cols[1]])
            ax.set_zlabel(LABELS[cols[2]])
        else:
            raise ValueError(f"no figure layout for {figure!r}")
        fig.savefig(path, format="svg", metadata={"Date": None}, bbox_inches="tight")
        plt.close(fig)
    return path
