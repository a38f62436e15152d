"""Figure rendering for the CLI report paths.

All figures are written straight to files through the Agg backend, so the
package stays usable on headless machines.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .surface import SurfaceProfile

__all__ = ["profile_figure", "sweep_figure", "convolve_figure"]

_STYLE = {
    "figure.figsize": (7.0, 5.0),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 10,
}


def profile_figure(profile: SurfaceProfile, path: str) -> None:
    """Gradient vs classical displacement profiles, two stacked panels."""
    with plt.rc_context(_STYLE):
        fig, (ax3, axr) = plt.subplots(2, 1, sharex=True, figsize=(7.0, 7.5))
        r = profile.r_prime
        show = r <= 10.0
        ax3.plot(r[show], profile.u3_hat[show], label="gradient", color="tab:blue")
        finite = show & np.isfinite(profile.u3_classical_hat)
        ax3.plot(r[finite], profile.u3_classical_hat[finite], "--",
                 label="classical", color="tab:gray")
        ax3.set_ylim(0.0, 1.05 * float(np.nanmax(profile.u3_hat)) * 1.6)
        ax3.set_ylabel("u3_hat")
        ax3.legend()
        ax3.set_title(f"normalized surface displacements, nu = {profile.nu:g}")
        axr.plot(r[show], profile.ur_hat[show], label="gradient", color="tab:blue")
        finite = show & np.isfinite(profile.ur_classical_hat)
        axr.plot(r[finite], profile.ur_classical_hat[finite], "--",
                 label="classical", color="tab:gray")
        peak = float(np.nanmax(np.abs(profile.ur_hat)))
        axr.set_ylim(-4.0 * peak, 4.0 * peak)
        axr.set_ylabel("ur_hat")
        axr.set_xlabel("r' = r / sqrt(c)")
        axr.legend()
        fig.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(fig)


def sweep_figure(nus, values, intercept: float, slope: float, path: str) -> None:
    """Origin settlement versus Poisson ratio with the fitted line."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        nus = np.asarray(nus, dtype=float)
        ax.plot(nus, values, "o", label="u3_hat(0, nu)")
        line = intercept + slope * nus
        ax.plot(nus, line, "-", label=f"fit {intercept:.4f} {slope:+.4f} nu")
        ax.set_xlabel("nu")
        ax.set_ylabel("u3_hat at the origin")
        ax.set_title("maximum settlement versus Poisson ratio")
        ax.legend()
        fig.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(fig)


def convolve_figure(radii, u3, radius: float, path: str) -> None:
    """Settlement under a distributed load; the loaded radius is marked."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot(np.asarray(radii, float), np.asarray(u3, float), "-")
        ax.axvline(radius, color="tab:gray", linestyle=":", label="load edge")
        ax.set_xlabel("r")
        ax.set_ylabel("u3")
        ax.set_title("settlement under distributed load")
        ax.legend()
        fig.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(fig)
