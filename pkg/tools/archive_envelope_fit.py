"""Archive the envelope-exponent fits as a regression fixture.

Run from the repository root:

    python tools/archive_envelope_fit.py

The fitted exponents have no exact target; the archive pins the current
numbers so that any drift in zeros, background or fit window shows up.
"""

from __future__ import annotations

import json
import pathlib

from fermitrap import __version__
from fermitrap.analysis import EnvelopeWindow, envelope_fit

OUT = pathlib.Path(__file__).resolve().parents[1] / "tests" / "fixtures" / "envelope_fit.json"
SIZES = (100, 1000, 10_000)


def main():
    window = EnvelopeWindow()
    fits = {}
    for n in SIZES:
        fit = envelope_fit(n, window)
        fits[str(n)] = {
            "delta": fit.delta,
            "residual": fit.residual,
            "prefactor": fit.prefactor,
            "n_points": fit.n_points,
            "fit_window": list(fit.fit_window),
        }
    doc = {
        "generator": f"fermitrap-{__version__}",
        "window": {"edge_gap": window.edge_gap, "inner": window.inner},
        "fits": fits,
    }
    OUT.write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
