#!/usr/bin/env python3
"""Grid-refinement study at both stencil orders, written as CSV tables."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from cliffem import cli

if __name__ == "__main__":
    here = pathlib.Path(__file__).resolve().parent
    code = cli.main(["convergence", "--order", "2",
                     "--ladder", "0.04,0.02,0.01",
                     "--csv", str(here / "convergence_order2.csv")])
    code |= cli.main(["convergence", "--order", "4",
                      "--ladder", "0.08,0.04,0.02",
                      "--csv", str(here / "convergence_order4.csv")])
    print("wrote convergence_order2.csv and convergence_order4.csv")
    sys.exit(code)
