# run_sigma.py
"""
Entry point for the Poisson-Lie sigma model tools.

 - Defers the import of maninsigma.cli so import-time errors can be caught and explained
 - Prints diagnostics naming the module that failed to load
 - Exits with the status returned by the command (0 ok, 1 evaluation, 2 validation, 3 input)

Usage:
  python run_sigma.py validate --catalog su2_sb2
  python run_sigma.py bivector --catalog sl2_dual --at 0,1,1
  python run_sigma.py scan --catalog su2_sb2 --samples 100 --radius 0.4 --seed 7
"""

import importlib
import sys
import traceback

MODULES = ("matrix_num", "lie_core", "adjoint", "poisson", "catalog", "sigma_model", "runner", "source", "cli")


def try_import_main():
    """
    Attempt to import the CLI. If it fails, print which package module is broken and raise.
    """
    try:
        from maninsigma.cli import main
        return main
    except Exception:
        print("ERROR: Importing maninsigma.cli failed.", file=sys.stderr)
        traceback.print_exc()
        for name in MODULES:
            try:
                importlib.import_module(f"maninsigma.{name}")
            except Exception as e:
                print(f"maninsigma.{name} does not import: {e!r}", file=sys.stderr)
        print("Check that numpy, pandas and python-dotenv are installed (pip install -r requirements.txt).",
              file=sys.stderr)
        raise


if __name__ == "__main__":
    try:
        main = try_import_main()
    except Exception:
        sys.exit(1)
    sys.exit(main())
