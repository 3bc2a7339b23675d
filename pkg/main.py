"""
Main entry point for the N-path duality toolkit

Runs the command-line front-end; equivalent to `python -m npath_duality`.
"""

import sys

from npath_duality.cli import main


if __name__ == "__main__":
    sys.exit(main())
