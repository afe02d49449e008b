"""Entry point for python -m ghilb_kit."""

import sys

from ghilb_kit.cli import main

if __name__ == "__main__":
    sys.exit(main())
