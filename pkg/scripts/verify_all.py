#!/usr/bin/env python3
"""Run every built-in verification suite (forms, swan, brauer, discs)
with a fixed seed.  Exits nonzero if any check fails."""

import sys

from rswan.cli import main


if __name__ == "__main__":
    seed = sys.argv[1] if len(sys.argv) > 1 else "7"
    sys.exit(main(["verify", "all", "--seed", seed]))
