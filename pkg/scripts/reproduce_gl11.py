"""Print the gl(1|1) worked example: twisted products, the pullback of the
first even coordinate, and the reconstructed left multiplication."""
import sys

from superkoszul.cli import main

STEPS = [
    ["gamma-table", "--file", "gl11.shcp"],
    ["mul-table", "--file", "gl11.shcp", "--section", "y1"],
    ["mul-table", "--file", "gl11.shcp", "--section", "T1"],
    ["action", "--file", "gl11.shcp", "--action", "left"],
    ["stabilizer", "--file", "gl11.shcp", "--action", "std"],
    ["invariants", "--file", "gl11.shcp", "--subpair", "borel"],
]

if __name__ == "__main__":
    status = 0
    for argv in STEPS:
        print("$ superkoszul " + " ".join(argv))
        status = max(status, main(argv))
        print()
    sys.exit(status)
