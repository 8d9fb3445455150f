"""Compare the Koszul group law with the matrix model at random Grassmann
points over a range of seeds."""
import argparse
import sys

from superkoszul.cli import main

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--file", default="gl11.shcp")
    parser.add_argument("--seeds", type=int, default=10)
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--aux", type=int, default=4)
    args = parser.parse_args()
    status = 0
    for seed in range(args.seeds):
        status = max(status, main(["oracle", "--file", args.file, "--seed", str(seed),
                                   "--count", str(args.count), "--aux", str(args.aux)]))
    sys.exit(status)
