#!/usr/bin/env python3
"""Convert TREC-6 'COARSE:fine question' lines to coarse-label<TAB>question."""
import argparse
import sys


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("infile", type=argparse.FileType("r", encoding="utf-8", errors="replace"))
    args = ap.parse_args()
    for line in args.infile:
        line = line.strip()
        if not line or ":" not in line or " " not in line:
            continue
        coarse = line.split(":", 1)[0]
        question = line.split(" ", 1)[1]
        sys.stdout.write(f"{coarse}\t{question}\n")


if __name__ == "__main__":
    main()
