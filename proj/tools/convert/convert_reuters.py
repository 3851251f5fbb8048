#!/usr/bin/env python3
"""Normalize R8/R52 'all-terms' files (label<whitespace>text) to label<TAB>text."""
import argparse
import sys


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("infile", type=argparse.FileType("r", encoding="utf-8"))
    args = ap.parse_args()
    for line in args.infile:
        line = line.strip()
        if not line:
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            continue
        sys.stdout.write(f"{parts[0]}\t{parts[1]}\n")


if __name__ == "__main__":
    main()
