#!/usr/bin/env python3
"""Zip the MR (PTE split) parallel text and label files into label<TAB>text."""
import argparse
import sys


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--text", required=True, type=argparse.FileType("r", encoding="utf-8"))
    ap.add_argument("--labels", required=True, type=argparse.FileType("r", encoding="utf-8"))
    args = ap.parse_args()
    for text, label in zip(args.text, args.labels):
        text, label = text.strip(), label.strip()
        if not text or not label:
            continue
        sys.stdout.write(f"{label}\t{text}\n")


if __name__ == "__main__":
    main()
