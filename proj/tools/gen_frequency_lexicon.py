#!/usr/bin/env python3
"""Regenerate resources/frequency.tsv (word<TAB>rank) from the wordfreq Spanish list.

Usage: python3 tools/gen_frequency_lexicon.py [--size 30000] [--out resources/frequency.tsv]
"""
import argparse
import re

import wordfreq

SPANISH_WORD = re.compile(r"^[a-záéíóúüñ]+(-[a-záéíóúüñ]+)*$")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--size", type=int, default=30000)
    parser.add_argument("--out", default="resources/frequency.tsv")
    args = parser.parse_args()

    rank = 0
    with open(args.out, "w", encoding="utf-8") as out:
        out.write("# word\trank (wordfreq 'es' list, CC BY-SA 4.0)\n")
        for word in wordfreq.top_n_list("es", args.size * 2):
            if not SPANISH_WORD.match(word):
                continue
            rank += 1
            out.write(f"{word}\t{rank}\n")
            if rank >= args.size:
                break


if __name__ == "__main__":
    main()
