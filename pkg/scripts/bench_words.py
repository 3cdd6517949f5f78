#!/usr/bin/env python3
"""Time the word-level pipeline across depths.

Measures ball enumeration, the decomposition verifier, and exhaustive
freeness checking.  Numbers are wall clock on whatever machine this runs on;
the point is the growth rate (3x per depth step), not the absolute values.
"""

import argparse
import time

from paradoxlab.freeness import exhaustive_check
from paradoxlab.words import ball, verify_f2_paradox
from paradoxlab.words import _ball  # cached; cleared below for honest timing


def timed(fn, *args):
    started = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - started


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-depth", type=int, default=8)
    args = parser.parse_args()

    print(f"{'depth':>5} {'words':>7} {'ball':>9} {'decompose':>10} {'freeness':>9}")
    for depth in range(1, args.max_depth + 1):
        _ball.cache_clear()
        words, t_ball = timed(ball, depth)
        _, t_dec = timed(verify_f2_paradox, depth)
        _, t_free = timed(exhaustive_check, depth)
        print(f"{depth:>5} {len(words):>7} {t_ball:>8.3f}s {t_dec:>9.3f}s {t_free:>8.3f}s")
    return 0


if __name__ == "__main__":
    import sys

    sys.exit(main())
