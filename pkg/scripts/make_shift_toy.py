#!/usr/bin/env python3
"""Write a contradiction-input file for the truncated two-to-one shift.

The model lives on binary strings of length <= L: dropping the first bit is
two-to-one, so the strings starting with 0 and those starting with 1 each
map onto (almost) everything.  The resulting JSON feeds
``paradoxlab paradox contradiction --input FILE``.

With the uniform measure the chain closes numerically even without the
invariance hypothesis; with ``--measure dirac`` the chain breaks at the
invariance link, which is the counterexample worth staring at.
"""

import argparse
import json
import sys

from paradoxlab import measures, paradox


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-len", type=int, default=6, help="longest string kept (default 6)")
    parser.add_argument("--measure", choices=["uniform", "dirac"], default="uniform")
    parser.add_argument(
        "--invariant",
        action="store_true",
        help="record the invariance hypothesis instead of checking the link numerically",
    )
    parser.add_argument("--out", default="-", help="output path, or - for stdout")
    args = parser.parse_args()

    if args.max_len < 1:
        parser.error("--max-len must be >= 1")

    model, space, witness, interior = paradox.two_to_one_shift_model(args.max_len)
    if args.measure == "uniform":
        nu = measures.PointMeasure.uniform(space)
    else:
        nu = measures.PointMeasure.dirac(space, "")
    data = measures.contradiction_input_to_json(model, space, witness, nu, args.invariant, interior)

    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"wrote {len(space)} points to {args.out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
