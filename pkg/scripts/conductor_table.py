#!/usr/bin/env python3
"""Print the Swan conductor of the standard Kummer shapes over the named
fields: the uniformizer, a Teichmuller unit, and the one-units
1 + u1 * pi^m for every 0 < m < e'.
"""

import argparse
import sys

from rswan.brauer import parse_kratfunc
from rswan.local_field import field_from_descriptor
from rswan.swan import kummer_conductor


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--fields", default="Q2,Q2i,Q2c,Q3z",
                    help="comma-separated named fields")
    args = ap.parse_args(argv)

    for name in args.fields.split(","):
        field = field_from_descriptor(name.strip())
        ep = field.eprime
        print("%s  (p=%d, e'=%d)" % (name.strip(), field.p, ep))
        rows = [("pi", "pi"), ("u1", "u1")]
        rows += [("1+u1*pi^%d" % m, "1+u1*pi^%d" % m) for m in range(1, ep)]
        for label, text in rows:
            a = parse_kratfunc(text, field, 1)
            print("  %-12s -> %d" % (label, kummer_conductor(a)))
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
