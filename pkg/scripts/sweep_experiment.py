#!/usr/bin/env python3
"""Run the full evaluation experiment for one constructed class: a shell
sweep with predictions, a surjectivity probe, and the empirical level
measurement, printed as one JSON document.

Example:
    python3 scripts/sweep_experiment.py --field 2/Q2 --beta dx1 --n 1
"""

import argparse
import json
import random
import sys

from rswan.forms import Form2, parse_form
from rswan.local_field import field_from_descriptor
from rswan.swan import RefinedSwan, construct_with_rsw
from rswan.disc_lab import (
    Point, sweep, surjectivity_probe, empirical_filtration, sample_centers,
    table_to_json,
)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--field", default="2/Q2")
    ap.add_argument("--beta", default="dx1")
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--n", type=int, default=1)
    ap.add_argument("--t", type=int, default=0)
    ap.add_argument("--center", default=None,
                    help="comma-separated integer coordinates")
    ap.add_argument("--centers", type=int, default=6,
                    help="sampled centers for the level measurement")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args(argv)

    field = field_from_descriptor(args.field)
    beta = parse_form(args.beta, field.residue, args.m)
    A = construct_with_rsw(beta, args.n, args.t, field)
    rsw = RefinedSwan(args.n, Form2.zero(field.residue, args.m), beta)
    coords = ([int(c) for c in args.center.split(",")]
              if args.center else [1] * args.m)
    P = Point(field, coords)

    table = sweep(A, P, args.n, rsw=rsw, jobs=args.jobs)
    rng = random.Random(args.seed)
    probe = surjectivity_probe(A, P, rsw, t=args.t, rng=rng)
    centers = sample_centers(field, args.m, args.centers,
                             random.Random(args.seed))
    level = empirical_filtration(A, centers, args.n + 1, jobs=args.jobs)

    out = {
        "sweep": table_to_json(table, field, A),
        "probe": {"verdict": probe.verdict,
                  "values": [str(v) for v in probe.values],
                  "target": probe.target},
        "level": {"estimate": level.estimate,
                  "witness_radius": level.witness_radius,
                  "verdict": level.verdict},
    }
    json.dump(out, sys.stdout, indent=2, sort_keys=True)
    print()
    ok = (table.verdict in ("MATCH", "KERNEL-MATCH")
          and probe.verdict == "MATCH" and level.verdict == "MATCH")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
