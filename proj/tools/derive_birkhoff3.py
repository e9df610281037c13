#!/usr/bin/env python3
# Copyright 2026 The dsplit Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Derive the ray list of the birkhoff-3 builtin.

The rays are the primitive inner facet normals of the Birkhoff polytope B3
(the convex hull of the 3x3 permutation matrices), written in the
coordinates x11, x12, x21, x22 of its affine span.

Usage:
  derive_birkhoff3.py               print the configuration document
  derive_birkhoff3.py --check EXE   compare with the builtin shipped in EXE
"""

import argparse
import itertools
import json
import math
import subprocess
import sys
from fractions import Fraction

import numpy as np
from scipy.spatial import ConvexHull


def vertices():
    out = []
    for perm in itertools.permutations(range(3)):
        x = [[1 if perm[i] == j else 0 for j in range(3)] for i in range(3)]
        out.append([x[0][0], x[0][1], x[1][0], x[1][1]])
    return np.array(out, dtype=float)


def primitive(v):
    fr = [Fraction(x).limit_denominator(1000) for x in v]
    lcm = 1
    for f in fr:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    return [x // g for x in ints]


def facet_normals():
    pts = vertices()
    hull = ConvexHull(pts)
    normals = set()
    for eq in hull.equations:
        # scipy normals point outward; rays are inner normals
        normals.add(tuple(primitive(-eq[:-1] / np.max(np.abs(eq[:-1])))))
    for n in normals:
        values = pts @ np.array(n, dtype=float)
        assert np.sum(np.isclose(values, values.min())) >= 4, n
    return sorted(normals)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--check", metavar="EXE", help="dsplit binary to compare against")
    args = parser.parse_args()

    rays = facet_normals()
    if not args.check:
        print(json.dumps({"name": "birkhoff-3", "dim": 4, "rays": [list(r) for r in rays]}))
        return 0

    listing = subprocess.run([args.check, "--list-builtins", "--json"], check=True,
                             capture_output=True, text=True).stdout
    shipped = next(d for d in map(json.loads, listing.splitlines()) if d["name"] == "birkhoff-3")
    if sorted(tuple(r) for r in shipped["rays"]) != rays:
        print("birkhoff-3 rays differ from the derivation:", rays, file=sys.stderr)
        return 1
    print(f"birkhoff-3 matches {len(rays)} derived facet normals")
    return 0


if __name__ == "__main__":
    sys.exit(main())
