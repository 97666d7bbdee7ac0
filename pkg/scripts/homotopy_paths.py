"""Track the zeros of x^2+3x+2 toward x^2-5x+6 and a point on the discriminant.

Compares the straight parameter segment (gamma=1) with the default complex bend.
The straight segment from (1,3,2) to (1,-5,6) crosses b^2 = 4ac, which is why
the bend is on by default.
"""

import argparse
from dataclasses import dataclass, replace
from pathlib import Path

from parcont.ideals import specialize_saturated
from parcont.numeric import TrackerConfig, solve_triangular, track_path
from parcont.parser import parse_assignment, parse_family

FAMILIES = Path(__file__).resolve().parent.parent / "families"


@dataclass
class Config:
    family: str = "example1.fam"
    start: str = "a=1,b=3,c=2"
    targets: tuple = ("a=1,b=-5,c=6", "a=1,b=-2,c=1")
    gammas: tuple = (1, complex(0.6, 0.8))


def main():
    cfg = Config()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default=cfg.family)
    ap.add_argument("--start", default=cfg.start)
    ap.add_argument("--target", action="append", dest="targets")
    args = ap.parse_args()
    targets = args.targets or cfg.targets

    F = parse_family((FAMILIES / args.family).read_text())
    q0 = parse_assignment(args.start)
    starts = solve_triangular(specialize_saturated(F, q0))
    for target in targets:
        q1 = parse_assignment(target)
        for gamma in cfg.gammas:
            tc = replace(TrackerConfig(), gamma=gamma)
            print(f"{args.start} -> {target}  gamma={gamma}")
            for s in starts:
                r = track_path(F, q1, q0, s, tc)
                end = ", ".join(f"{z.real:+.8f}{z.imag:+.2e}j" for z in r.end)
                print(f"  start {s[0].real:+.3f}: {r.status:18s} end ({end}) steps {r.steps} "
                      f"residual {r.final_residual:.1e} |det| {r.final_jacobian_det:.1e}")


if __name__ == "__main__":
    main()
