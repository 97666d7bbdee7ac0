"""Print the bases, discriminant factors and counts for the two bundled families."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from parcont.analysis import discriminant, regular_zero_count
from parcont.ideals import saturate_family, specialize_basis, specialize_saturated
from parcont.parser import parse_family

FAMILIES = Path(__file__).resolve().parent.parent / "families"


@dataclass
class Config:
    points: dict  # family file -> parameter points to specialize at


DEFAULT = Config(
    points={
        "example1.fam": [{"a": 1, "b": 3, "c": 2}, {"a": 1, "b": -2, "c": 1}],
        "example2.fam": [{"a": 2}, {"a": 1}],
    }
)


def show(name: str, points) -> None:
    F = parse_family((FAMILIES / name).read_text())
    sat = saturate_family(F)
    print(f"== {name}")
    print("augmented basis:")
    for g in sat.augmented_basis:
        print(f"  {g}")
    print("saturated basis:")
    for g in sat.saturated_basis:
        print(f"  {g}")
    rep = discriminant(F, sat)
    print("raw factors:", ", ".join(str(f) for f in rep.raw_factors))
    if rep.squarefree_factors is not None:
        print("squarefree factors:", ", ".join(str(f) for f in rep.squarefree_factors))
    print("generic count N =", rep.generic_count)
    for q in points:
        Gq = specialize_basis(sat, q)
        direct = specialize_saturated(F, q)
        label = ", ".join(f"{k}={v}" for k, v in q.items())
        print(f"at {label}: saturated {direct.as_strings()}, count {regular_zero_count(F, q)}, guard {'ok' if Gq else 'fails'}")
    print()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("families", nargs="*", default=list(DEFAULT.points))
    args = ap.parse_args()
    for name in args.families:
        show(name, DEFAULT.points.get(name, []))


if __name__ == "__main__":
    main()
