"""Sample parameter points off and on the discriminant and compare counts with N.

Writes one JSON record per family.  Example::

    python3 scripts/verify_theorem.py families/example2.fam --trials 200 --jobs 4
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from parcont.analysis import verify_continuation_theorem
from parcont.parser import parse_family


@dataclass
class Config:
    trials: int = 50
    seed: int = 0
    jobs: int = 1


def run(path: Path, cfg: Config) -> dict:
    F = parse_family(path.read_text())
    t0 = time.perf_counter()
    check = verify_continuation_theorem(F, cfg.trials, seed=cfg.seed, jobs=cfg.jobs)
    return {
        "family": path.name,
        "config": asdict(cfg),
        "seconds": round(time.perf_counter() - t0, 3),
        "generic_count": check.generic_count,
        "off_counts": sorted({n for _, n in check.off_discriminant}),
        "on_counts": sorted({n for _, n in check.on_discriminant}),
        "on_points": len(check.on_discriminant),
        "violations": check.violations,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("files", nargs="+", type=Path)
    ap.add_argument("--trials", type=int, default=Config.trials)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--jobs", type=int, default=Config.jobs)
    args = ap.parse_args()
    cfg = Config(args.trials, args.seed, args.jobs)
    bad = 0
    for path in args.files:
        rec = run(path, cfg)
        bad += len(rec["violations"])
        print(json.dumps(rec))
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
