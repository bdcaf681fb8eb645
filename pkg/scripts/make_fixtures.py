"""Regenerate the bundled instance files in src/fuds/data/.

The real SATLIB uf150-645 and OR-Library scp42 files are not redistributed
here (see fetch_corpora.py). Instead this script writes same-sized stand-ins:

* uf150-645 style: uniform random 3-SAT, 150 variables, 645 clauses. Seeds
  are tried in order until a formula is satisfiable, mirroring how the uf
  sets were filtered. Needs ``pycosat`` (dev-only dependency).
* scp42 style: 200 rows x 1000 columns, 2% density, integer costs 1..100.

Usage: python scripts/make_fixtures.py
"""

from pathlib import Path

import pycosat

from fuds.instances import gen_random_3sat, gen_random_scp, serialize_dimacs_cnf, serialize_orlib_scp

DATA = Path(__file__).resolve().parents[1] / "src" / "fuds" / "data"


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    seed = 0
    while True:
        inst = gen_random_3sat(150, 645, seed)
        model = pycosat.solve([list(c) for c in inst.clauses])
        if model != "UNSAT":
            break
        seed += 1
    comment = (
        f"uniform random 3-SAT, 150 vars, 645 clauses, generator seed {seed}, satisfiable\n"
        "model " + " ".join(str(l) for l in model)
    )
    (DATA / f"uf150-645-s{seed}.cnf").write_text(serialize_dimacs_cnf(inst, comment) + "%\n0\n")
    print("sat seed", seed)

    scp = gen_random_scp(200, 1000, 0.02, seed=42)
    (DATA / "scp42-like.txt").write_text(serialize_orlib_scp(scp))


if __name__ == "__main__":
    main()
