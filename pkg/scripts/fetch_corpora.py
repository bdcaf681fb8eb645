"""Download the public benchmark corpora into ./corpora/.

* SATLIB uf150-645: 100 satisfiable uniform random 3-SAT formulas
  (150 variables, 645 clauses), DIMACS CNF, tar.gz.
* OR-Library scp41..scp49: set covering instances, 200 rows x 1000 columns.

Nothing in the test suite needs these files; the tests use the small
stand-ins in src/fuds/data/. Every downloaded file is parsed once so a
broken download is reported immediately.

Usage: python scripts/fetch_corpora.py [--dest corpora]
"""

import argparse
import io
import sys
import tarfile
import urllib.request
from pathlib import Path

from fuds.instances import ParseError, load_instance

SATLIB = "https://www.cs.ubc.ca/~hoos/SATLIB/Benchmarks/SAT/RND3SAT/uf150-645.tar.gz"
ORLIB = "http://people.brunel.ac.uk/~mastjjb/jeb/orlib/files/scp4{}.txt"


def fetch(url: str) -> bytes:
    print("fetching", url)
    with urllib.request.urlopen(url, timeout=60) as r:
        return r.read()


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dest", default="corpora")
    args = ap.parse_args(argv)
    dest = Path(args.dest)
    (dest / "uf150-645").mkdir(parents=True, exist_ok=True)

    with tarfile.open(fileobj=io.BytesIO(fetch(SATLIB)), mode="r:gz") as tar:
        for m in tar.getmembers():
            if m.isfile() and m.name.endswith(".cnf"):
                out = dest / "uf150-645" / Path(m.name).name
                out.write_bytes(tar.extractfile(m).read())

    for i in range(1, 10):
        (dest / f"scp4{i}.txt").write_bytes(fetch(ORLIB.format(i)))

    bad = 0
    for p in sorted((dest / "uf150-645").glob("*.cnf")):
        try:
            load_instance(p, "dimacs-cnf")
        except ParseError as e:
            print(f"{p}: {e}", file=sys.stderr)
            bad += 1
    for p in sorted(dest.glob("scp4*.txt")):
        try:
            load_instance(p, "orlib-scp")
        except ParseError as e:
            print(f"{p}: {e}", file=sys.stderr)
            bad += 1
    print("done," if not bad else f"{bad} files failed to parse,", "files in", dest)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
