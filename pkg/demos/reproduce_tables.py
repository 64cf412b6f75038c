"""Recompute the reference tables row by row.

Each table row records the published value; rows whose construction is
outside the scope of this package are marked documented-only and
skipped.  Equivalent to `modlie reproduce <table>` on the command line.

Run as: python3 demos/reproduce_tables.py [--include-large]
"""

import sys

from modlie.cli import main as cli_main
from modlie.reference import TABLES


def main(argv):
    extra = [a for a in argv if a == "--include-large"]
    for table in TABLES:
        print(f"== {table} ==")
        code = cli_main(["reproduce", table, "--threads", "2", *extra])
        print(f"(exit code {code})")
        print()


if __name__ == "__main__":
    main(sys.argv[1:])
