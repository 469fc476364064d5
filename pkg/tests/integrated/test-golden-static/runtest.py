#!/usr/bin/env python3

#
# Nondimensional displacements and stresses of Type A sandwich plates
# under sinusoidal pressure (HSDT13, n = 0.5 and 5)
#

from __future__ import print_function

from sys import argv, exit

from fgmplate.cli import setup_logging
from fgmplate.errors import AcceptanceError
from fgmplate.golden import check, fixture_config
from fgmplate.options import config_from_dict
from fgmplate.studies import run_static

setup_logging(verbose="-v" in argv)

code = 0  # Return code
for name in ("static-a-n0.5", "static-a-n5"):
    print("Running static test " + name)
    table = run_static(config_from_dict(fixture_config(name)))
    try:
        comparisons = check(table, [name])
        print("  {} values within tolerance".format(len(comparisons)))
    except AcceptanceError as err:
        print(err)
        code = 1

if code == 0:
    print(" => All tests passed")
else:
    print(" => Some failed tests")

exit(code)
