"""Frozen 45-digit constants shared by the evaluation tiers.

Regenerated by the constants module; tests cross-check these strings
against a fresh Euler-Maclaurin computation.
"""

PI_STR = "3.1415926535897932384626433832795028841971694"
LN_TWO_PI_STR = "1.83787706640934548356065947281123527972279495"
LN_GLAISHER_STR = "0.248754477033784262547252993576113976097369714"
