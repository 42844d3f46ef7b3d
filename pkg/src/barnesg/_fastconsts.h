/* Extended-precision constants for the compiled kernels.
 * Digits kept in sync with _constants_str.py (tests compare the backends). */
#ifndef BARNESG_FASTCONSTS_H
#define BARNESG_FASTCONSTS_H

static const long double BG_PI = 3.1415926535897932384626433832795028841971694L;
static const long double BG_LN2PI = 1.83787706640934548356065947281123527972279495L;
static const long double BG_LNA = 0.248754477033784262547252993576113976097369714L;
static const long double BG_LD_EPS = 1.0842021724855044340e-19L;

#endif
