#ifndef HEUNPC_GAMMA_HPP
#define HEUNPC_GAMMA_HPP

#include "heunpc/types.hpp"

namespace heunpc {

/// sin(pi z) / cos(pi z) with the real part reduced first, so values stay
/// accurate arbitrarily close to integers.
Cplx sin_pi(Cplx z);
Cplx cos_pi(Cplx z);

/// True when z sits (to double precision) on a gamma pole 0, -1, -2, ...
bool is_nonpositive_integer(Cplx z);

/// Gamma(z), Lanczos approximation. Throws PoleError on 0, -1, -2, ...
/// Relative error well under 1e-13 for |z| <= 50 away from poles.
Cplx gamma(Cplx z);

/// gamma packaged with its error estimate.
PcfValue gamma_value(Cplx z);

/// 1/Gamma(z); entire, returns exactly 0 at the poles of Gamma.
Cplx rgamma(Cplx z);

/// log Gamma(z); the imaginary part is NOT the continuous branch, which is
/// irrelevant here because results are only ever exponentiated.
Cplx log_gamma(Cplx z);

}  // namespace heunpc

#endif
