#ifndef HEUNPC_POLYROOTS_HPP
#define HEUNPC_POLYROOTS_HPP

#include <vector>

#include "heunpc/types.hpp"

namespace heunpc {

/// All roots (with multiplicity) of sum_k coeffs[k] x^k via the companion
/// matrix and a shifted complex QR iteration, Newton-polished and sorted by
/// (Re, Im). Throws RootFindError if the iteration stalls.
std::vector<Cplx> poly_roots(const std::vector<Cplx>& coeffs);

}  // namespace heunpc

#endif
