#ifndef HEUNPC_KUMMER_HPP
#define HEUNPC_KUMMER_HPP

#include "heunpc/types.hpp"

namespace heunpc {

struct KummerConfig {
  double series_radius = 400.0;  // largest |z| accepted by the power series
  int max_terms = 2000;
  double term_tol = 1e-17;  // stop once |term| < term_tol * |sum| repeatedly
};

struct KummerResult {
  ScaledComplex value;
  double rel_error = 0.0;  // truncation + rounding, relative to |value|
  int terms = 0;
};

/// 1F1(a; b; z) by the Maclaurin series with compensated summation and a
/// geometric tail bound. Terminates exactly when a is a non-positive integer.
KummerResult kummer_1f1_scaled(Cplx a, Cplx b, Cplx z, const KummerConfig& cfg = {});

/// Double-range wrapper around kummer_1f1_scaled.
PcfValue kummer_1f1(Cplx a, Cplx b, Cplx z, const KummerConfig& cfg = {});

}  // namespace heunpc

#endif
