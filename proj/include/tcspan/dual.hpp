#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "tcspan/poset.hpp"
#include "tcspan/rational.hpp"

namespace tcspan {

// Dual solution of the sparsest-2-TC-spanner LP on H_{m,d}. All grid points
// here are 0-based; only coordinate differences enter the formulas.

/// Number of grid points in a box with side vector x: prod (x_i + 1).
/// Throws InputError on a negative component or on overflow.
std::uint64_t volume(std::span<const std::int64_t> x);

/// 1 / V(v - u) for u <= v.
Rational yhat(const GridPoint& u, const GridPoint& v);

/// Split of yhat(u, v) across the relay w (u <= w <= v):
///   first  = yhat(u,v) * V(w-u) / (V(w-u) + V(v-w))
///   second = yhat(u,v) - first
/// The first part is the one charged to the edge (u,w), the second to (w,v).
std::pair<Rational, Rational> yprime_ydprime(const GridPoint& u, const GridPoint& w, const GridPoint& v);

/// Left side of the packing constraint of edge (u,v) inside [0,m-1]^d:
/// the first part of every triple (u, v, w) with w >= v plus the second part
/// of every triple (w, u, v) with w <= u. Direct enumeration.
Rational constraint1_lhs(const GridPoint& u, const GridPoint& v, std::uint64_t m);

/// (4 pi)^d.
long double dual_scale(std::size_t d);

struct CertifyOptions {
  std::uint64_t max_points = 4096;  // exact mode guard on m^d
  std::optional<std::uint64_t> sample;  // pairs to spot-check instead of enumerating
  std::uint64_t seed = 0;
};

enum class CertificateStatus { kCertified, kSpotChecked, kTrivial };

std::string_view to_string(CertificateStatus s);

struct DualCertificate {
  std::uint64_t m = 0;
  std::size_t d = 0;
  CertificateStatus status = CertificateStatus::kCertified;

  Rational objective_raw;          // sum of yhat over comparable pairs (incl. u == v)
  Rational objective_closed_form;  // (sum_{l=1..m} (m-l+1)/l)^d
  std::optional<bool> objective_matches;

  Rational max_constraint_lhs;  // exact, over all pairs (or over the sample)
  GridPoint argmax_u;
  GridPoint argmax_v;
  std::uint64_t pairs_checked = 0;
  std::uint64_t exact_candidates = 0;  // pairs re-evaluated exactly after float screening

  long double scale = 0;            // (4 pi)^d
  long double certified_bound = 0;  // objective_raw / scale
  long double envelope = 0;         // m^d (ln m - 1)^d

  bool lhs_within_scale = false;        // scale - max_lhs >= margin
  bool objective_exceeds_envelope = false;  // vacuous (true) for m <= 2

  static constexpr long double kMargin = 1e-9L;
};

/// Builds and checks the dual certificate for H_{m,d}. Exact mode enumerates
/// every comparable pair through box prefix sums, screens in long double and
/// re-evaluates the near-maximal pairs exactly. Sampled mode checks a random
/// subset of pairs and is labelled spot-checked.
DualCertificate certify(std::uint64_t m, std::size_t d, const CertifyOptions& options = {});

struct TightnessReport {
  std::uint64_t m = 0;
  std::size_t d = 0;
  std::uint64_t difference_pairs = 0;  // distinct (w-u, v-w) checked
  std::uint64_t triples = 0;           // grid triples u <= w <= v they stand for
  bool all_tight = true;               // first + second == yhat exactly
  bool all_nonnegative = true;
};

/// Re-derives both parts of every split independently (each from its own
/// volume ratio) and checks they add up to yhat exactly. The values depend
/// only on the difference vectors, so each distinct pair (w-u, v-w) is
/// evaluated once and weighted by the number of grid triples realizing it.
/// Guarded at m^d <= 4096.
TightnessReport split_tightness(std::uint64_t m, std::size_t d);

/// Exact sum of yhat over all comparable pairs, by enumerating the pairs.
/// Independent of the grouped computation used by certify; small grids only.
Rational objective_by_enumeration(std::uint64_t m, std::size_t d);

struct IntegralReport {
  std::size_t d = 0;
  std::uint64_t samples = 0;
  double J = 0;            // integral of 1/sqrt(1-x^2) over (-1,1)
  double J_error = 0;      // |J - pi|
  double J_estimated_error = 0;
  double I_estimate = 0;   // substituted integral over [-1,1]^d
  double I_stderr = 0;
  double I_bound = 0;      // pi^d / 2
  bool J_ok = false;
  bool I_ok = false;
  bool inconclusive = false;
};

/// Numerical check of the integral estimates: J by tanh-sinh quadrature,
/// I_1 by tanh-sinh, I_2 and I_3 by randomly shifted Sobol points.
/// Requires d in {1,2,3} and samples >= 1e5.
IntegralReport integral_check(std::size_t d, std::uint64_t samples, std::uint64_t seed = 0);

}  // namespace tcspan
