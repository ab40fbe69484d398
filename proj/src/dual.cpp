#include "tcspan/dual.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/random/sobol.hpp>
#include <fmt/format.h>

#include "tcspan/error.hpp"
#include "tcspan/rng.hpp"

namespace tcspan {

std::uint64_t volume(std::span<const std::int64_t> x) {
  std::uint64_t v = 1;
  for (std::int64_t c : x) {
    if (c < 0) throw InputError(fmt::format("volume: negative side {}", c));
    const auto side = static_cast<std::uint64_t>(c) + 1;
    if (v > std::numeric_limits<std::uint64_t>::max() / side) throw InputError("volume overflows 64 bits");
    v *= side;
  }
  return v;
}

namespace {

std::vector<std::int64_t> difference(const GridPoint& u, const GridPoint& v) {
  if (u.dim() != v.dim()) throw InputError("dimension mismatch");
  std::vector<std::int64_t> x(u.dim());
  for (std::size_t i = 0; i < u.dim(); ++i) x[i] = std::int64_t{v[i]} - std::int64_t{u[i]};
  return x;
}

std::uint64_t volume_between(const GridPoint& u, const GridPoint& v) {
  const auto x = difference(u, v);
  for (std::int64_t c : x) {
    if (c < 0) throw InputError(fmt::format("{} is not below {}", u.to_string(), v.to_string()));
  }
  return volume(x);
}

Rational from_u64(std::uint64_t num, std::uint64_t den) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  Rational q(mpz_class(static_cast<unsigned long>(num)), mpz_class(static_cast<unsigned long>(den)));
  q.canonicalize();
  return q;
}

// Mixed-radix walk over a box [0, dims_0) x ... x [0, dims_{d-1}), row-major.
struct Box {
  std::vector<std::uint64_t> dims;
  std::uint64_t total = 1;

  explicit Box(std::vector<std::uint64_t> sides) : dims(std::move(sides)) {
    for (auto s : dims) total *= s;
  }
  void decode(std::uint64_t index, std::vector<std::uint64_t>& out) const {
    out.resize(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
      out[i] = index % dims[i];
      index /= dims[i];
    }
  }
};

std::uint64_t grid_size_checked(std::uint64_t m, std::size_t d, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (total > limit / m) return limit + 1;
    total *= m;
  }
  return total;
}

// Exact sum of f(x0, x) = V(x0) / (V(x0+x) (V(x0) + V(x))) over x in [0, a].
Rational box_sum_exact(const std::vector<std::uint64_t>& x0, const std::vector<std::uint64_t>& a) {
  std::vector<std::uint64_t> sides(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) sides[i] = a[i] + 1;
  const Box box(sides);
  std::uint64_t v0 = 1;
  for (auto c : x0) v0 *= c + 1;
  Rational sum = 0;
  std::vector<std::uint64_t> x;
  for (std::uint64_t idx = 0; idx < box.total; ++idx) {
    box.decode(idx, x);
    std::uint64_t vx = 1;
    std::uint64_t vsum = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
      vx *= x[i] + 1;
      vsum *= x0[i] + x[i] + 1;
    }
    mpz_class den = mpz_class(static_cast<unsigned long>(vsum)) * static_cast<unsigned long>(v0 + vx);
    Rational term(mpz_class(static_cast<unsigned long>(v0)), den);
    term.canonicalize();
    sum += term;
  }
  return sum;
}

long double box_sum_float(const std::vector<std::uint64_t>& x0, const std::vector<std::uint64_t>& a) {
  std::vector<std::uint64_t> sides(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) sides[i] = a[i] + 1;
  const Box box(sides);
  long double v0 = 1;
  for (auto c : x0) v0 *= static_cast<long double>(c + 1);
  long double sum = 0;
  std::vector<std::uint64_t> x;
  for (std::uint64_t idx = 0; idx < box.total; ++idx) {
    box.decode(idx, x);
    long double vx = 1;
    long double vsum = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
      vx *= static_cast<long double>(x[i] + 1);
      vsum *= static_cast<long double>(x0[i] + x[i] + 1);
    }
    sum += v0 / (vsum * (v0 + vx));
  }
  return sum;
}

Rational closed_form_objective(std::uint64_t m, std::size_t d) {
  Rational base = 0;
  for (std::uint64_t l = 1; l <= m; ++l) base += from_u64(m - l + 1, l);
  Rational out = 1;
  for (std::size_t i = 0; i < d; ++i) out *= base;
  return out;
}

// Sum over difference vectors x of (#pairs with v - u = x) / V(x).
Rational grouped_objective(std::uint64_t m, std::size_t d) {
  const Box box(std::vector<std::uint64_t>(d, m));
  std::vector<std::uint64_t> x;
  Rational sum = 0;
  for (std::uint64_t idx = 0; idx < box.total; ++idx) {
    box.decode(idx, x);
    mpz_class count = 1;
    mpz_class vol = 1;
    for (auto c : x) {
      count *= static_cast<unsigned long>(m - c);
      vol *= static_cast<unsigned long>(c + 1);
    }
    Rational term(count, vol);
    term.canonicalize();
    sum += term;
  }
  return sum;
}

GridPoint to_point(const std::vector<std::uint64_t>& c) {
  std::vector<Coord> out(c.begin(), c.end());
  return GridPoint(std::move(out));
}

void finalize(DualCertificate& cert) {
  cert.scale = dual_scale(cert.d);
  cert.certified_bound = to_long_double(cert.objective_raw) / cert.scale;
  const long double lhs = to_long_double(cert.max_constraint_lhs);
  cert.lhs_within_scale = cert.scale - lhs >= DualCertificate::kMargin;
  if (cert.m >= 3) {
    const long double m = static_cast<long double>(cert.m);
    cert.envelope = std::pow(m * (std::log(m) - 1.0L), static_cast<long double>(cert.d));
    cert.objective_exceeds_envelope =
        to_long_double(cert.objective_raw) - cert.envelope >= DualCertificate::kMargin;
  } else {
    const long double m = static_cast<long double>(cert.m);
    cert.envelope = std::pow(m, static_cast<long double>(cert.d)) *
                    std::pow(std::log(m) - 1.0L, static_cast<long double>(cert.d));
    cert.objective_exceeds_envelope = true;
  }
}

}  // namespace

Rational yhat(const GridPoint& u, const GridPoint& v) { return from_u64(1, volume_between(u, v)); }

std::pair<Rational, Rational> yprime_ydprime(const GridPoint& u, const GridPoint& w, const GridPoint& v) {
  const std::uint64_t low = volume_between(u, w);
  const std::uint64_t high = volume_between(w, v);
  const Rational y = yhat(u, v);
  Rational first = y * from_u64(low, low + high);
  Rational second = y - first;
  return {std::move(first), std::move(second)};
}

Rational constraint1_lhs(const GridPoint& u, const GridPoint& v, std::uint64_t m) {
  volume_between(u, v);
  for (std::size_t i = 0; i < v.dim(); ++i) {
    if (v[i] >= m) throw InputError(fmt::format("{} lies outside [0,{})^d", v.to_string(), m));
  }
  const std::size_t d = u.dim();
  Rational sum = 0;
  // triples (u, v, w) with w >= v: charge the (u,v) part
  {
    std::vector<std::uint64_t> sides(d);
    for (std::size_t i = 0; i < d; ++i) sides[i] = m - v[i];
    const Box box(sides);
    std::vector<std::uint64_t> off;
    for (std::uint64_t idx = 0; idx < box.total; ++idx) {
      box.decode(idx, off);
      GridPoint w = v;
      for (std::size_t i = 0; i < d; ++i) w[i] = static_cast<Coord>(v[i] + off[i]);
      sum += yprime_ydprime(u, v, w).first;
    }
  }
  // triples (w, u, v) with w <= u: charge the (u,v) part
  {
    std::vector<std::uint64_t> sides(d);
    for (std::size_t i = 0; i < d; ++i) sides[i] = u[i] + 1;
    const Box box(sides);
    std::vector<std::uint64_t> off;
    for (std::uint64_t idx = 0; idx < box.total; ++idx) {
      box.decode(idx, off);
      GridPoint w = u;
      for (std::size_t i = 0; i < d; ++i) w[i] = static_cast<Coord>(off[i]);
      sum += yprime_ydprime(w, u, v).second;
    }
  }
  return sum;
}

long double dual_scale(std::size_t d) {
  return std::pow(4.0L * std::numbers::pi_v<long double>, static_cast<long double>(d));
}

std::string_view to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::kCertified:
      return "certified";
    case CertificateStatus::kSpotChecked:
      return "spot-checked";
    case CertificateStatus::kTrivial:
      return "trivial";
  }
  return "unknown";
}

Rational objective_by_enumeration(std::uint64_t m, std::size_t d) {
  const Poset grid = hypergrid(m, d, 1U << 14);
  Rational sum = 0;
  for (ElementId u = 0; u < grid.size(); ++u) {
    for (ElementId v = 0; v < grid.size(); ++v) {
      if (grid.leq(u, v)) sum += yhat(grid.point(u), grid.point(v));
    }
  }
  return sum;
}

TightnessReport split_tightness(std::uint64_t m, std::size_t d) {
  if (m == 0 || d == 0) throw InputError("split_tightness needs m >= 1 and d >= 1");
  if (grid_size_checked(m, d, 4096) > 4096) throw GuardError("split_tightness limited to m^d <= 4096");
  TightnessReport rep;
  rep.m = m;
  rep.d = d;
  // (a, b) = (w - u, v - w) with a_i + b_i <= m - 1; walk a and b over [0,m)^d
  const Box box(std::vector<std::uint64_t>(d, m));
  std::vector<std::uint64_t> a;
  std::vector<std::uint64_t> b;
  for (std::uint64_t ia = 0; ia < box.total; ++ia) {
    box.decode(ia, a);
    for (std::uint64_t ib = 0; ib < box.total; ++ib) {
      box.decode(ib, b);
      std::uint64_t low = 1;
      std::uint64_t high = 1;
      std::uint64_t whole = 1;
      std::uint64_t placements = 1;
      bool fits = true;
      for (std::size_t i = 0; i < d && fits; ++i) {
        fits = a[i] + b[i] <= m - 1;
        low *= a[i] + 1;
        high *= b[i] + 1;
        whole *= a[i] + b[i] + 1;
        placements *= m - a[i] - b[i];
      }
      if (!fits) continue;
      const Rational y = from_u64(1, whole);
      const Rational first = from_u64(low, whole * (low + high));
      const Rational second = from_u64(high, whole * (low + high));
      rep.all_tight = rep.all_tight && first + second == y;
      rep.all_nonnegative = rep.all_nonnegative && sgn(first) >= 0 && sgn(second) >= 0;
      ++rep.difference_pairs;
      rep.triples += placements;
    }
  }
  return rep;
}

DualCertificate certify(std::uint64_t m, std::size_t d, const CertifyOptions& options) {
  if (m == 0 || d == 0) throw InputError("certify needs m >= 1 and d >= 1");
  DualCertificate cert;
  cert.m = m;
  cert.d = d;

  if (options.sample) {
    constexpr std::uint64_t kSampleLimit = std::uint64_t{1} << 24;
    if (m > 65536 || grid_size_checked(m, d, kSampleLimit) > kSampleLimit) {
      throw GuardError(fmt::format("sampled certificate limited to m <= 65536 and m^d <= {}", kSampleLimit));
    }
    cert.status = CertificateStatus::kSpotChecked;
    cert.objective_closed_form = closed_form_objective(m, d);
    cert.objective_raw = cert.objective_closed_form;
    CounterRng rng(options.seed, 0);
    long double best = -1;
    std::vector<std::uint64_t> best_x0;
    std::vector<std::uint64_t> x0(d), below(d), above(d);
    std::vector<Coord> u(d), v(d);
    for (std::uint64_t s = 0; s < *options.sample; ++s) {
      for (std::size_t i = 0; i < d; ++i) {
        const auto a = rng.below(m);
        const auto b = rng.below(m);
        u[i] = static_cast<Coord>(std::min(a, b));
        v[i] = static_cast<Coord>(std::max(a, b));
        x0[i] = v[i] - u[i];
        below[i] = u[i];
        above[i] = m - 1 - v[i];
      }
      const long double lhs = box_sum_float(x0, above) + box_sum_float(x0, below);
      if (lhs > best) {
        best = lhs;
        cert.argmax_u = GridPoint(u);
        cert.argmax_v = GridPoint(v);
      }
    }
    cert.pairs_checked = *options.sample;
    cert.max_constraint_lhs = Rational(static_cast<double>(best));
    finalize(cert);
    return cert;
  }

  const std::uint64_t points = grid_size_checked(m, d, options.max_points);
  if (points > options.max_points) {
    throw GuardError(fmt::format("H_{{{},{}}} exceeds the exact-mode guard of {} points; use sampling", m, d,
                                 options.max_points));
  }
  if (m == 1) cert.status = CertificateStatus::kTrivial;

  cert.objective_raw = grouped_objective(m, d);
  cert.objective_closed_form = closed_form_objective(m, d);
  cert.objective_matches = cert.objective_raw == cert.objective_closed_form;

  // For a fixed difference x0 = v - u the constraint is S(x0, m-1-v) + S(x0, u)
  // where S(x0, a) sums f(x0, x) over the box [0, a]; u ranges over the same
  // box as a, and m-1-v is the mirror image of u inside it.
  struct Candidate {
    long double value;
    std::vector<std::uint64_t> x0;
    std::vector<std::uint64_t> u;
  };
  std::vector<Candidate> candidates;
  long double best = -1;
  constexpr long double kScreen = 1e-12L;

  const Box outer(std::vector<std::uint64_t>(d, m));
  std::vector<std::uint64_t> x0;
  std::vector<std::uint64_t> x;
  std::vector<long double> table;
  for (std::uint64_t o = 0; o < outer.total; ++o) {
    outer.decode(o, x0);
    std::vector<std::uint64_t> sides(d);
    for (std::size_t i = 0; i < d; ++i) sides[i] = m - x0[i];
    const Box box(sides);
    long double v0 = 1;
    for (auto c : x0) v0 *= static_cast<long double>(c + 1);
    table.assign(box.total, 0);
    for (std::uint64_t idx = 0; idx < box.total; ++idx) {
      box.decode(idx, x);
      long double vx = 1;
      long double vsum = 1;
      for (std::size_t i = 0; i < d; ++i) {
        vx *= static_cast<long double>(x[i] + 1);
        vsum *= static_cast<long double>(x0[i] + x[i] + 1);
      }
      table[idx] = v0 / (vsum * (v0 + vx));
    }
    // inclusive prefix sums along each axis
    std::uint64_t stride = 1;
    for (std::size_t axis = d; axis-- > 0;) {
      const std::uint64_t len = box.dims[axis];
      for (std::uint64_t idx = 0; idx < box.total; ++idx) {
        if ((idx / stride) % len != 0) table[idx] += table[idx - stride];
      }
      stride *= len;
    }
    for (std::uint64_t idx = 0; idx < box.total; ++idx) {
      const long double lhs = table[idx] + table[box.total - 1 - idx];
      ++cert.pairs_checked;
      if (lhs < best * (1 - kScreen)) continue;
      if (lhs > best) {
        best = lhs;
        std::erase_if(candidates, [&](const Candidate& c) { return c.value < best * (1 - kScreen); });
      }
      box.decode(idx, x);
      candidates.push_back({lhs, x0, x});
    }
  }

  bool first = true;
  for (const Candidate& c : candidates) {
    std::vector<std::uint64_t> mirror(d);
    std::vector<std::uint64_t> v(d);
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = c.u[i] + c.x0[i];
      mirror[i] = m - 1 - v[i];
    }
    Rational exact = box_sum_exact(c.x0, mirror) + box_sum_exact(c.x0, c.u);
    if (first || exact > cert.max_constraint_lhs) {
      cert.max_constraint_lhs = exact;
      cert.argmax_u = to_point(c.u);
      cert.argmax_v = to_point(v);
      first = false;
    }
  }
  cert.exact_candidates = candidates.size();
  finalize(cert);
  return cert;
}

IntegralReport integral_check(std::size_t d, std::uint64_t samples, std::uint64_t seed) {
  if (d < 1 || d > 3) throw InputError(fmt::format("integral check supports d in {{1,2,3}}, got {}", d));
  if (samples < 100'000) throw InputError("integral check needs at least 1e5 samples");
  IntegralReport r;
  r.d = d;
  r.samples = samples;
  const double pi = std::numbers::pi;
  r.I_bound = std::pow(pi, static_cast<double>(d)) / 2;

  boost::math::quadrature::tanh_sinh<double> quad;
  double l1 = 0;
  // second argument is the (possibly signed) distance to the nearest endpoint
  r.J = quad.integrate(
      [](double x, double xc) {
        const double near = std::abs(xc);
        if (near > 0 && near < 0.5) return 1.0 / std::sqrt(near * (2.0 - near));
        return 1.0 / std::sqrt((1.0 - x) * (1.0 + x));
      },
      -1.0, 1.0, 1e-14, &r.J_estimated_error, &l1);
  r.J_error = std::abs(r.J - pi);
  r.J_ok = r.J_error <= 1e-6;

  auto integrand = [d](const double* x) {
    double plus = 1;
    double minus = 1;
    for (std::size_t i = 0; i < d; ++i) {
      plus *= 1 + x[i];
      minus *= 1 - x[i];
    }
    return 1.0 / (plus + minus);
  };

  if (d == 1) {
    double err = 0;
    r.I_estimate = quad.integrate([&](double t) { return integrand(&t); }, -1.0, 1.0, 1e-14, &err, &l1);
    r.I_stderr = err;
  } else {
    // randomly shifted Sobol replicates
    constexpr std::uint64_t kReplicates = 16;
    const std::uint64_t per = samples / kReplicates;
    CounterRng rng(seed, 1);
    std::vector<double> estimates;
    std::vector<double> point(d);
    std::vector<double> unit(d);
    const double box_volume = std::pow(2.0, static_cast<double>(d));
    for (std::uint64_t rep = 0; rep < kReplicates; ++rep) {
      std::vector<double> shift(d);
      for (auto& s : shift) s = rng.uniform01();
      boost::random::sobol gen(d);
      gen.discard(d);  // skip the origin
      double sum = 0;
      for (std::uint64_t k = 0; k < per; ++k) {
        for (std::size_t i = 0; i < d; ++i) {
          double t = static_cast<double>(gen()) / (static_cast<double>(gen.max()) + 1.0) + shift[i];
          if (t >= 1) t -= 1;
          point[i] = 2 * t - 1;
        }
        const double f = integrand(point.data());
        if (std::isfinite(f)) sum += f;
      }
      estimates.push_back(box_volume * sum / static_cast<double>(per));
    }
    double mean = 0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(estimates.size());
    double var = 0;
    for (double e : estimates) var += (e - mean) * (e - mean);
    var /= static_cast<double>(estimates.size() - 1);
    r.I_estimate = mean;
    r.I_stderr = std::sqrt(var / static_cast<double>(estimates.size()));
  }
  const double rel = r.I_estimate > 0 ? r.I_stderr / r.I_estimate : 1.0;
  r.inconclusive = !std::isfinite(r.I_estimate) || !std::isfinite(rel) || rel > 0.05;
  r.I_ok = !r.inconclusive && r.I_estimate <= r.I_bound * (1 + 3 * rel);
  return r;
}

}  // namespace tcspan
