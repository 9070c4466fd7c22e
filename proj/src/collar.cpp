#include "sskit/collar.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "sskit/error.hpp"

namespace sskit {

CollarPoint::CollarPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error("empty index set");
  double sum = 0;
  for (double c : coords_) {
    if (!(c >= -1 - kPointTolerance)) throw Error("coordinate below -1");
    sum += c;
  }
  if (std::abs(sum - 1) > kPointTolerance) throw Error("coordinates do not sum to 1");
}

double smooth_step(double u) {
  if (u <= 0) return 0;
  if (u >= 1) return 1;
  const double a = std::exp(-1 / u), b = std::exp(-1 / (1 - u));
  return a / (a + b);
}

double cutoff(double a, double b, double x) {
  if (!(a < b)) throw Error("cutoff needs a < b");
  return smooth_step((x - a) / (b - a));
}

namespace {

double kappa_unchecked(Subset s, const std::vector<double>& x) {
  const int n = std::popcount(s);
  double sum = 0, prod = 1;
  const double lo = std::ldexp(1.0, -(n + 1)), hi = std::ldexp(1.0, -n);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (s & (Subset{1} << i)) {
      sum += x[i];
      prod *= cutoff(lo, hi, x[i]);
      if (prod == 0) return 0;
    }
  return cutoff(1 - std::ldexp(1.0, -(n - 1)), 1 - std::ldexp(1.0, -n), sum) * prod;
}

void check_width(std::size_t m) {
  if (m == 0 || m > 16) throw Error("index set size must be between 1 and 16");
}

}  // namespace

double kappa_S(Subset s, const std::vector<double>& x) {
  check_width(x.size());
  if (s == 0) throw Error("kappa_S needs a nonempty subset");
  if (s >> x.size()) throw Error("subset outside the index set");
  return kappa_unchecked(s, x);
}

std::vector<double> partition_g(const std::vector<double>& x) {
  const std::size_t m = x.size();
  check_width(m);
  const Subset full = (Subset{1} << m) - 1;
  std::vector<double> kappa(full + 1, 0), g(full + 1, 0);
  for (Subset s = 1; s <= full; ++s) kappa[s] = kappa_unchecked(s, x);
  double lower = 0;  // sum of g over smaller subsets
  for (int n = 1; n <= static_cast<int>(m); ++n) {
    double level = 0;
    for (Subset s = 1; s <= full; ++s) {
      if (std::popcount(s) != n || kappa[s] == 0) continue;
      double f = kappa[s];
      for (Subset t = 1; t <= full; ++t)
        if (t != s && std::popcount(t) == n) f *= 1 - kappa[t];
      g[s] = f * (1 - lower);
      level += g[s];
    }
    lower += level;
  }
  return g;
}

std::vector<double> phi_piecewise(Subset i, Subset s, const std::vector<double>& x, const std::vector<double>& t) {
  const std::size_t m = x.size();
  check_width(m);
  if (t.size() != m) throw Error("collar vector has the wrong size");
  if ((s & ~i) != 0 || s == 0) throw Error("rescaling set must be a nonempty subset of I");
  double t_sum = 0, rest = 0, xs = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const Subset bit = Subset{1} << j;
    if (!(i & bit)) t_sum += t[j];
    else if (s & bit) xs += x[j];
    else rest += x[j];
  }
  if (xs == 0) throw Error("degenerate rescaling set");
  const double b = (1 - t_sum - rest) / xs;
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    const Subset bit = Subset{1} << j;
    out[j] = !(i & bit) ? t[j] : (s & bit) ? b * x[j] : x[j];
  }
  return out;
}

namespace {

void velocity(Subset i, const std::vector<double>& y, const std::vector<double>& dt, std::vector<double>& v) {
  const std::size_t m = y.size();
  double sdot = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (i & (Subset{1} << j)) {
      v[j] = 0;
    } else {
      v[j] = dt[j];
      sdot += dt[j];
    }
  }
  if (sdot == 0) return;
  const auto g = partition_g(y);
  for (Subset s = 1; s < g.size(); ++s) {
    if (g[s] == 0) continue;
    double denom = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (s & (Subset{1} << j)) denom += y[j];
    if (denom < kChartFloor) {
      if (g[s] >= kChartFloor) throw Error("chart with non-negligible weight at a degenerate rescaling set");
      continue;
    }
    for (std::size_t j = 0; j < m; ++j)
      if (s & (Subset{1} << j)) v[j] -= sdot * g[s] * y[j] / denom;
  }
}

}  // namespace

std::vector<double> collar_flow_along(Subset i, const std::vector<double>& x, const CollarPath& path,
                                      const FlowOptions& opt) {
  const std::size_t m = x.size();
  check_width(m);
  if (opt.steps < 16) throw Error("collar flow needs at least 16 steps");
  if (i == 0 || (i >> m) != 0) throw Error("I must be a nonempty subset of J");
  std::vector<double> t(m), dt(m);
  std::vector<double> y(m, 0);
  for (std::size_t j = 0; j < m; ++j)
    if (i & (Subset{1} << j)) y[j] = x[j];
  CollarPoint check(y);
  (void)check;

  const double h = 1.0 / opt.steps;
  std::vector<double> k1(m), k2(m), k3(m), k4(m), tmp(m);
  auto eval = [&](double tau, const std::vector<double>& state, std::vector<double>& out) {
    path(tau, t, dt);
    velocity(i, state, dt, out);
  };
  for (int step = 0; step < opt.steps; ++step) {
    const double tau = step * h;
    eval(tau, y, k1);
    for (std::size_t j = 0; j < m; ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
    eval(tau + 0.5 * h, tmp, k2);
    for (std::size_t j = 0; j < m; ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
    eval(tau + 0.5 * h, tmp, k3);
    for (std::size_t j = 0; j < m; ++j) tmp[j] = y[j] + h * k3[j];
    eval(tau + h, tmp, k4);
    for (std::size_t j = 0; j < m; ++j) y[j] += h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    path(tau + h, t, dt);
    double sum = 0, violation = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (!(i & (Subset{1} << j))) y[j] = t[j];
      sum += y[j];
      violation = std::max(violation, -1 - y[j]);
    }
    violation = std::max(violation, std::abs(sum - 1));
    if (violation > opt.tolerance) {
      std::ostringstream os;
      os << "collar flow left the simplex: max violation " << violation;
      throw Error(os.str());
    }
  }
  return y;
}

std::vector<double> collar_flow(Subset i, const std::vector<double>& x, const std::vector<double>& t,
                                const FlowOptions& opt) {
  if (t.size() != x.size()) throw Error("collar vector has the wrong size");
  for (std::size_t j = 0; j < t.size(); ++j)
    if (!(i & (Subset{1} << j)) && (t[j] < -1 || t[j] > 0)) throw Error("collar coordinates must lie in [-1, 0]");
  return collar_flow_along(
      i, x,
      [&](double tau, std::vector<double>& out, std::vector<double>& d) {
        for (std::size_t j = 0; j < t.size(); ++j) {
          const bool normal = !(i & (Subset{1} << j));
          out[j] = normal ? tau * t[j] : 0;
          d[j] = normal ? t[j] : 0;
        }
      },
      opt);
}

Subset labels_to_subset(const std::vector<int>& ground, const std::vector<int>& labels) {
  Subset out = 0;
  for (int l : labels) {
    auto it = std::find(ground.begin(), ground.end(), l);
    if (it == ground.end()) throw Error("label " + std::to_string(l) + " is not in the ambient index set");
    out |= Subset{1} << (it - ground.begin());
  }
  return out;
}

namespace {

std::vector<double> flow_within(Subset ambient, Subset i, const std::vector<double>& x, const std::vector<double>& t,
                                const FlowOptions& opt) {
  std::vector<int> pos;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (ambient & (Subset{1} << j)) pos.push_back(static_cast<int>(j));
  std::vector<double> xs, ts;
  Subset is = 0;
  for (std::size_t q = 0; q < pos.size(); ++q) {
    xs.push_back(x[pos[q]]);
    ts.push_back(t[pos[q]]);
    if (i & (Subset{1} << pos[q])) is |= Subset{1} << q;
  }
  const auto ys = collar_flow(is, xs, ts, opt);
  std::vector<double> out(x.size(), 0);
  for (std::size_t q = 0; q < pos.size(); ++q) out[pos[q]] = ys[q];
  return out;
}

}  // namespace

CoherenceReport verify_coherence(const std::vector<int>& i, const std::vector<int>& j, const std::vector<int>& k,
                                 const CoherenceOptions& opt) {
  std::vector<int> ground(k);
  std::sort(ground.begin(), ground.end());
  if (std::adjacent_find(ground.begin(), ground.end()) != ground.end()) throw Error("repeated label in K");
  if (ground.empty() || ground.size() > 4) throw Error("coherence check needs 1 <= |K| <= 4");
  const Subset si = labels_to_subset(ground, i), sj = labels_to_subset(ground, j);
  const Subset sk = (Subset{1} << ground.size()) - 1;
  if (std::popcount(si) != static_cast<int>(i.size()) || std::popcount(sj) != static_cast<int>(j.size()))
    throw Error("repeated label in I or J");
  if (si == 0 || (si & ~sj) != 0) throw Error("chain must satisfy I in J in K with I nonempty");
  const std::size_t m = ground.size();
  const FlowOptions flow{opt.steps, 1e-9};

  CoherenceReport r;
  r.tolerance = opt.tolerance;
  Sampler rng(opt.seed);
  // Samples are drawn in the order the labels are listed.
  auto pos = [&](int label) { return std::find(ground.begin(), ground.end(), label) - ground.begin(); };
  std::vector<int> normal1, normal2;
  for (int l : j)
    if (std::find(i.begin(), i.end(), l) == i.end()) normal1.push_back(l);
  for (int l : k)
    if (std::find(j.begin(), j.end(), l) == j.end()) normal2.push_back(l);
  for (std::size_t n = 0; n < opt.samples; ++n) {
    const auto xi = rng.simplex_point(i.size());
    std::vector<double> x(m, 0), u1(m, 0), u2(m, 0);
    for (std::size_t q = 0; q < i.size(); ++q) x[pos(i[q])] = xi[q];
    for (int l : normal1) u1[pos(l)] = opt.zero_collars ? 0.0 : rng.uniform(-1, 0);
    for (int l : normal2) u2[pos(l)] = opt.zero_collars ? 0.0 : rng.uniform(-1, 0);
    const auto y = flow_within(sj, si, x, u1, flow);
    const auto lhs = flow_within(sk, sj, y, u2, flow);
    std::vector<double> u(m);
    for (std::size_t p = 0; p < m; ++p) u[p] = u1[p] + u2[p];
    const auto rhs = flow_within(sk, si, x, u, flow);
    double res = 0;
    for (std::size_t p = 0; p < m; ++p) res = std::max(res, std::abs(lhs[p] - rhs[p]));
    r.residuals.push_back(res);
    r.max_residual = std::max(r.max_residual, res);
  }
  r.samples = opt.samples;
  r.passed = r.max_residual <= opt.tolerance;
  return r;
}

SupportReport verify_partition_support(const std::vector<double>& x) {
  SupportReport r;
  const auto g = partition_g(x);
  for (Subset s = 1; s < g.size(); ++s) {
    if (!(g[s] > 0)) continue;
    for (std::size_t j = 0; j < x.size(); ++j)
      if ((s & (Subset{1} << j)) && !(x[j] > 0)) r.positive_support = false;
  }
  std::vector<std::size_t> negative;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < 0) negative.push_back(j);
  for (std::size_t p = 0; p + 1 < negative.size(); ++p) {
    const std::size_t a = negative[p], b = negative[p + 1];
    std::vector<double> y(x);
    const double delta = 0.5 * std::min(-x[a], 1 + x[b]);
    y[a] += delta;
    y[b] -= delta;
    const auto gy = partition_g(y);
    for (Subset s = 1; s < g.size(); ++s) r.max_change = std::max(r.max_change, std::abs(gy[s] - g[s]));
  }
  r.positive_dependence = r.max_change <= 1e-12;
  return r;
}

Sampler::Sampler(std::uint64_t seed) : engine_(seed) {}

double Sampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Sampler::uniform(double a, double b) { return a + (b - a) * uniform(); }

std::vector<double> Sampler::standard_simplex_point(std::size_t n) {
  std::vector<double> w(n);
  double sum = 0;
  for (auto& v : w) {
    v = -std::log1p(-uniform());
    sum += v;
  }
  for (auto& v : w) v /= sum;
  return w;
}

std::vector<double> Sampler::simplex_point(std::size_t n) {
  auto w = standard_simplex_point(n);
  double sum = 0;
  for (std::size_t p = 0; p + 1 < n; ++p) {
    w[p] = (1.0 + n) * w[p] - 1;
    sum += w[p];
  }
  w[n - 1] = 1 - sum;
  return w;
}

}  // namespace sskit
