/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "brb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <string>

#include "brb/error.hpp"

namespace brb {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream + kGolden));
}

}  // namespace

std::uint64_t default_seed() {
  const char* env = std::getenv("BRB_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  try {
    std::size_t used = 0;
    const std::uint64_t seed = std::stoull(env, &used, 0);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return seed;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidInput,
                std::string("BRB_SEED is not an integer: ") + env);
  }
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), key_(stream_key(seed, stream)) {}

CounterRng::result_type CounterRng::operator()() {
  return mix64(key_ + (counter_++) * kGolden);
}

double CounterRng::uniform() {
  return double((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

CounterRng CounterRng::split(std::uint64_t child) const {
  CounterRng out(seed_);
  out.key_ = mix64(key_ ^ mix64(child + 1));
  return out;
}

DensityState StateSample::state() const {
  const Eigen::Index d = basis.rows();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const auto v = basis.col(Eigen::Index(i));
    rho += spectrum[i] * v * v.adjoint();
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityState(ComplexMatrix(rho));
}

double StateSample::expectation(const ComplexMatrix& op) const {
  double value = 0.0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    if (spectrum[i] == 0.0) continue;
    const auto v = basis.col(Eigen::Index(i));
    value += spectrum[i] * v.dot(op.eigen() * v).real();
  }
  return value;
}

StateSampler::StateSampler(const SamplerConfig& cfg, std::size_t d,
                           std::optional<Eigen::MatrixXcd> reference)
    : cfg_(cfg), d_(d), rng_(cfg.seed) {
  if (d == 0 || d > kMaxDim) {
    throw Error(ErrorCode::DimensionOverflow, "sampler dimension out of range");
  }
  const double lo = 1.0 / double(d);
  if (cfg.constraint != Constraint::None &&
      !(cfg.value >= lo - 1e-12 && cfg.value <= 1.0 + 1e-12)) {
    throw Error(ErrorCode::InfeasibleConstraint,
                "constraint value " + std::to_string(cfg.value) +
                    " outside [1/d, 1]");
  }
  reference_ = reference.value_or(
      Eigen::MatrixXcd::Identity(Eigen::Index(d), Eigen::Index(d)));
  if (reference_.rows() != Eigen::Index(d) || reference_.cols() != Eigen::Index(d)) {
    throw Error(ErrorCode::DimMismatch, "reference basis has the wrong size");
  }
}

std::vector<double> StateSampler::sample_spectrum() {
  const std::size_t d = d_;
  const double lo = 1.0 / double(d);
  auto dirichlet = [&](std::size_t n) {
    std::vector<double> w(n);
    double s = 0.0;
    for (double& x : w) {
      x = -std::log(1.0 - rng_.uniform());
      s += x;
    }
    for (double& x : w) x /= s;
    return w;
  };
  auto sorted = [](std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
  };

  switch (cfg_.constraint) {
    case Constraint::None:
      return sorted(dirichlet(d));

    case Constraint::FixedLambda1: {
      const double l1 = std::clamp(cfg_.value, lo, 1.0);
      if (l1 >= 1.0 - 1e-15 || d == 1) {
        std::vector<double> out(d, 0.0);
        out[0] = 1.0;
        return out;
      }
      if (l1 <= lo + 1e-15) return std::vector<double>(d, lo);
      for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
        std::vector<double> rest = dirichlet(d - 1);
        bool ok = true;
        for (double& x : rest) {
          x *= 1.0 - l1;
          ok = ok && x <= l1;
        }
        if (!ok) continue;
        rest.insert(rest.begin(), l1);
        return sorted(std::move(rest));
      }
      break;
    }

    case Constraint::FixedLinearPurity: {
      const double p = std::clamp(cfg_.value, lo, 1.0);
      if (p >= 1.0 - 1e-15 || d == 1) {
        std::vector<double> out(d, 0.0);
        out[0] = 1.0;
        return out;
      }
      if (p <= lo + 1e-15) return std::vector<double>(d, lo);
      // Scale a uniform simplex point about 1/d to the requested purity.
      for (std::size_t attempt = 0; attempt < kMaxRejections; ++attempt) {
        std::vector<double> w = dirichlet(d);
        double spread = 0.0;
        for (double x : w) spread += (x - lo) * (x - lo);
        if (spread <= 0.0) continue;
        const double s = std::sqrt((p - lo) / spread);
        bool ok = true;
        for (double& x : w) {
          x = lo + s * (x - lo);
          ok = ok && x >= 0.0;
        }
        if (!ok) continue;
        return sorted(std::move(w));
      }
      break;
    }
  }
  throw Error(ErrorCode::InfeasibleConstraint,
              "rejection sampling exhausted " + std::to_string(kMaxRejections) +
                  " attempts");
}

Eigen::MatrixXcd StateSampler::sample_basis() {
  const Eigen::Index d = Eigen::Index(d_);
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      g(i, j) = complex(rng_.normal(), rng_.normal());
  const Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Identity(d, d) + cfg_.mixing * g;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  // Fix column phases against R's diagonal so Q is a function of m.
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return reference_ * q;
}

StateSample StateSampler::next() {
  if (done()) {
    throw Error(ErrorCode::OutOfRange, "sample stream exhausted");
  }
  StateSample out;
  out.spectrum = sample_spectrum();
  out.basis = sample_basis();
  ++emitted_;
  return out;
}

std::vector<StateSample> sample_constrained_states(
    const SamplerConfig& cfg, std::size_t d,
    std::optional<Eigen::MatrixXcd> reference) {
  StateSampler sampler(cfg, d, std::move(reference));
  std::vector<StateSample> out;
  out.reserve(cfg.count);
  while (!sampler.done()) out.push_back(sampler.next());
  return out;
}

namespace {

struct Vertex {
  std::vector<double> x;
  double f;  // objective being minimized (negated)
};

class Minimizer {
 public:
  Minimizer(const Objective& f, const NelderMeadConfig& cfg)
      : f_(f), cfg_(cfg) {}

  std::size_t evaluations = 0;

  void clamp(std::vector<double>& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!cfg_.lower.empty()) x[i] = std::max(x[i], cfg_.lower[i]);
      if (!cfg_.upper.empty()) x[i] = std::min(x[i], cfg_.upper[i]);
    }
  }

  Vertex eval(std::vector<double> x) {
    clamp(x);
    ++evaluations;
    const double v = f_(x);
    return {std::move(x), std::isfinite(v) ? -v : std::numeric_limits<double>::infinity()};
  }

  Vertex run(const std::vector<double>& x0, double step) {
    const std::size_t n = x0.size();
    std::vector<Vertex> simplex;
    simplex.push_back(eval(x0));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> x = simplex[0].x;
      double h = step;
      if (!cfg_.upper.empty() && x[i] + h > cfg_.upper[i]) h = -h;
      x[i] += h;
      simplex.push_back(eval(x));
    }

    auto combine = [&](const std::vector<double>& a, const std::vector<double>& b,
                       double t) {
      std::vector<double> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + t * (b[i] - a[i]);
      return out;
    };

    for (std::size_t iter = 0; iter < cfg_.max_iterations; ++iter) {
      std::sort(simplex.begin(), simplex.end(),
                [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      double diameter = 0.0;
      for (std::size_t k = 1; k <= n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          diameter = std::max(diameter, std::abs(simplex[k].x[i] - simplex[0].x[i]));
      if (diameter <= cfg_.tolerance) break;

      std::vector<double> centroid(n, 0.0);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[k].x[i] / double(n);

      const Vertex& worst = simplex[n];
      Vertex reflected = eval(combine(centroid, worst.x, -1.0));
      if (reflected.f < simplex[0].f) {
        Vertex expanded = eval(combine(centroid, worst.x, -2.0));
        simplex[n] = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
      } else if (reflected.f < simplex[n - 1].f) {
        simplex[n] = std::move(reflected);
      } else {
        const bool outside = reflected.f < worst.f;
        Vertex contracted =
            eval(combine(centroid, outside ? reflected.x : worst.x, 0.5));
        if (contracted.f < std::min(reflected.f, worst.f)) {
          simplex[n] = std::move(contracted);
        } else {
          for (std::size_t k = 1; k <= n; ++k)
            simplex[k] = eval(combine(simplex[0].x, simplex[k].x, 0.5));
        }
      }
    }
    return *std::min_element(simplex.begin(), simplex.end(),
                             [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  }

 private:
  const Objective& f_;
  const NelderMeadConfig& cfg_;
};

}  // namespace

NelderMeadResult nelder_mead_max(const Objective& f, std::vector<double> x0,
                                 const NelderMeadConfig& cfg) {
  if (x0.empty()) {
    throw Error(ErrorCode::InvalidInput, "empty starting point");
  }
  if ((!cfg.lower.empty() && cfg.lower.size() != x0.size()) ||
      (!cfg.upper.empty() && cfg.upper.size() != x0.size())) {
    throw Error(ErrorCode::DimMismatch, "box bounds do not match the start");
  }
  const bool boxed = !cfg.lower.empty() && !cfg.upper.empty();
  Minimizer nm(f, cfg);
  CounterRng rng(cfg.seed, 0x4E4D);

  Vertex best = nm.run(x0, cfg.initial_step);
  for (std::size_t k = 1; k <= cfg.restarts; ++k) {
    std::vector<double> start = best.x;
    double step = cfg.initial_step;
    if (k % 2 == 0) {
      for (std::size_t i = 0; i < start.size(); ++i) {
        start[i] = boxed ? cfg.lower[i] + (cfg.upper[i] - cfg.lower[i]) * rng.uniform()
                         : start[i] + cfg.initial_step * rng.normal();
      }
    } else {
      step = cfg.initial_step * std::pow(0.5, double(k / 2));
    }
    Vertex candidate = nm.run(start, step);
    if (candidate.f < best.f) best = std::move(candidate);
  }
  return {best.x, -best.f, nm.evaluations};
}

StationarityResult stationarity_check(const RankSolution& sol,
                                      std::span<const double> mu) {
  const std::size_t r = sol.lambdas.size();
  if (r == 0 || r > mu.size()) {
    throw Error(ErrorCode::DimMismatch, "solution rank does not fit mu");
  }
  // Active eigenvalues are the top r for Upper and the bottom r for Lower.
  std::vector<double> active(r);
  for (std::size_t k = 0; k < r; ++k) {
    active[k] = sol.direction == Direction::Upper ? mu[k] : mu[mu.size() - 1 - k];
  }
  const double spread = *std::max_element(active.begin(), active.end()) -
                        *std::min_element(active.begin(), active.end());

  double alpha = 0.0;
  double beta = 0.0;
  if (r == 1 || spread <= 1e-12 * (1.0 + std::abs(active[0]))) {
    for (double l : sol.lambdas) alpha += 2.0 * l / double(r);
  } else {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(r), 2);
    Eigen::VectorXd b(static_cast<Eigen::Index>(r));
    for (std::size_t k = 0; k < r; ++k) {
      a(Eigen::Index(k), 0) = 1.0;
      a(Eigen::Index(k), 1) = active[k];
      b(Eigen::Index(k)) = 2.0 * sol.lambdas[k];
    }
    const Eigen::Vector2d x = a.colPivHouseholderQr().solve(b);
    alpha = x(0);
    beta = x(1);
  }
  double residual = 0.0;
  for (std::size_t k = 0; k < r; ++k) {
    residual = std::max(residual,
                        std::abs(2.0 * sol.lambdas[k] - alpha - beta * active[k]));
  }
  return {alpha, beta, residual};
}

NelderMeadResult min_linear_purity_nm(std::span<const double> mu, double target,
                                      const NelderMeadConfig& cfg) {
  const std::size_t d = mu.size();
  if (d == 0) throw Error(ErrorCode::InvalidInput, "empty spectrum");
  const double top = *std::max_element(mu.begin(), mu.end());
  const double bottom = *std::min_element(mu.begin(), mu.end());
  const std::size_t i_top = std::size_t(std::max_element(mu.begin(), mu.end()) - mu.begin());
  const std::size_t i_bottom = std::size_t(std::min_element(mu.begin(), mu.end()) - mu.begin());
  if (target > top + 1e-12 || target < bottom - 1e-12) {
    throw Error(ErrorCode::Infeasible, "target outside the operator spectrum");
  }

  // z -> z^2 / |z|^2 on the simplex, then the exact move toward the extreme
  // eigenvector that restores sum(mu lambda) = target.
  auto spectrum_of = [&](std::span<const double> z) {
    std::vector<double> l(d);
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      l[i] = z[i] * z[i];
      s += l[i];
    }
    if (s <= 0.0) {
      std::fill(l.begin(), l.end(), 1.0 / double(d));
    } else {
      for (double& x : l) x /= s;
    }
    double v = 0.0;
    for (std::size_t i = 0; i < d; ++i) v += mu[i] * l[i];
    double t = 0.0;
    std::size_t pole = i_top;
    if (v < target && top > v) {
      t = (target - v) / (top - v);
    } else if (v > target && v > bottom) {
      t = (v - target) / (v - bottom);
      pole = i_bottom;
    }
    for (double& x : l) x *= 1.0 - t;
    l[pole] += t;
    return l;
  };
  auto neg_purity = [&](std::span<const double> z) {
    const std::vector<double> l = spectrum_of(z);
    double p = 0.0;
    for (double x : l) p += x * x;
    return -p;
  };

  NelderMeadResult res = nelder_mead_max(neg_purity, std::vector<double>(d, 1.0), cfg);
  return {spectrum_of(res.x), -res.value, res.evaluations};
}

}  // namespace brb
