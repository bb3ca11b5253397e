/**
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "brb/bell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "brb/error.hpp"

namespace brb {

namespace {

constexpr double kCompletenessTolerance = 1e-10;

std::size_t measurement_dim(const std::vector<Measurement>& party) {
  for (const auto& m : party)
    for (const auto& e : m) return e.dim();
  return 0;
}

void validate_party(const std::vector<Measurement>& party, const char* name,
                    double psd_tolerance) {
  if (party.empty()) {
    throw Error(ErrorCode::InvalidScenario,
                std::string(name) + " has no measurement settings");
  }
  const std::size_t d = measurement_dim(party);
  for (std::size_t x = 0; x < party.size(); ++x) {
    const auto& setting = party[x];
    const std::string where =
        std::string(name) + " setting " + std::to_string(x);
    if (setting.empty()) {
      throw Error(ErrorCode::InvalidScenario, where + " has no outcomes");
    }
    ComplexMatrix sum(d);
    for (const auto& element : setting) {
      if (element.dim() != d) {
        throw Error(ErrorCode::InvalidScenario,
                    where + ": inconsistent local dimension");
      }
      if (!element.is_hermitian()) {
        throw Error(ErrorCode::InvalidScenario,
                    where + ": POVM element is not Hermitian");
      }
      if (eig_hermitian(element).values.back() < -psd_tolerance) {
        throw Error(ErrorCode::InvalidScenario,
                    where + ": POVM element is not positive semidefinite");
      }
      sum += element;
    }
    const double defect = (sum - ComplexMatrix::identity(d)).max_abs();
    if (defect > kCompletenessTolerance) {
      throw Error(ErrorCode::InvalidScenario,
                  where + ": POVM elements do not sum to identity");
    }
  }
}

double outcome_sign(std::size_t a) { return a == 0 ? -1.0 : 1.0; }

}  // namespace

std::size_t BellScenario::dim_a() const { return measurement_dim(alice); }
std::size_t BellScenario::dim_b() const { return measurement_dim(bob); }

void BellScenario::validate() const {
  validate_party(alice, "alice", psd_tolerance);
  validate_party(bob, "bob", psd_tolerance);
  if (dim_a() * dim_b() > kMaxDim) {
    throw Error(ErrorCode::DimensionOverflow, "joint dimension too large");
  }
  for (const auto& t : terms) {
    if (t.x >= alice.size() || t.y >= bob.size() ||
        t.a >= alice[t.x].size() || t.b >= bob[t.y].size()) {
      throw Error(ErrorCode::InvalidScenario,
                  "coefficient index (a=" + std::to_string(t.a) +
                      ", b=" + std::to_string(t.b) + ", x=" +
                      std::to_string(t.x) + ", y=" + std::to_string(t.y) +
                      ") outside the scenario");
    }
    if (!std::isfinite(t.c)) {
      throw Error(ErrorCode::InvalidScenario, "non-finite coefficient");
    }
  }
}

void CorrelationScenario::validate() const {
  if (bloch_a.empty() || bloch_b.empty()) {
    throw Error(ErrorCode::InvalidScenario, "missing Bloch vectors");
  }
  if (g.size() != bloch_a.size()) {
    throw Error(ErrorCode::InvalidScenario,
                "g must have one row per Alice setting");
  }
  for (const auto& row : g) {
    if (row.size() != bloch_b.size()) {
      throw Error(ErrorCode::InvalidScenario,
                  "g must have one column per Bob setting");
    }
  }
  for (const auto& v : bloch_a) observable_from_bloch(v);
  for (const auto& v : bloch_b) observable_from_bloch(v);
}

ComplexMatrix observable_from_bloch(const BlochVector& a) {
  const double norm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw Error(ErrorCode::NotUnit,
                "Bloch vector norm " + std::to_string(norm) + " is not 1");
  }
  return complex(a[0]) * pauli::x() + complex(a[1]) * pauli::y() +
         complex(a[2]) * pauli::z();
}

ComplexMatrix build_bell_operator(const BellScenario& s) {
  s.validate();
  ComplexMatrix out(s.dim_a() * s.dim_b());
  for (const auto& t : s.terms) {
    if (t.c == 0.0) continue;
    out += complex(t.c) * tensor(s.alice[t.x][t.a], s.bob[t.y][t.b]);
  }
  return out;
}

ComplexMatrix build_correlation_operator(const CorrelationScenario& s) {
  s.validate();
  ComplexMatrix out(4);
  for (std::size_t x = 0; x < s.bloch_a.size(); ++x) {
    const ComplexMatrix ax = observable_from_bloch(s.bloch_a[x]);
    for (std::size_t y = 0; y < s.bloch_b.size(); ++y) {
      if (s.g[x][y] == 0.0) continue;
      out += complex(s.g[x][y]) *
             tensor(ax, observable_from_bloch(s.bloch_b[y]));
    }
  }
  return out;
}

BellScenario to_bell_scenario(const CorrelationScenario& s) {
  s.validate();
  const ComplexMatrix id = ComplexMatrix::identity(2);
  auto povm = [&](const BlochVector& v) {
    const ComplexMatrix obs = observable_from_bloch(v);
    return Measurement{complex(0.5) * (id - obs), complex(0.5) * (id + obs)};
  };
  BellScenario out;
  for (const auto& v : s.bloch_a) out.alice.push_back(povm(v));
  for (const auto& v : s.bloch_b) out.bob.push_back(povm(v));
  for (std::size_t x = 0; x < s.g.size(); ++x)
    for (std::size_t y = 0; y < s.g[x].size(); ++y) {
      if (s.g[x][y] == 0.0) continue;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          out.terms.push_back(
              {a, b, x, y, s.g[x][y] * outcome_sign(a) * outcome_sign(b)});
    }
  return out;
}

ComplexMatrix steering_operator_f2(const ComplexMatrix& a1,
                                   const ComplexMatrix& a2) {
  for (const ComplexMatrix* a : {&a1, &a2}) {
    if (a->dim() != 2 || !a->is_hermitian() ||
        ((*a) * (*a) - ComplexMatrix::identity(2)).max_abs() > 1e-9) {
      throw Error(ErrorCode::NotDichotomic,
                  "steering observables must be qubit observables with "
                  "eigenvalues +1 and -1");
    }
  }
  return tensor(a1, pauli::z()) + tensor(a2, pauli::x());
}

double local_bound(const BellScenario& s) {
  s.validate();
  auto strategies = [](const std::vector<Measurement>& party) {
    double count = 1.0;
    for (const auto& m : party) count *= double(m.size());
    return count;
  };
  if (strategies(s.alice) > double(kMaxStrategies) ||
      strategies(s.bob) > double(kMaxStrategies)) {
    throw Error(ErrorCode::TooLargeToEnumerate,
                "more than " + std::to_string(kMaxStrategies) +
                    " deterministic strategies per party");
  }

  // weight[y][b] accumulated for a fixed Alice strategy.
  std::vector<std::vector<double>> weight(s.bob.size());
  for (std::size_t y = 0; y < s.bob.size(); ++y) {
    weight[y].assign(s.bob[y].size(), 0.0);
  }

  std::vector<std::size_t> response(s.alice.size(), 0);
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    for (auto& w : weight) std::fill(w.begin(), w.end(), 0.0);
    for (const auto& t : s.terms) {
      if (response[t.x] == t.a) weight[t.y][t.b] += t.c;
    }
    double value = 0.0;
    for (const auto& w : weight) value += *std::max_element(w.begin(), w.end());
    best = std::max(best, value);

    // Mixed-radix increment over Alice's responses.
    std::size_t x = 0;
    while (x < response.size()) {
      if (++response[x] < s.alice[x].size()) break;
      response[x] = 0;
      ++x;
    }
    if (x == response.size()) break;
  }
  return best;
}

double local_bound(const CorrelationScenario& s) {
  return local_bound(to_bell_scenario(s));
}

Incompatibility incompatibility(const ComplexMatrix& a1, const ComplexMatrix& a2,
                                const ComplexMatrix& b1,
                                const ComplexMatrix& b2) {
  for (const ComplexMatrix* m : {&a1, &a2, &b1, &b2}) {
    if (!m->is_hermitian()) {
      throw Error(ErrorCode::NotHermitian, "observables must be Hermitian");
    }
  }
  const double ca = commutator_norm(a1, a2);
  const double cb = commutator_norm(b1, b2);
  return {ca, cb, ca * cb, ca + cb};
}

BellScenario i3322_fixture() {
  using c = complex;
  const ComplexMatrix id = ComplexMatrix::identity(2);
  const ComplexMatrix a_first[3] = {
      {{0.4379, c(0.3455, 0.3560)}, {c(0.3455, -0.3560), 0.5621}},
      {{0.6885, c(0.3964, -0.2394)}, {c(0.3964, 0.2394), 0.3115}},
      {{0.9187, c(-0.0737, 0.2632)}, {c(-0.0737, -0.2632), 0.0813}},
  };
  const ComplexMatrix b_first[3] = {
      {{0.6973, c(0.0630, -0.4551)}, {c(0.0630, 0.4551), 0.3027}},
      {{0.8982, c(-0.2538, 0.1645)}, {c(-0.2538, -0.1645), 0.1018}},
      {{0.6472, c(-0.0110, 0.4777)}, {c(-0.0110, -0.4777), 0.3528}},
  };

  BellScenario s;
  s.psd_tolerance = 5e-4;
  for (const auto& m : a_first) s.alice.push_back({m, id - m});
  for (const auto& m : b_first) s.bob.push_back({m, id - m});
  constexpr std::size_t trivial = 3;
  s.alice.push_back({id});
  s.bob.push_back({id});

  // <A1> + <A2> - <B1> - <B2>
  //   + A1B1 + A2B1 + A3B1 + A1B2 + A2B2 - A3B2 + A1B3 - A2B3  <= 4
  auto alice_marginal = [&](std::size_t x, double h) {
    for (std::size_t a = 0; a < 2; ++a)
      s.terms.push_back({a, 0, x, trivial, h * outcome_sign(a)});
  };
  auto bob_marginal = [&](std::size_t y, double h) {
    for (std::size_t b = 0; b < 2; ++b)
      s.terms.push_back({0, b, trivial, y, h * outcome_sign(b)});
  };
  auto correlator = [&](std::size_t x, std::size_t y, double g) {
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        s.terms.push_back({a, b, x, y, g * outcome_sign(a) * outcome_sign(b)});
  };
  alice_marginal(0, 1.0);
  alice_marginal(1, 1.0);
  bob_marginal(0, -1.0);
  bob_marginal(1, -1.0);
  correlator(0, 0, 1.0);
  correlator(1, 0, 1.0);
  correlator(2, 0, 1.0);
  correlator(0, 1, 1.0);
  correlator(1, 1, 1.0);
  correlator(2, 1, -1.0);
  correlator(0, 2, 1.0);
  correlator(1, 2, -1.0);
  return s;
}

CorrelationScenario chsh_c4_fixture() {
  const double s = 1.0 / std::sqrt(2.0);
  CorrelationScenario out;
  out.g = {{1.0, 1.0}, {1.0, -1.0}};
  out.bloch_a = {BlochVector{0.0, 0.0, 1.0}, BlochVector{1.0, 0.0, 0.0}};
  out.bloch_b = {BlochVector{s, 0.0, s}, BlochVector{-s, 0.0, s}};
  return out;
}

}  // namespace brb
