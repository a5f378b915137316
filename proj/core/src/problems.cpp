// Copyright 2026 The lodnls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <string>

#include "lodnls/error.hpp"
#include "lodnls/experiments.hpp"
#include "lodnls/problem.hpp"

namespace lodnls {

AnalyticFunction ExactSolution::at(double t) const {
  AnalyticFunction f;
  f.value = [v = value, t](double x, double y) { return v(x, y, t); };
  if (gradient) f.gradient = [g = gradient, t](double x, double y) { return g(x, y, t); };
  return f;
}

AnalyticFunction ExactSolution::time_derivative_at(double t) const {
  require(static_cast<bool>(time_derivative), ErrorCode::kInvalidArgument,
          "exact solution has no time derivative");
  AnalyticFunction f;
  f.value = [d = time_derivative, t](double x, double y) { return d(x, y, t); };
  return f;
}

namespace {

constexpr double kPi = std::numbers::pi;

/// c * sin(pi x) sin(pi y) with its gradient.
AnalyticFunction sine_mode(Complex c) {
  AnalyticFunction f;
  f.value = [c](double x, double y) { return c * std::sin(kPi * x) * std::sin(kPi * y); };
  f.gradient = [c](double x, double y) {
    return std::array<Complex, 2>{c * kPi * std::cos(kPi * x) * std::sin(kPi * y),
                                  c * kPi * std::sin(kPi * x) * std::cos(kPi * y)};
  };
  return f;
}

CoefficientField weakly_perturbed_potential() {
  return CoefficientField::smooth(
      "ex1-V",
      [](double x, double y) {
        const double s = std::sin(kPi * x) * std::sin(kPi * y);
        return -2.0 * kPi * kPi - 0.01 * s * s;
      },
      -2.0 * kPi * kPi - 0.01, -2.0 * kPi * kPi);
}

CoefficientField quartic_diffusion() {
  return CoefficientField::smooth(
      "ex2-b",
      [](double x, double y) {
        const double p = (2.8 + x * x) * (2.8 + y * y);
        return p * p;
      },
      std::pow(2.8, 4), std::pow(3.8, 4));
}

CoefficientField two_scale_potential() {
  auto lattice = [](double x, double y, double e) {
    return (0.01 + std::cos(2.0 * kPi * x / e)) * (0.01 + std::cos(2.0 * kPi * y / e));
  };
  return CoefficientField::smooth(
      "ex3-V",
      [lattice](double x, double y) {
        const double v1 = (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5);
        const bool inner = x >= 0.0 && x <= 0.5 && y >= 0.0 && y <= 0.5;
        return v1 + lattice(x, y, inner ? 1.0 / 8.0 : 1.0 / 16.0);
      },
      -1.0201, 0.5 + 1.0201);
}

CoefficientField shifted_harmonic_potential(bool center_domain) {
  return CoefficientField::smooth(
      center_domain ? "ex4-V-centered" : "ex4-V",
      [center_domain](double x, double y) {
        if (center_domain) {
          x -= 0.5;
          y -= 0.5;
        }
        const double base = 0.1 * (x * x + y * y);
        return x >= 0.0 ? base + 1.8 : base;
      },
      0.0, 2.0);
}

CoefficientField five_frequency_diffusion() {
  return CoefficientField::smooth(
      "ex5-b",
      [](double x, double y) {
        constexpr double e1 = 1.0 / 5, e2 = 1.0 / 13, e3 = 1.0 / 17, e4 = 1.0 / 31, e5 = 1.0 / 65;
        const double w = 2.0 * kPi;
        const double sum =
            (3.0 + std::sin(w * x / e1)) / (3.0 + std::sin(w * y / e1)) +
            (3.0 + std::sin(w * y / e2)) / (3.0 + std::cos(w * x / e2)) +
            (3.0 + std::cos(w * x / e3)) / (3.0 + std::sin(w * y / e3)) +
            (3.0 + std::sin(w * x / e4)) / (3.0 + std::cos(w * y / e4)) +
            (3.0 + std::cos(w * x / e5)) / (3.0 + std::sin(w * y / e5)) +
            std::sin(4.0 * x * x * y * y) + 1.0;
        return sum / 6.0;
      },
      0.45, 2.0);
}

}  // namespace

ProblemSpec configure_example(int id, std::uint64_t seed, bool center_domain) {
  ProblemSpec p;
  p.example_id = id;
  p.final_time = 1.0;
  p.nonlinearity = Nonlinearity::cubic();
  p.u0 = sine_mode(0.1);
  p.u1 = sine_mode(Complex(0.0, -0.1));
  switch (id) {
    case 1: {
      p.name = "homogeneous";
      p.V = weakly_perturbed_potential();
      ExactSolution exact;
      exact.value = [](double x, double y, double t) {
        return 0.1 * std::sin(kPi * x) * std::sin(kPi * y) * std::exp(Complex(0.0, -t));
      };
      exact.gradient = [](double x, double y, double t) {
        const Complex phase = 0.1 * kPi * std::exp(Complex(0.0, -t));
        return std::array<Complex, 2>{phase * std::cos(kPi * x) * std::sin(kPi * y),
                                      phase * std::sin(kPi * x) * std::cos(kPi * y)};
      };
      exact.time_derivative = [](double x, double y, double t) {
        return Complex(0.0, -0.1) * std::sin(kPi * x) * std::sin(kPi * y) *
               std::exp(Complex(0.0, -t));
      };
      p.exact = exact;
      break;
    }
    case 2:
      p.name = "inhomogeneous";
      p.b = quartic_diffusion();
      p.V = weakly_perturbed_potential();
      break;
    case 3:
      p.name = "two-scale-potential";
      p.V = two_scale_potential();
      p.u0 = sine_mode(0.4);
      p.u1 = sine_mode(Complex(0.0, -0.8 * kPi));
      break;
    case 4:
      p.name = "shifted-harmonic";
      p.b = quartic_diffusion();
      p.V = shifted_harmonic_potential(center_domain);
      break;
    case 5:
      p.name = "checkerboard";
      p.b = five_frequency_diffusion();
      p.V = CoefficientField::checkerboard(seed, 1.0 / 128.0, 0.05, 20.0);
      break;
    default:
      throw_error(ErrorCode::kInvalidArgument,
                  "unknown example id " + std::to_string(id) + " (expected 1..5)");
  }
  return p;
}

}  // namespace lodnls
