// Copyright 2026 The opsys Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "opsys/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include <ceres/ceres.h>

#include "opsys/errors.hpp"

namespace opsys {

namespace {

struct Pair {
  ComplexMatrix s;
  ComplexMatrix t;
};

double pair_distance(const Pair& a, const Pair& b) {
  return std::sqrt((a.s - b.s).squaredNorm() + (a.t - b.t).squaredNorm());
}

ComplexMatrix psd_part(const ComplexMatrix& m) {
  return psd_project(HermitianMatrix(m)).matrix();
}

bool psd_within_slack(const ComplexMatrix& m, const Tolerance& tol) {
  return is_psd(HermitianMatrix(m), tol);
}

// Smallest eigenvalue of the 2x2 Hermitian [[a, b], [conj(b), c]].
double lambda_min_2x2(double a, double c, Complex b) {
  const double half_diff = 0.5 * (a - c);
  return 0.5 * (a + c) - std::sqrt(half_diff * half_diff + std::norm(b));
}

// Exact closed-form PSD test for a 2x2 Hermitian matrix.
bool psd_2x2(double a, double c, Complex b) {
  return a >= 0.0 && c >= 0.0 && a * c - std::norm(b) >= 0.0;
}

// Farkas certificate: PSD P, Q with Pi_L(P - Q) = 0 and <P, S> + <Q, T> = c < 0
// rule out every A in L, since <P, S + A> + <Q, T - A> = c. Any PSD pair then
// lies at distance >= -c / ||(P, Q)|| from {(S + A, T - A)}. The L-component D
// of a PSD candidate pair is cancelled by adding D_- to P and D_+ to Q, which
// keeps both PSD.
std::optional<double> certified_gap(ComplexMatrix p, ComplexMatrix q, const ComplexMatrix& s0,
                                    const ComplexMatrix& t0, int n) {
  const HermitianMatrix d(project_block_diagonal(p - q, n));
  const ComplexMatrix d_plus = psd_project(d).matrix();
  p += d_plus - d.matrix();
  q += d_plus;
  const double scale = std::sqrt(p.squaredNorm() + q.squaredNorm());
  if (scale == 0.0) return std::nullopt;
  const double c = real_inner(p, s0) + real_inner(q, t0);
  if (!(c < 0.0)) return std::nullopt;
  return -c / scale;
}

// Coordinates of the hermitian part of M_k(D_n): real diagonal entries and
// sqrt(2)-scaled real and imaginary parts above the diagonal, so that the
// Euclidean inner product matches Re tr(A* B).
class BlockDiagonalCoordinates {
 public:
  BlockDiagonalCoordinates(Eigen::Index kn, int n) : kn_(kn) {
    for (Eigen::Index r = 0; r < kn; ++r) {
      for (Eigen::Index c = r; c < kn; c += n) positions_.emplace_back(r, c);
    }
    for (const auto& [r, c] : positions_) size_ += r == c ? 1 : 2;
  }

  int size() const { return size_; }

  ComplexMatrix to_matrix(const double* v) const {
    ComplexMatrix z = ComplexMatrix::Zero(kn_, kn_);
    int j = 0;
    for (const auto& [r, c] : positions_) {
      if (r == c) {
        z(r, r) = v[j++];
      } else {
        z(r, c) = Complex(v[j], v[j + 1]) / std::sqrt(2.0);
        z(c, r) = std::conj(z(r, c));
        j += 2;
      }
    }
    return z;
  }

  void from_matrix(const ComplexMatrix& z, double* v) const {
    int j = 0;
    for (const auto& [r, c] : positions_) {
      if (r == c) {
        v[j++] = z(r, r).real();
      } else {
        const Complex x = 0.5 * (z(r, c) + std::conj(z(c, r)));
        v[j++] = std::sqrt(2.0) * x.real();
        v[j++] = std::sqrt(2.0) * x.imag();
      }
    }
  }

 private:
  Eigen::Index kn_;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> positions_;
  int size_ = 0;
};

// Half the squared distance from (S' + Z, T' - Z) to the PSD pair cone; zero
// exactly on the feasible set, and its minimizer carries the Farkas pair.
class SquaredDistance final : public ceres::FirstOrderFunction {
 public:
  SquaredDistance(const ComplexMatrix& s0, const ComplexMatrix& t0,
                  const BlockDiagonalCoordinates& coords)
      : s0_(s0), t0_(t0), coords_(coords) {}

  bool Evaluate(const double* v, double* cost, double* gradient) const override {
    const ComplexMatrix z = coords_.to_matrix(v);
    const ComplexMatrix a = s0_ + z;
    const ComplexMatrix b = t0_ - z;
    const ComplexMatrix na = a - psd_part(a);
    const ComplexMatrix nb = b - psd_part(b);
    *cost = 0.5 * (na.squaredNorm() + nb.squaredNorm());
    if (gradient != nullptr) coords_.from_matrix(na - nb, gradient);
    return true;
  }

  int NumParameters() const override { return coords_.size(); }

 private:
  const ComplexMatrix& s0_;
  const ComplexMatrix& t0_;
  const BlockDiagonalCoordinates& coords_;
};

}  // namespace

void FeasibilityProblem::validate() const {
  if (level < 1 || n < 1) throw InvalidArgument("feasibility problem needs level, n >= 1");
  const int kn = level * n;
  if (s_block.dim() != kn || t_block.dim() != kn) {
    throw ShapeMismatch("feasibility blocks must both be " + std::to_string(kn) + "x" +
                        std::to_string(kn));
  }
  if (eps_shift < 0.0) throw InvalidArgument("eps_shift must be nonnegative");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Feasible:
      return "feasible";
    case Verdict::Infeasible:
      return "infeasible";
    case Verdict::Undecided:
      return "undecided";
  }
  return "undecided";
}

ComplexMatrix project_block_diagonal(const ComplexMatrix& m, int n) {
  const Eigen::Index kn = m.rows();
  ComplexMatrix out = ComplexMatrix::Zero(kn, kn);
  for (Eigen::Index r = 0; r < kn; ++r) {
    for (Eigen::Index c = r % n; c < kn; c += n) {
      out(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
    }
  }
  return out;
}

FeasibilityOutcome solve(const FeasibilityProblem& p, int max_iter, double tol) {
  SolveOptions opts;
  opts.max_iter = max_iter;
  opts.tol = tol;
  return solve(p, opts);
}

FeasibilityOutcome solve(const FeasibilityProblem& p, const SolveOptions& opts) {
  p.validate();
  const int n = p.n;
  const ComplexMatrix s0 = p.s_block.shifted(p.eps_shift).matrix();
  const ComplexMatrix t0 = p.t_block.shifted(p.eps_shift).matrix();
  const double gap_floor = 10.0 * opts.tol;

  FeasibilityOutcome out;

  // Adding the two constraints gives S' + T' >= 0, so a negative eigenvalue
  // -mu of S' + T' keeps every PSD pair at distance >= mu / sqrt(2).
  const double sum_min = min_eigenvalue(HermitianMatrix(s0 + t0));
  if (-sum_min / std::sqrt(2.0) > gap_floor) {
    out.verdict = Verdict::Infeasible;
    out.gap = -sum_min / std::sqrt(2.0);
    out.residual = *out.gap;
    return out;
  }

  // Accepts z, or z + beta I with beta balancing the two smallest eigenvalues.
  auto accept_witness = [&](const ComplexMatrix& z) -> std::optional<ComplexMatrix> {
    const HermitianMatrix left(s0 + z);
    const HermitianMatrix right(t0 - z);
    const double m1 = min_eigenvalue(left);
    const double m2 = min_eigenvalue(right);
    if (m1 >= -opts.psd.psd_slack(spectral_norm(left)) &&
        m2 >= -opts.psd.psd_slack(spectral_norm(right))) {
      return z;
    }
    if (m1 + m2 < 0.0) return std::nullopt;
    const ComplexMatrix balanced =
        z + 0.5 * (m2 - m1) * ComplexMatrix::Identity(z.rows(), z.cols());
    if (psd_within_slack(s0 + balanced, opts.psd) && psd_within_slack(t0 - balanced, opts.psd)) {
      return balanced;
    }
    return std::nullopt;
  };

  const Eigen::Index kn = s0.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(kn, kn);
  if (auto w = accept_witness(ComplexMatrix::Zero(kn, kn))) {
    out.verdict = Verdict::Feasible;
    out.witness = HermitianMatrix(*w);
    return out;
  }

  // Dykstra converges to the point of the intersection nearest the start,
  // which sits on its boundary. Aiming at the shrunk cones {P >= delta I}
  // first reaches interior witnesses far sooner when the margin allows; the
  // final stage uses delta = 0. Witnesses and certificates are always checked
  // against the original problem.
  const double scale = std::max(spectral_norm(p.s_block), spectral_norm(p.t_block)) + p.eps_shift;
  const std::vector<double> margins = {1e-1 * scale, 1e-2 * scale, 1e-3 * scale, 1e-4 * scale, 0.0};
  const int early_budget = opts.max_iter / 8;

  enum class StageEnd { Witness, Refuted, Moved, Exhausted };

  auto run_stage = [&](double delta, int budget, bool last) {
    const ComplexMatrix s_target = s0 - delta * id;
    const ComplexMatrix t_target = t0 - delta * id;
    Pair x{s0, t0};
    Pair p_corr{ComplexMatrix::Zero(kn, kn), ComplexMatrix::Zero(kn, kn)};
    Pair q_corr = p_corr;
    double prev = -1.0;
    int stalled = 0;
    for (int it = 1; it <= budget; ++it) {
      // Cone step onto {P >= delta I} x {Q >= delta I}.
      const Pair cone_in{x.s + p_corr.s, x.t + p_corr.t};
      const Pair y{psd_part(cone_in.s - delta * id) + delta * id,
                   psd_part(cone_in.t - delta * id) + delta * id};
      p_corr = Pair{cone_in.s - y.s, cone_in.t - y.t};

      // Affine step: Z = Pi_L((P - S') - (Q - T')) / 2.
      const Pair aff_in{y.s + q_corr.s, y.t + q_corr.t};
      const ComplexMatrix z = 0.5 * project_block_diagonal((aff_in.s - s0) - (aff_in.t - t0), n);
      x = Pair{s0 + z, t0 - z};
      q_corr = Pair{aff_in.s - x.s, aff_in.t - x.t};

      const double d = pair_distance(x, y);
      ++out.iterations;
      out.residual = d;

      const bool check = it % opts.check_every == 0;
      if (check || d < opts.tol) {
        if (auto w = accept_witness(z)) {
          out.verdict = Verdict::Feasible;
          out.witness = HermitianMatrix(*w);
          return StageEnd::Witness;
        }
      }
      if (check && d > opts.tol) {
        // Candidates: negative parts of the affine iterate, and the
        // accumulated cone correction, which grows along the gap direction.
        const ComplexMatrix ps = psd_part(s_target + z) - (s_target + z);
        const ComplexMatrix pt = psd_part(t_target - z) - (t_target - z);
        for (const auto& [cs, ct] : {std::pair{ps, pt}, std::pair{ComplexMatrix(-p_corr.s), ComplexMatrix(-p_corr.t)}}) {
          const std::optional<double> gap = certified_gap(cs, ct, s0, t0, n);
          if (gap && *gap > gap_floor) {
            out.verdict = Verdict::Infeasible;
            out.gap = gap;
            return StageEnd::Refuted;
          }
          if (!last) {
            const std::optional<double> shrunk = certified_gap(cs, ct, s_target, t_target, n);
            if (shrunk && *shrunk > gap_floor) return StageEnd::Moved;
          }
        }
      }

      if (prev >= 0.0 && std::abs(d - prev) <= 1e-3 * opts.tol * (1.0 + d)) {
        if (++stalled >= opts.stall_window) {
          if (last && d > gap_floor) {
            // The distance estimate has stabilized above the floor.
            out.verdict = Verdict::Infeasible;
            out.gap = d;
            return StageEnd::Refuted;
          }
          return StageEnd::Moved;
        }
      } else {
        stalled = 0;
      }
      prev = d;
    }
    return StageEnd::Exhausted;
  };

  for (size_t i = 0; i < margins.size(); ++i) {
    const bool last = i + 1 == margins.size();
    const int budget = last ? opts.max_iter - out.iterations : early_budget;
    const StageEnd end = run_stage(margins[i], budget, last);
    if (end == StageEnd::Witness || end == StageEnd::Refuted) return out;
  }
  if (opts.refine_iter <= 0) return out;

  // Nearly-touching sets slow Dykstra to a crawl; quasi-Newton descent on the
  // same squared distance, restricted to Z in M_k(D_n), settles them.
  const BlockDiagonalCoordinates coords(kn, n);
  std::vector<double> v(static_cast<size_t>(coords.size()), 0.0);
  ceres::GradientProblem problem(new SquaredDistance(s0, t0, coords));
  ceres::GradientProblemSolver::Options options;
  options.line_search_direction_type = ceres::LBFGS;
  options.max_num_iterations = opts.refine_iter;
  options.function_tolerance = 1e-16;
  options.gradient_tolerance = 1e-15;
  options.parameter_tolerance = 1e-16;
  options.logging_type = ceres::SILENT;
  ceres::GradientProblemSolver::Summary summary;
  ceres::Solve(options, problem, v.data(), &summary);
  out.iterations += static_cast<int>(summary.iterations.size());

  const ComplexMatrix z = coords.to_matrix(v.data());
  out.residual = std::sqrt(2.0 * summary.final_cost);
  if (auto w = accept_witness(z)) {
    out.verdict = Verdict::Feasible;
    out.witness = HermitianMatrix(*w);
    return out;
  }
  const std::optional<double> gap =
      certified_gap(psd_part(s0 + z) - (s0 + z), psd_part(t0 - z) - (t0 - z), s0, t0, n);
  if (gap && *gap > gap_floor) {
    out.verdict = Verdict::Infeasible;
    out.gap = gap;
    return out;
  }
  out.verdict = Verdict::Undecided;
  return out;
}

FeasibilityOutcome brute_force_2x2(const HermitianMatrix& s, const HermitianMatrix& t, int grid,
                                   int max_cells) {
  if (s.dim() != 2 || t.dim() != 2) throw ShapeMismatch("brute_force_2x2 needs 2x2 blocks");
  if (grid < 1) throw InvalidArgument("grid must be positive");
  if (grid % 2 == 0) ++grid;

  const double s11 = s(0, 0).real(), s22 = s(1, 1).real(), t11 = t(0, 0).real(),
               t22 = t(1, 1).real();
  const Complex s12 = s(0, 1), t12 = t(0, 1);
  const double radius = std::max(spectral_norm(s), spectral_norm(t)) + 1.0;

  auto f = [&](double d1, double d2) {
    return std::min(lambda_min_2x2(s11 + d1, s22 + d2, s12), lambda_min_2x2(t11 - d1, t22 - d2, t12));
  };
  auto exact = [&](double d1, double d2) {
    return psd_2x2(s11 + d1, s22 + d2, s12) && psd_2x2(t11 - d1, t22 - d2, t12);
  };

  struct Cell {
    double c1, c2, half, upper;
    bool operator<(const Cell& o) const { return upper < o.upper; }
  };
  std::priority_queue<Cell> open;
  FeasibilityOutcome out;
  double best_excluded = -radius * 10.0;  // tracks the largest pruned upper bound

  auto visit = [&](double c1, double c2, double half) -> bool {
    ++out.iterations;
    if (exact(c1, c2)) {
      out.verdict = Verdict::Feasible;
      out.witness = HermitianMatrix::diagonal({c1, c2});
      return true;
    }
    const double ub = f(c1, c2) + half;
    if (ub < 0.0) {
      best_excluded = std::max(best_excluded, ub);
    } else {
      open.push(Cell{c1, c2, half, ub});
    }
    return false;
  };

  const double width = 2.0 * radius / grid;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      if (visit(-radius + (i + 0.5) * width, -radius + (j + 0.5) * width, 0.5 * width)) return out;
    }
  }
  while (!open.empty()) {
    if (out.iterations >= max_cells) {
      out.verdict = Verdict::Undecided;
      return out;
    }
    const Cell c = open.top();
    open.pop();
    const double h = 0.5 * c.half;
    if (h < 1e-13 * radius) {
      out.verdict = Verdict::Undecided;
      return out;
    }
    for (double dx : {-h, h}) {
      for (double dy : {-h, h}) {
        if (visit(c.c1 + dx, c.c2 + dy, h)) return out;
      }
    }
  }
  out.verdict = Verdict::Infeasible;
  out.gap = -best_excluded;
  return out;
}

}  // namespace opsys
