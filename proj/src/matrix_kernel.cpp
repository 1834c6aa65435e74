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

#include "opsys/matrix_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "opsys/errors.hpp"

namespace opsys {

namespace {

constexpr int kMaxSweeps = 100;

// Runs cyclic Jacobi in place on `a`. When `v` is non-null the rotations are
// accumulated into it. On return `a` is diagonal up to round-off.
void jacobi_diagonalize(ComplexMatrix& a, ComplexMatrix* v) {
  const Eigen::Index n = a.rows();
  const double scale = a.norm();
  if (n <= 1 || scale == 0.0) {
    return;
  }
  const double target = 1e-15 * scale;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        off += std::norm(a(p, q));
      }
    }
    if (std::sqrt(2.0 * off) <= target) {
      return;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g <= 1e-300 || g <= 1e-18 * scale) {
          continue;
        }
        // Phase the (p,q) entry to a real positive number, then apply a
        // real symmetric Jacobi rotation. Combined rotation J has
        //   J_pp = c, J_pq = s, J_qp = -s conj(e), J_qq = c conj(e).
        const Complex e = apq / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * std::conj(e);
        const Complex jqq = c * std::conj(e);

        // A <- A J (columns p, q)
        for (Eigen::Index r = 0; r < n; ++r) {
          const Complex arp = a(r, p);
          const Complex arq = a(r, q);
          a(r, p) = arp * jpp + arq * jqp;
          a(r, q) = arp * jpq + arq * jqq;
        }
        // A <- J* A (rows p, q)
        for (Eigen::Index col = 0; col < n; ++col) {
          const Complex apc = a(p, col);
          const Complex aqc = a(q, col);
          a(p, col) = std::conj(jpp) * apc + std::conj(jqp) * aqc;
          a(q, col) = std::conj(jpq) * apc + std::conj(jqq) * aqc;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (v != nullptr) {
          for (Eigen::Index r = 0; r < n; ++r) {
            const Complex vrp = (*v)(r, p);
            const Complex vrq = (*v)(r, q);
            (*v)(r, p) = vrp * jpp + vrq * jqp;
            (*v)(r, q) = vrp * jpq + vrq * jqq;
          }
        }
      }
    }
  }
  throw NumericalFailure("Jacobi eigensolver did not converge in " +
                         std::to_string(kMaxSweeps) + " sweeps");
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw ShapeMismatch("Hermitian matrix must be square, got " + std::to_string(m.rows()) +
                        "x" + std::to_string(m.cols()));
  }
  const ComplexMatrix adj = m.adjoint();
  const double asym = (m - adj).norm();
  if (!(asym <= 1e-6 * (1.0 + m.norm()))) {
    throw InvalidArgument("matrix is not Hermitian: ||M - M*||_F = " + std::to_string(asym));
  }
  m_ = (m + adj) * 0.5;
}

HermitianMatrix HermitianMatrix::identity(int n) {
  return HermitianMatrix(ComplexMatrix::Identity(n, n), Unchecked{});
}

HermitianMatrix HermitianMatrix::zero(int n) {
  return HermitianMatrix(ComplexMatrix::Zero(n, n), Unchecked{});
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
  const int n = static_cast<int>(d.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = d[static_cast<size_t>(i)];
  }
  return HermitianMatrix(std::move(m), Unchecked{});
}

HermitianMatrix HermitianMatrix::from_real(int n, std::initializer_list<double> entries) {
  if (static_cast<int>(entries.size()) != n * n) {
    throw ShapeMismatch("from_real expects n*n entries");
  }
  ComplexMatrix m(n, n);
  auto it = entries.begin();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m(i, j) = *it++;
    }
  }
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  if (dim() != o.dim()) throw ShapeMismatch("Hermitian sum of differing dimensions");
  return HermitianMatrix(m_ + o.m_, Unchecked{});
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  if (dim() != o.dim()) throw ShapeMismatch("Hermitian difference of differing dimensions");
  return HermitianMatrix(m_ - o.m_, Unchecked{});
}

HermitianMatrix HermitianMatrix::operator-() const { return HermitianMatrix(-m_, Unchecked{}); }

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(m_ * s, Unchecked{});
}

HermitianMatrix HermitianMatrix::shifted(double s) const {
  ComplexMatrix m = m_;
  m.diagonal().array() += s;
  return HermitianMatrix(std::move(m), Unchecked{});
}

double Tolerance::psd_slack(double spectral_norm) const {
  return psd_eps ? *psd_eps : 1e-9 * (1.0 + spectral_norm);
}

EigenDecomposition eig_hermitian(const HermitianMatrix& h) {
  const int n = h.dim();
  ComplexMatrix a = h.matrix();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  jacobi_diagonalize(a, &v);

  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition out{RealVector(n), ComplexMatrix(n, n)};
  for (int k = 0; k < n; ++k) {
    const int src = order[static_cast<size_t>(k)];
    out.eigenvalues(k) = a(src, src).real();
    out.eigenvectors.col(k) = v.col(src);
  }
  return out;
}

RealVector eigenvalues(const HermitianMatrix& h) {
  ComplexMatrix a = h.matrix();
  jacobi_diagonalize(a, nullptr);
  RealVector ev = a.diagonal().real();
  std::sort(ev.data(), ev.data() + ev.size());
  return ev;
}

double min_eigenvalue(const HermitianMatrix& h) {
  if (h.dim() == 0) return 0.0;
  return eigenvalues(h)(0);
}

double spectral_norm(const HermitianMatrix& h) {
  if (h.dim() == 0) return 0.0;
  const RealVector ev = eigenvalues(h);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

bool is_psd(const HermitianMatrix& h, const Tolerance& tol) {
  if (h.dim() == 0) return true;
  const RealVector ev = eigenvalues(h);
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return ev(0) >= -tol.psd_slack(norm);
}

HermitianMatrix psd_project(const HermitianMatrix& h) {
  const EigenDecomposition ed = eig_hermitian(h);
  if (h.dim() == 0 || ed.eigenvalues(0) >= 0.0) {
    return h;
  }
  const RealVector clipped = ed.eigenvalues.cwiseMax(0.0);
  const ComplexMatrix m =
      ed.eigenvectors * clipped.cast<Complex>().asDiagonal() * ed.eigenvectors.adjoint();
  return HermitianMatrix(m);
}

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch("frobenius_inner: shapes differ");
  }
  return (a.conjugate().array() * b.array()).sum();
}

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch("real_inner: shapes differ");
  }
  return (a.conjugate().array() * b.array()).sum().real();
}

ComplexMatrix matrix_unit(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw InvalidArgument("matrix unit index out of range");
  }
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

ComplexMatrix direct_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace opsys
