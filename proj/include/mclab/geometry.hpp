// Copyright 2026 The mclab Authors. All Rights Reserved.
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

// Tangent space of the rank-r manifold at M = U S V^T.
//
// T is spanned by u_k y^T and x v_k^T. With P_U = U U^T, P_V = V V^T:
//
//   P_T(X)    = P_U X + X P_V - P_U X P_V
//   P_Tperp(X) = (I - P_U) X (I - P_V)
//   Q_T       = P_T - rho' I,   rho = r/n,  rho' = 2 rho - rho^2
//
// Q_U = P_U - rho I and Q_V = P_V - rho I are the centered projections;
// their entries U_{a,a'} and V_{b,b'} define the coefficients of Q_T in the
// coordinate basis.
//
// The dense P_U, P_V, E are materialized once (O(n^2 r)); the *_factored
// routines use only U and V and cost O(n^2 r) per application.

#ifndef MCLAB_GEOMETRY_HPP_
#define MCLAB_GEOMETRY_HPP_

#include "mclab/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mclab {

class TangentSpace {
 public:
  TangentSpace(Mat u, Mat v) : TangentSpace(std::move(u), std::move(v), true) {}

  // Skips the orthonormality check. Only for fault-injection diagnostics.
  static TangentSpace unchecked(Mat u, Mat v) { return TangentSpace(std::move(u), std::move(v), false); }

  Index n() const { return U_.rows(); }
  Index r() const { return U_.cols(); }
  const Mat& U() const { return U_; }
  const Mat& V() const { return V_; }
  const Mat& E() const { return E_; }
  const Mat& PU() const { return PU_; }
  const Mat& PV() const { return PV_; }
  const Mat& QU() const { return QU_; }
  const Mat& QV() const { return QV_; }
  double rho() const { return rho_; }
  double rho_prime() const { return rho_prime_; }
  // dim T = 2nr - r^2
  Index dim() const { return 2 * n() * r() - r() * r(); }

 private:
  TangentSpace(Mat u, Mat v, bool check) : U_(std::move(u)), V_(std::move(v)) {
    require(U_.rows() >= 1 && U_.cols() >= 1, "tangent_space: empty U");
    require(U_.rows() == V_.rows() && U_.cols() == V_.cols(),
            "tangent_space: U and V must both be n x r");
    require(U_.cols() <= U_.rows(), "tangent_space: r exceeds n");
    if (check) {
      require(orthonormality_defect(U_) <= 1e-8, "tangent_space: U is not column-orthonormal");
      require(orthonormality_defect(V_) <= 1e-8, "tangent_space: V is not column-orthonormal");
    }
    const Index nn = U_.rows();
    E_ = U_ * V_.transpose();
    PU_ = U_ * U_.transpose();
    PV_ = V_ * V_.transpose();
    rho_ = double(U_.cols()) / double(nn);
    rho_prime_ = 2.0 * rho_ - rho_ * rho_;
    QU_ = PU_ - rho_ * Mat::Identity(nn, nn);
    QV_ = PV_ - rho_ * Mat::Identity(nn, nn);
  }

  Mat U_, V_, E_, PU_, PV_, QU_, QV_;
  double rho_ = 0, rho_prime_ = 0;
};

inline TangentSpace tangent_space(const Mat& u, const Mat& v) { return TangentSpace(u, v); }

inline void check_square(const TangentSpace& t, const Mat& x, const char* who) {
  if (x.rows() != t.n() || x.cols() != t.n())
    throw InvalidParameter(std::string(who) + ": dimension mismatch");
}

inline Mat apply_PT(const TangentSpace& t, const Mat& x) {
  check_square(t, x, "apply_PT");
  const Mat pux = t.PU() * x;
  return pux + x * t.PV() - pux * t.PV();
}

inline Mat apply_PTperp(const TangentSpace& t, const Mat& x) {
  check_square(t, x, "apply_PTperp");
  const Index n = t.n();
  const Mat cu = Mat::Identity(n, n) - t.PU();
  const Mat cv = Mat::Identity(n, n) - t.PV();
  return cu * x * cv;
}

// (1 - rho) Q_U X + (1 - rho) X Q_V - Q_U X Q_V
inline Mat apply_QT(const TangentSpace& t, const Mat& x) {
  check_square(t, x, "apply_QT");
  const Mat qux = t.QU() * x;
  return (1.0 - t.rho()) * qux + (1.0 - t.rho()) * (x * t.QV()) - qux * t.QV();
}

// Factor-form applications; no n x n projection is touched.
inline Mat apply_PT_factored(const TangentSpace& t, const Mat& x) {
  check_square(t, x, "apply_PT");
  const Mat utx = t.U().transpose() * x;  // r x n
  const Mat xv = x * t.V();               // n x r
  return t.U() * utx + (xv - t.U() * (utx * t.V())) * t.V().transpose();
}

inline Mat apply_PTperp_factored(const TangentSpace& t, const Mat& x) {
  return x - apply_PT_factored(t, x);
}

inline Mat apply_QT_factored(const TangentSpace& t, const Mat& x) {
  return apply_PT_factored(t, x) - t.rho_prime() * x;
}

// c_{ab,a'b'} = <e_a e_b^T, Q_T(e_a' e_b'^T)>
inline double qt_coefficient(const TangentSpace& t, Index a, Index b, Index a2, Index b2) {
  const Index n = t.n();
  require(a >= 0 && a < n && b >= 0 && b < n && a2 >= 0 && a2 < n && b2 >= 0 && b2 < n,
          "qt_coefficient: index out of range");
  const double uu = t.QU()(a, a2);
  const double vv = t.QV()(b, b2);
  double c = -uu * vv;
  if (b == b2) c += (1.0 - t.rho()) * uu;
  if (a == a2) c += (1.0 - t.rho()) * vv;
  return c;
}

// ---------------------------------------------------------------------------
// Incoherence
// ---------------------------------------------------------------------------

struct IndexPair {
  Index first = 0;
  Index second = 0;
};

struct IncoherenceReport {
  double mu0 = 0;    // (n/r) max_a ||P_U e_a||^2 (and P_V)
  double mu1 = 0;    // max(mu1_u, mu1_v)
  double mu1_u = 0;  // (n/sqrt r) max |<e_a, P_U e_a'> - (r/n) 1_{a=a'}|
  double mu1_v = 0;
  double mu2 = 0;    // (n/sqrt r) max |E_ab|
  double muB = 0;    // n max(|U_ik|^2, |V_ik|^2)
  double mu = 0;     // max(mu1, mu2)
  IndexPair mu0_at;  // (side, row) with side 0 = U, 1 = V
  IndexPair mu1_at;  // (a, a') on the side attaining mu1
  IndexPair mu2_at;  // (a, b)
  IndexPair muB_at;  // (row, column) of U or V entry
};

inline IncoherenceReport incoherence(const TangentSpace& t) {
  const double n = double(t.n());
  const double r = double(t.r());
  IncoherenceReport rep;

  Index au = 0, av = 0;
  const double lu = t.PU().diagonal().maxCoeff(&au);
  const double lv = t.PV().diagonal().maxCoeff(&av);
  rep.mu0 = (n / r) * std::max(lu, lv);
  rep.mu0_at = lu >= lv ? IndexPair{0, au} : IndexPair{1, av};

  const double scale1 = n / std::sqrt(r);
  Index iu = 0, ju = 0, iv = 0, jv = 0;
  // U_{a,a'} = <e_a, P_U e_a'> - rho 1_{a=a'} is exactly Q_U.
  rep.mu1_u = scale1 * t.QU().cwiseAbs().maxCoeff(&iu, &ju);
  rep.mu1_v = scale1 * t.QV().cwiseAbs().maxCoeff(&iv, &jv);
  rep.mu1 = std::max(rep.mu1_u, rep.mu1_v);
  rep.mu1_at = rep.mu1_u >= rep.mu1_v ? IndexPair{iu, ju} : IndexPair{iv, jv};

  Index ea = 0, eb = 0;
  rep.mu2 = scale1 * t.E().cwiseAbs().maxCoeff(&ea, &eb);
  rep.mu2_at = {ea, eb};

  Index bu = 0, bu2 = 0, bv = 0, bv2 = 0;
  const double mxu = t.U().cwiseAbs().maxCoeff(&bu, &bu2);
  const double mxv = t.V().cwiseAbs().maxCoeff(&bv, &bv2);
  rep.muB = n * std::max(mxu * mxu, mxv * mxv);
  rep.muB_at = mxu >= mxv ? IndexPair{bu, bu2} : IndexPair{bv, bv2};

  rep.mu = std::max(rep.mu1, rep.mu2);
  return rep;
}

// ---------------------------------------------------------------------------
// Cancellation identities
//
//   sum_a' U_{a,a'} U_{a',a''} = (1 - 2 rho) U_{a,a''} + rho (1 - rho) 1_{a=a''}
//   sum_a' U_{a,a'} E_{a',b}   = (1 - rho) E_{a,b} = sum_b' E_{a,b'} V_{b',b}
//   sum_b  E_{a,b} E_{a',b}    = U_{a,a'} + rho 1_{a=a'}
//
// plus the V-side mirror images. All are entrywise and report the max
// absolute violation per family.
// ---------------------------------------------------------------------------

struct CancellationReport {
  double projection = 0;  // Q^2 identity, U and V sides
  double mixed = 0;       // Q_U E and E Q_V
  double gram = 0;        // E E^T and E^T E
  double max_violation = 0;
  bool ok = false;
};

inline CancellationReport cancellation_identities_check(const TangentSpace& t, double tol) {
  const Index n = t.n();
  const double rho = t.rho();
  const Mat id = Mat::Identity(n, n);
  CancellationReport rep;
  const auto maxabs = [](const Mat& m) { return m.cwiseAbs().maxCoeff(); };
  rep.projection = std::max(
      maxabs(t.QU() * t.QU() - ((1 - 2 * rho) * t.QU() + rho * (1 - rho) * id)),
      maxabs(t.QV() * t.QV() - ((1 - 2 * rho) * t.QV() + rho * (1 - rho) * id)));
  rep.mixed = std::max(maxabs(t.QU() * t.E() - (1 - rho) * t.E()),
                       maxabs(t.E() * t.QV() - (1 - rho) * t.E()));
  rep.gram = std::max(maxabs(t.E() * t.E().transpose() - (t.QU() + rho * id)),
                      maxabs(t.E().transpose() * t.E() - (t.QV() + rho * id)));
  rep.max_violation = std::max({rep.projection, rep.mixed, rep.gram});
  rep.ok = rep.max_violation <= tol;
  return rep;
}

}  // namespace mclab

#endif  // MCLAB_GEOMETRY_HPP_
