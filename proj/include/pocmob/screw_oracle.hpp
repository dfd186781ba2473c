#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pocmob/mobility.hpp"

namespace pocmob {

inline constexpr double kRankTolerance = 1e-8;

using Twist = Eigen::Matrix<double, 6, 1>;
using TwistMatrix = Eigen::Matrix<double, 6, Eigen::Dynamic>;

/// Numeric rank with a threshold relative to the largest singular value, or to
/// `scale` when positive (for sub-blocks of a larger matrix).
/// `near_singular` is raised when some singular value lies within a factor of
/// ten of the threshold.
template <typename Derived>
int numeric_rank(const Eigen::MatrixBase<Derived>& m, double rel_tol = kRankTolerance, bool* near_singular = nullptr,
                 double scale = 0.0) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.template cast<double>());
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double thr = rel_tol * (scale > 0 ? scale : s(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) ++rank;
    if (near_singular && s(i) > thr / 10 && s(i) < thr * 10) *near_singular = true;
  }
  return rank;
}

/// Orthonormal basis (as columns) of the column space of `m`.
template <typename Derived>
Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixBase<Derived>& m, double rel_tol = kRankTolerance,
                                  bool* near_singular = nullptr) {
  const Eigen::Index n = m.rows();
  if (m.cols() == 0) return Eigen::MatrixXd(n, 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.template cast<double>(), Eigen::ComputeThinU);
  const int r = numeric_rank(m, rel_tol, near_singular);
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of the orthogonal complement of span(`basis`).
template <typename Derived>
Eigen::MatrixXd orthogonal_complement(const Eigen::MatrixBase<Derived>& basis, double rel_tol = kRankTolerance) {
  const Eigen::Index n = basis.rows();
  if (basis.cols() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis.template cast<double>(), Eigen::ComputeFullU);
  const int r = numeric_rank(basis, rel_tol);
  return svd.matrixU().rightCols(n - r);
}

/// Basis of span(a) ∩ span(b): the null space of the stacked complements.
template <typename DA, typename DB>
Eigen::MatrixXd subspace_meet(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                              double rel_tol = kRankTolerance, bool* near_singular = nullptr) {
  const Eigen::Index n = a.rows();
  const Eigen::MatrixXd ca = orthogonal_complement(orthonormal_basis(a, rel_tol, near_singular), rel_tol);
  const Eigen::MatrixXd cb = orthogonal_complement(orthonormal_basis(b, rel_tol, near_singular), rel_tol);
  Eigen::MatrixXd stacked(ca.cols() + cb.cols(), n);
  stacked << ca.transpose(), cb.transpose();
  if (stacked.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const int r = numeric_rank(stacked, rel_tol, near_singular);
  return svd.matrixV().rightCols(n - r);
}

class Unsatisfiable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JointGeometry {
  AxisRef axis;
  JointKind kind = JointKind::Revolute;
  Eigen::Vector3d direction = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
};

struct GeometricInstance {
  std::uint64_t seed = 0;
  std::vector<JointGeometry> joints;

  const JointGeometry& at(AxisRef a) const;
};

/// Random geometry honouring every relation in `g`; unconstrained quantities
/// are drawn independently. Deterministic in `seed`.
GeometricInstance instantiate_geometry(const RelationGraph& g, std::uint64_t seed);
GeometricInstance instantiate_geometry(const MechanismTopology& mech, const RelationGraph& g, std::uint64_t seed);

/// Largest violation over all derived relations of `g` (parallel, coaxial,
/// perpendicular) and all seeded positional ones (common point, coplanar).
double constraint_residual(const GeometricInstance& inst, const RelationGraph& g);

struct TwistBasis {
  TwistMatrix screws;            // columns (ω; v)
  Eigen::VectorXd singular_values;
  int rank = 0;
};

Twist joint_twist(const JointGeometry& j);
TwistBasis make_twist_basis(const TwistMatrix& screws);
TwistBasis leg_twist_space(const LegTopology& leg, const GeometricInstance& inst);

struct NumericMobility {
  std::vector<int> loop_ranks;
  TwistBasis platform;
  int xi_t = 0;
  int xi_r = 0;
  bool near_singular = false;

  int platform_dim() const { return platform.rank; }
};

/// Numeric counterpart of the symbolic fold: loop j is the rank of the union of
/// the sub-PM twist space and leg j+1's; the sub-PM becomes their intersection.
NumericMobility numeric_loop_and_platform(const MechanismTopology& mech, const GeometricInstance& inst);

struct OracleSample {
  std::uint64_t seed = 0;
  NumericMobility numeric;
  bool agrees = false;
  std::string mismatch;
};

struct OracleComparison {
  std::vector<OracleSample> samples;
  int agreeing = 0;
  bool seed_stable = true;

  int total() const { return static_cast<int>(samples.size()); }
  bool all_agree() const { return agreeing == total() && seed_stable; }
};

inline constexpr std::uint64_t kDefaultOracleSeed = 20240601;

/// Runs the oracle for `seeds` consecutive seeds from `base_seed` and compares
/// loop ranks, platform dimension, the (ξt, ξr) split and Σf − Σξ with `report`.
/// Near-singular samples are resampled with a derived seed.
OracleComparison compare_with_oracle(const MechanismTopology& mech, const MobilityReport& report, int seeds,
                                     std::uint64_t base_seed = kDefaultOracleSeed);

}  // namespace pocmob
