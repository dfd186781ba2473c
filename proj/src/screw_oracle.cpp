#include "pocmob/screw_oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace pocmob {

const JointGeometry& GeometricInstance::at(AxisRef a) const {
  for (const auto& j : joints)
    if (j.axis == a) return j;
  throw UnknownAxis("geometry has no joint leg " + std::to_string(a.leg) + " joint " + std::to_string(a.joint));
}

namespace {

// Portable uniform doubles: the standard distributions are implementation-defined.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Eigen::Vector3d unit_vector() {
    for (;;) {
      Eigen::Vector3d v(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
      const double n = v.norm();
      if (n > 0.1 && n <= 1.0) return v / n;
    }
  }
  Eigen::Vector3d point() { return {uniform(), uniform(), uniform()}; }

 private:
  std::mt19937_64 rng_;
};

struct Groups {
  explicit Groups(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

std::string label(const RelationGraph& g, AxisRef a) { return axis_label(a, g.kind(a)); }

}  // namespace

GeometricInstance instantiate_geometry(const RelationGraph& g, std::uint64_t seed) {
  Sampler rng(seed);
  const auto& nodes = g.nodes();
  const std::size_t n = nodes.size();

  // Directions: one per parallel class, orthogonalized against the classes it
  // must be perpendicular to.
  std::vector<Eigen::Vector3d> class_dir(g.class_count());
  for (int c = 0; c < g.class_count(); ++c) {
    Eigen::Matrix3Xd against(3, 0);
    for (int d = 0; d < c; ++d)
      if (g.classes_perpendicular(c, d)) {
        against.conservativeResize(3, against.cols() + 1);
        against.col(against.cols() - 1) = class_dir[d];
      }
    const Eigen::MatrixXd q = orthonormal_basis(against);
    if (q.cols() >= 3)
      throw Unsatisfiable("no direction is perpendicular to all required classes of " +
                          label(g, g.representative(c)));
    for (int attempt = 0;; ++attempt) {
      Eigen::Vector3d u = rng.unit_vector();
      u -= q * (q.transpose() * u);
      if (u.norm() > 1e-3) {
        class_dir[c] = u.normalized();
        break;
      }
      if (attempt > 100) throw Unsatisfiable("could not sample a direction for " + label(g, g.representative(c)));
    }
  }

  GeometricInstance inst;
  inst.seed = seed;
  for (const auto& a : nodes) {
    JointGeometry j;
    j.axis = a;
    j.kind = g.kind(a);
    j.direction = class_dir[g.parallel_class(a)];
    j.point = rng.point();
    inst.joints.push_back(j);
  }

  // Points: coaxial axes, and parallel axes through a common point, share a line.
  Groups shared(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      if (g.relation(nodes[i], nodes[k]) == RelationCode::Coaxial ||
          (g.seeded(nodes[i], nodes[k]) == RelationCode::CommonPoint &&
           g.parallel_class(nodes[i]) == g.parallel_class(nodes[k])))
        shared.unite(i, k);
  for (std::size_t i = 0; i < n; ++i) inst.joints[i].point = inst.joints[shared.find(i)].point;

  // Coplanar and common-point pairs of non-parallel axes both ask for a common
  // plane. Move each point group by the smallest correction that gives one.
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < n; ++i)
    if (shared.find(i) == i) roots.push_back(i);
  auto slot = [&](std::size_t i) {
    return 3 * static_cast<Eigen::Index>(std::find(roots.begin(), roots.end(), shared.find(i)) - roots.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i + 1; k < n; ++k)
      if (const auto seed = g.seeded(nodes[i], nodes[k]);
          (seed == RelationCode::Coplanar || seed == RelationCode::CommonPoint) && shared.find(i) != shared.find(k) &&
          inst.joints[i].direction.cross(inst.joints[k].direction).norm() > 1e-9)
        pairs.push_back({i, k});
  if (!pairs.empty()) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(pairs.size()), 3 * static_cast<Eigen::Index>(roots.size()));
    Eigen::VectorXd p(a.cols());
    for (std::size_t r = 0; r < roots.size(); ++r) p.segment<3>(3 * static_cast<Eigen::Index>(r)) = inst.joints[roots[r]].point;
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      const auto [i, k] = pairs[e];
      const Eigen::Vector3d c = inst.joints[i].direction.cross(inst.joints[k].direction).normalized();
      a.block<1, 3>(static_cast<Eigen::Index>(e), slot(k)) += c.transpose();
      a.block<1, 3>(static_cast<Eigen::Index>(e), slot(i)) -= c.transpose();
    }
    const Eigen::VectorXd shift = a.completeOrthogonalDecomposition().solve(-(a * p));
    p += shift;
    for (std::size_t x = 0; x < n; ++x) inst.joints[x].point = p.segment<3>(slot(x));
  }
  return inst;
}

GeometricInstance instantiate_geometry(const MechanismTopology&, const RelationGraph& g, std::uint64_t seed) {
  return instantiate_geometry(g, seed);
}

double constraint_residual(const GeometricInstance& inst, const RelationGraph& g) {
  double worst = 0;
  const auto& nodes = g.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t k = i + 1; k < nodes.size(); ++k) {
      const auto& a = inst.at(nodes[i]);
      const auto& b = inst.at(nodes[k]);
      const Eigen::Vector3d cross = a.direction.cross(b.direction);
      const Eigen::Vector3d gap = b.point - a.point;
      double r = 0;
      switch (g.relation(nodes[i], nodes[k])) {
        case RelationCode::Coaxial: r = std::max(cross.norm(), gap.cross(a.direction).norm()); break;
        case RelationCode::Parallel: r = cross.norm(); break;
        case RelationCode::Perpendicular: r = std::abs(a.direction.dot(b.direction)); break;
        default: break;
      }
      switch (g.seeded(nodes[i], nodes[k])) {
        case RelationCode::CommonPoint:
          r = std::max(r, cross.norm() < 1e-12 ? gap.cross(a.direction).norm() : std::abs(gap.dot(cross)) / cross.norm());
          break;
        case RelationCode::Coplanar: r = std::max(r, std::abs(gap.dot(cross))); break;
        default: break;
      }
      worst = std::max(worst, r);
    }
  return worst;
}

Twist joint_twist(const JointGeometry& j) {
  Twist t;
  if (j.kind == JointKind::Revolute) t << j.direction, j.point.cross(j.direction);
  else t << Eigen::Vector3d::Zero(), j.direction;
  return t;
}

TwistBasis make_twist_basis(const TwistMatrix& screws) {
  TwistBasis b;
  b.screws = screws;
  if (screws.cols() == 0) {
    b.singular_values = Eigen::VectorXd();
    return b;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(screws);
  b.singular_values = svd.singularValues();
  b.rank = numeric_rank(screws);
  return b;
}

TwistBasis leg_twist_space(const LegTopology& leg, const GeometricInstance& inst) {
  TwistMatrix s(6, leg.size());
  for (std::size_t j = 0; j < leg.size(); ++j) s.col(j) = joint_twist(inst.at({leg.label, static_cast<int>(j + 1)}));
  return make_twist_basis(s);
}

NumericMobility numeric_loop_and_platform(const MechanismTopology& mech, const GeometricInstance& inst) {
  NumericMobility out;
  if (mech.legs.empty()) return out;
  bool near = false;
  Eigen::MatrixXd sub = orthonormal_basis(leg_twist_space(mech.legs.front(), inst).screws, kRankTolerance, &near);
  for (std::size_t j = 1; j < mech.legs.size(); ++j) {
    const Eigen::MatrixXd leg = orthonormal_basis(leg_twist_space(mech.legs[j], inst).screws, kRankTolerance, &near);
    Eigen::MatrixXd both(6, sub.cols() + leg.cols());
    both << sub, leg;
    out.loop_ranks.push_back(numeric_rank(both, kRankTolerance, &near));
    sub = subspace_meet(sub, leg, kRankTolerance, &near);
  }
  out.platform = make_twist_basis(sub);
  // `sub` is orthonormal, so the angular block is measured against unit scale.
  out.xi_r = sub.cols() ? numeric_rank(sub.topRows(3), kRankTolerance, &near, 1.0) : 0;
  out.xi_t = out.platform.rank - out.xi_r;
  out.near_singular = near;
  return out;
}

namespace {

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return "(" + s + ")";
}

std::string check(const MechanismTopology& mech, const MobilityReport& rep, const NumericMobility& num) {
  std::vector<int> symbolic;
  for (const auto& l : rep.loop_ranks) symbolic.push_back(l.xi());
  std::ostringstream os;
  if (num.loop_ranks != symbolic) os << "loop ranks " << join(num.loop_ranks) << " vs " << join(symbolic) << "; ";
  const int sym_dim = rep.poc.xi_t() + rep.poc.xi_r();
  if (num.platform_dim() != sym_dim) os << "platform dim " << num.platform_dim() << " vs " << sym_dim << "; ";
  if (num.xi_t != rep.poc.xi_t() || num.xi_r != rep.poc.xi_r())
    os << "split " << num.xi_t << "T" << num.xi_r << "R vs " << rep.classification << "; ";
  const int numeric_dof = mech.total_joint_dof() - std::accumulate(num.loop_ranks.begin(), num.loop_ranks.end(), 0);
  if (numeric_dof != rep.dof) os << "dof " << numeric_dof << " vs " << rep.dof << "; ";
  auto s = os.str();
  if (!s.empty()) s.resize(s.size() - 2);
  return s;
}

}  // namespace

OracleComparison compare_with_oracle(const MechanismTopology& mech, const MobilityReport& report, int seeds,
                                     std::uint64_t base_seed) {
  const RelationGraph g = build_relation_graph(mech);
  OracleComparison cmp;
  for (int s = 0; s < seeds; ++s) {
    OracleSample sample;
    sample.seed = base_seed + static_cast<std::uint64_t>(s);
    std::uint64_t seed = sample.seed;
    for (int attempt = 0; attempt < 8; ++attempt) {
      sample.numeric = numeric_loop_and_platform(mech, instantiate_geometry(g, seed));
      if (!sample.numeric.near_singular) break;
      seed = sample.seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt + 1));
    }
    sample.mismatch = check(mech, report, sample.numeric);
    sample.agrees = sample.mismatch.empty();
    if (sample.agrees) ++cmp.agreeing;
    if (!cmp.samples.empty()) {
      const auto& first = cmp.samples.front().numeric;
      if (first.loop_ranks != sample.numeric.loop_ranks || first.platform_dim() != sample.numeric.platform_dim() ||
          first.xi_r != sample.numeric.xi_r)
        cmp.seed_stable = false;
    }
    cmp.samples.push_back(std::move(sample));
  }
  return cmp;
}

}  // namespace pocmob
