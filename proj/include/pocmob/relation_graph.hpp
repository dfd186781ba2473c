#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pocmob/topology.hpp"

namespace pocmob {

/// Leg index used to address the fixed platform's virtual leg: AxisRef{0, i}
/// names the first joint of leg i.
inline constexpr int kFixedPlatformLeg = 0;
/// Leg index of the moving platform's virtual leg: AxisRef{7, i} names the
/// last joint of leg i.
inline constexpr int kMovingPlatformLeg = 7;

/// A joint axis. `joint` is 1-based within its leg.
struct AxisRef {
  int leg = 1;
  int joint = 1;

  auto operator<=>(const AxisRef&) const = default;
};

/// "R41", "P43": joint letter, leg, joint.
std::string axis_label(AxisRef a, JointKind kind);
std::string axis_label(AxisRef a);

class InconsistentRelations : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownAxis : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct AxisSeed {
  AxisRef a;
  AxisRef b;
  RelationCode code;
};

/// Closed relation structure over all joint axes of one mechanism.
///
/// Parallel and coaxial seeds are merged into parallel classes (coaxial
/// additionally into coaxial classes). Perpendicular seeds mark class pairs.
/// Coplanar and common-point seeds are remembered per pair and take no part in
/// direction closure.
class RelationGraph {
 public:
  RelationGraph() = default;

  /// Builds and closes the graph; throws InconsistentRelations when closure
  /// forces a class to be perpendicular to itself.
  static RelationGraph from_seeds(std::vector<std::pair<AxisRef, JointKind>> nodes,
                                  const std::vector<AxisSeed>& seeds);

  const std::vector<AxisRef>& nodes() const noexcept { return nodes_; }
  bool contains(AxisRef a) const;
  JointKind kind(AxisRef a) const;

  /// Maps platform aliases (leg 0 / leg 7) to the real joint.
  AxisRef resolve(AxisRef a) const;

  int parallel_class(AxisRef a) const;
  int coaxial_class(AxisRef a) const;
  bool classes_perpendicular(int c1, int c2) const;
  int class_count() const noexcept { return static_cast<int>(class_members_.size()); }
  /// The lowest-ordered axis of a parallel class.
  AxisRef representative(int cls) const { return class_members_.at(cls).front(); }
  const std::vector<AxisRef>& class_members(int cls) const { return class_members_.at(cls); }

  /// Seeded code for a pair, Arbitrary when none was given.
  RelationCode seeded(AxisRef a, AxisRef b) const;

  RelationCode relation(AxisRef a, AxisRef b) const;

 private:
  std::size_t index(AxisRef a) const;

  std::vector<AxisRef> nodes_;
  std::vector<JointKind> kinds_;
  std::map<AxisRef, std::size_t> index_;
  std::map<int, int> leg_length_;
  std::vector<int> parallel_;                       // node -> class id (dense)
  std::vector<int> coaxial_;                        // node -> coaxial class id
  std::vector<std::vector<AxisRef>> class_members_;
  std::set<std::pair<int, int>> perpendicular_;
  std::map<std::pair<std::size_t, std::size_t>, RelationCode> known_;
};

RelationGraph build_relation_graph(const MechanismTopology& mech);
/// Graph over a single leg, axes addressed as {leg.label, j}.
RelationGraph build_leg_relation_graph(const LegTopology& leg);

/// Strongest derivable relation; symmetric in its arguments.
RelationCode relation_between(const RelationGraph& g, AxisRef a, AxisRef b);

/// Every seed a mechanism contributes: all leg-matrix pairs and both platform
/// matrices, with platform entries mapped onto the legs' end joints.
std::vector<AxisSeed> mechanism_seeds(const MechanismTopology& mech);

}  // namespace pocmob
