#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pocmob/relation_graph.hpp"

namespace pocmob {

/// How to treat a direction question the relation graph cannot answer.
enum class RelationPolicy {
  GeneralPosition,  ///< undetermined axes are assumed non-parallel and non-perpendicular
  Strict,           ///< undetermined questions raise IndeterminateRelation
};

class IndeterminateRelation : public std::runtime_error {
 public:
  explicit IndeterminateRelation(const std::string& what, int step = 0)
      : std::runtime_error(what), step_(step) {}
  /// Loop index (1-based) of the mobility flow that raised it; 0 if unknown.
  int step() const noexcept { return step_; }

 private:
  int step_;
};

/// A symbolic line direction.
///
/// `Axis` lines point along a joint axis. `Generic` lines are directions that
/// are only known through the axes they are perpendicular to, e.g. the
/// translation produced by two parallel revolute joints lies somewhere in the
/// normal plane of their common direction. A generic line with two non-parallel
/// normals is fully determined.
struct Line {
  enum class Kind { Axis, Generic };

  Kind kind = Kind::Axis;
  AxisRef axis{};                  // Axis: the joint axis. Generic: the joint it is attributed to.
  std::vector<AxisRef> normal_to;  // Generic only, sorted.
  std::string id;                  // Generic only; distinct ids are independent directions.
  std::vector<AxisRef> between;    // Offsets only: the two parallel axes they join.

  static Line along(AxisRef a);
  static Line generic(AxisRef attributed, std::vector<AxisRef> normal_to, std::string id);
  /// Translation joining rotations about two parallel axes `a` and `b`.
  /// Offsets between the same pair of axis lines are one direction.
  static Line offset(AxisRef attributed, AxisRef a, AxisRef b);

  bool operator==(const Line&) const = default;
};

/// Subspace of direction space: empty, a line, a plane or everything.
///
/// Planes carry up to two spanning lines and, when derivable, a normal line.
/// Every plane has two spanning lines or a normal (usually both).
struct DirectionDescriptor {
  int rank = 0;
  std::vector<Line> span;
  std::optional<Line> normal;

  static DirectionDescriptor none() { return {}; }
  static DirectionDescriptor full() { return {3, {}, std::nullopt}; }
  static DirectionDescriptor line(Line l) { return {1, {std::move(l)}, std::nullopt}; }
  /// Plane whose normal is the given axis.
  static DirectionDescriptor normal_plane(AxisRef axis, std::vector<Line> span) {
    return {2, std::move(span), Line::along(axis)};
  }

  bool operator==(const DirectionDescriptor&) const = default;
};

enum class Tri { No, Yes, Unknown };

/// Answers direction questions against one relation graph.
class DirectionContext {
 public:
  DirectionContext(const RelationGraph& g, RelationPolicy policy = RelationPolicy::GeneralPosition)
      : g_(&g), policy_(policy) {}

  const RelationGraph& graph() const noexcept { return *g_; }
  RelationPolicy policy() const noexcept { return policy_; }

  Tri parallel(const Line& a, const Line& b) const;
  Tri perpendicular(const Line& a, const Line& b) const;
  /// Whether the line lies in the subspace.
  Tri contains(const DirectionDescriptor& space, const Line& l) const;
  Tri planes_parallel(const DirectionDescriptor& p, const DirectionDescriptor& q) const;

  /// Resolves a three-valued answer: Unknown becomes false under general
  /// position and throws under the strict policy.
  bool decide(Tri t, const std::string& question) const;

  /// Replaces a determined generic line by the axis class it must be parallel to.
  Line canonical(const Line& l) const;

  /// Plane spanned by two non-parallel lines, normal filled in when derivable.
  DirectionDescriptor plane_through(const Line& a, const Line& b) const;

 private:
  std::vector<int> normal_classes(const Line& l) const;

  const RelationGraph* g_;
  RelationPolicy policy_;
};

/// Sum (union) of two direction subspaces.
DirectionDescriptor subspace_sum(const DirectionDescriptor& a, const DirectionDescriptor& b,
                                 const DirectionContext& ctx);

/// Which operand an intersection result was taken from.
enum class Provenance { First, Second, Derived };

struct Intersection {
  DirectionDescriptor space;
  Provenance from = Provenance::Derived;
};

/// Intersection of two direction subspaces. An empty operand absorbs; a full
/// operand returns the other one.
Intersection subspace_intersection(const DirectionDescriptor& a, const DirectionDescriptor& b,
                                   const DirectionContext& ctx);

/// Short key used in generic-line ids, e.g. "J41".
std::string line_key(const Line& l);

/// Human-readable form: "P43", "R11", "n(R11)" for a line in the normal plane of R11.
std::string describe_line(const Line& l, const RelationGraph& g);
/// "along P43", "about R41, R42", "plane normal to R11", "any direction", "none".
std::string describe_translation(const DirectionDescriptor& d, const RelationGraph& g);
std::string describe_rotation(const DirectionDescriptor& d, const RelationGraph& g);

}  // namespace pocmob
