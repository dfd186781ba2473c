#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "pocmob/direction.hpp"

namespace pocmob {

inline constexpr int kPocColumns = 6;

/// Sub-chain family a POC column came from; steers overflow attribution.
enum class SegmentFamily { None, Single, S2, G2, G3, S3 };

/// 2×6 position-and-orientation characteristic matrix.
///
/// Column i belongs to joint i+1 of the row's owner leg. Every cell keeps the
/// direction subspace it contributes so that later steps can reason about
/// parallelism without re-deriving it from the topology.
struct PocMatrix {
  std::array<int, kPocColumns> t{};
  std::array<int, kPocColumns> r{};
  std::array<DirectionDescriptor, kPocColumns> t_dir{};
  std::array<DirectionDescriptor, kPocColumns> r_dir{};
  std::array<SegmentFamily, kPocColumns> family{};
  int columns = kPocColumns;     // joint count f of the originating leg, 6 for sub-PMs
  int translation_owner = 0;     // leg label, 0 when the row is empty
  int rotation_owner = 0;
  /// Rotation axes whose motion the matrix carries as a translation or
  /// through another column.
  std::vector<Line> passive;

  int xi_t() const;
  int xi_r() const;
  bool same_entries(const PocMatrix& o) const { return t == o.t && r == o.r; }
  bool operator==(const PocMatrix&) const = default;

  /// Owner-qualified joint of a column: {translation_owner, col+1} etc.
  AxisRef translation_joint(int col) const { return {translation_owner, col + 1}; }
  AxisRef rotation_joint(int col) const { return {rotation_owner, col + 1}; }
};

class OverlappingSupport : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cell-wise union of supplemented matrices with disjoint supports.
PocMatrix poc_or(const std::vector<PocMatrix>& parts);

/// Removes dependent directions, converts surplus rotations into translations
/// and collapses full rows to (3,0,...). Always decides in general position.
PocMatrix normalize(const PocMatrix& m, const RelationGraph& g);

DirectionDescriptor translation_view(const PocMatrix& m, const RelationGraph& g);
DirectionDescriptor rotation_view(const PocMatrix& m, const RelationGraph& g);

Intersection intersect_translation(const DirectionDescriptor& a, const DirectionDescriptor& b,
                                   const DirectionContext& ctx);

/// Rotation intersection. Two parallel rotation lines that are not coaxial
/// survive only if `absorbing` (the combined translation space of both sides)
/// contains the offset translation between them; a null `absorbing` means no
/// translation is available.
Intersection intersect_rotation(const DirectionDescriptor& a, const DirectionDescriptor& b,
                                const DirectionContext& ctx,
                                const DirectionDescriptor* absorbing = nullptr);

int union_translation_dim(const DirectionDescriptor& a, const DirectionDescriptor& b,
                          const DirectionContext& ctx);
int union_rotation_dim(const DirectionDescriptor& a, const DirectionDescriptor& b,
                       const DirectionContext& ctx);

struct LoopRank {
  int xi_t = 0;
  int xi_r = 0;
  int xi() const { return xi_t + xi_r; }
  bool operator==(const LoopRank&) const = default;
};

/// Independent displacement equations of the loop closed by `next_leg`.
LoopRank loop_rank(const PocMatrix& sub_pm, const PocMatrix& next_leg, const DirectionContext& ctx);

/// The sub-PM obtained by joining `sub_pm` and `next_leg` at the moving platform.
PocMatrix intersect_poc(const PocMatrix& sub_pm, const PocMatrix& next_leg, const DirectionContext& ctx);

/// "[3 0 0 0 0 0; 0 1 0 1 0 0]"
std::string format_poc(const PocMatrix& m);
/// Mobility label such as "1T2R": translation rank, then rotation rank.
std::string classify(const PocMatrix& m);

}  // namespace pocmob
