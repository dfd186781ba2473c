#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace pocmob {

inline constexpr int kRevoluteCode = 8;
inline constexpr int kPrismaticCode = 9;
inline constexpr std::size_t kMaxJoints = 6;
inline constexpr std::size_t kMaxLegs = 6;
inline constexpr std::size_t kMinLegs = 2;

enum class JointKind { Revolute, Prismatic };

/// Geometric relation between two joint axes. The integer values are the
/// codes used in topology matrices and must not change.
enum class RelationCode : int {
  Arbitrary = 0,
  Parallel = 1,
  Perpendicular = 2,
  Coaxial = 3,
  Coplanar = 4,
  CommonPoint = 5,
};

int joint_code(JointKind kind);
char joint_letter(JointKind kind);
std::string_view relation_name(RelationCode code);
bool is_relation_code(int value);

using IntMatrix = Eigen::MatrixXi;

class TopologyError : public std::runtime_error {
 public:
  enum class Code { InvalidDiagonal, InvalidRelation, Asymmetric, TooLarge, NotSquare };

  TopologyError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Symmetric n×n table of relation codes. The diagonal is unused.
class RelationMatrix {
 public:
  RelationMatrix() = default;
  explicit RelationMatrix(std::size_t n) : n_(n), codes_(n * n, RelationCode::Arbitrary) {}

  std::size_t size() const noexcept { return n_; }
  RelationCode operator()(std::size_t i, std::size_t j) const { return codes_[i * n_ + j]; }
  RelationCode& operator()(std::size_t i, std::size_t j) { return codes_[i * n_ + j]; }

  /// Writes both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, RelationCode code) {
    (*this)(i, j) = code;
    (*this)(j, i) = code;
  }

  bool symmetric() const;
  bool operator==(const RelationMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<RelationCode> codes_;
};

/// One leg: its joints ordered from the fixed platform to the moving platform.
struct LegTopology {
  std::vector<JointKind> joints;
  RelationMatrix relations;
  int label = 1;

  std::size_t size() const noexcept { return joints.size(); }
  RelationCode relation(std::size_t i, std::size_t j) const { return relations(i, j); }
  bool operator==(const LegTopology&) const = default;
};

/// Builds a leg from a joint sequence and an explicit list of relations.
/// Pairs not listed stay Arbitrary.
struct RelationSeed {
  std::size_t i;
  std::size_t j;
  RelationCode code;
};
LegTopology make_leg(std::vector<JointKind> joints, const std::vector<RelationSeed>& seeds,
                     int label = 1);

/// Parses a compact joint string such as "RRP" into joint kinds.
std::vector<JointKind> joints_from_string(std::string_view letters);
std::string joints_to_string(const std::vector<JointKind>& joints);

IntMatrix encode_leg(const LegTopology& leg);
LegTopology decode_leg(const IntMatrix& matrix, int label = 1);

enum class PlatformSide { Moving, Fixed };

/// Relations between the platform-adjacent joints of every leg. The diagonal
/// holds the kind of each leg's joint on that platform.
struct PlatformRelations {
  PlatformSide side = PlatformSide::Fixed;
  std::vector<JointKind> diagonal;
  RelationMatrix matrix;

  std::size_t size() const noexcept { return diagonal.size(); }
  bool operator==(const PlatformRelations&) const = default;
};

IntMatrix encode_platform(const PlatformRelations& platform);
PlatformRelations decode_platform(const IntMatrix& matrix, PlatformSide side);

struct MechanismTopology {
  std::string name;
  std::vector<LegTopology> legs;
  PlatformRelations moving{PlatformSide::Moving, {}, {}};
  PlatformRelations fixed{PlatformSide::Fixed, {}, {}};

  std::size_t leg_count() const noexcept { return legs.size(); }
  int total_joint_dof() const;
  bool operator==(const MechanismTopology&) const = default;
};

/// Platform matrices with every off-diagonal entry set to `code`, diagonals
/// taken from the legs' end joints.
PlatformRelations uniform_platform(const std::vector<LegTopology>& legs, PlatformSide side,
                                   RelationCode code = RelationCode::Arbitrary);

/// Lists every violated invariant; an empty list means the mechanism is valid.
std::vector<std::string> validate_mechanism(const MechanismTopology& mech);

}  // namespace pocmob
