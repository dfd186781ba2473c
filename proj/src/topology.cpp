#include "pocmob/topology.hpp"

#include <sstream>

namespace pocmob {

int joint_code(JointKind kind) { return kind == JointKind::Revolute ? kRevoluteCode : kPrismaticCode; }

char joint_letter(JointKind kind) { return kind == JointKind::Revolute ? 'R' : 'P'; }

std::string_view relation_name(RelationCode code) {
  switch (code) {
    case RelationCode::Arbitrary: return "arbitrary";
    case RelationCode::Parallel: return "parallel";
    case RelationCode::Perpendicular: return "perpendicular";
    case RelationCode::Coaxial: return "coaxial";
    case RelationCode::Coplanar: return "coplanar";
    case RelationCode::CommonPoint: return "common-point";
  }
  return "?";
}

bool is_relation_code(int value) { return value >= 0 && value <= 5; }

bool RelationMatrix::symmetric() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

LegTopology make_leg(std::vector<JointKind> joints, const std::vector<RelationSeed>& seeds, int label) {
  LegTopology leg;
  leg.relations = RelationMatrix(joints.size());
  leg.joints = std::move(joints);
  leg.label = label;
  for (const auto& s : seeds) {
    if (s.i == 0 || s.j == 0 || s.i > leg.size() || s.j > leg.size() || s.i == s.j)
      throw std::out_of_range("make_leg: relation seed outside the leg");
    leg.relations.set(s.i - 1, s.j - 1, s.code);
  }
  return leg;
}

std::vector<JointKind> joints_from_string(std::string_view letters) {
  std::vector<JointKind> out;
  for (char c : letters) {
    if (c == 'R') out.push_back(JointKind::Revolute);
    else if (c == 'P') out.push_back(JointKind::Prismatic);
    else throw std::invalid_argument(std::string("unknown joint letter '") + c + "'");
  }
  return out;
}

std::string joints_to_string(const std::vector<JointKind>& joints) {
  std::string s;
  for (auto j : joints) s.push_back(joint_letter(j));
  return s;
}

namespace {

IntMatrix encode_square(const std::vector<JointKind>& diagonal, const RelationMatrix& rel) {
  const auto n = static_cast<Eigen::Index>(diagonal.size());
  IntMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = i == j ? joint_code(diagonal[i]) : static_cast<int>(rel(i, j));
  return m;
}

// Shared by leg and platform decoding; both carry the same encoding.
void decode_square(const IntMatrix& m, std::vector<JointKind>& diagonal, RelationMatrix& rel) {
  if (m.rows() != m.cols())
    throw TopologyError(TopologyError::Code::NotSquare, "topology matrix is not square");
  if (static_cast<std::size_t>(m.rows()) > kMaxJoints)
    throw TopologyError(TopologyError::Code::TooLarge,
                        "topology matrix side " + std::to_string(m.rows()) + " exceeds 6");
  const auto n = static_cast<std::size_t>(m.rows());
  diagonal.clear();
  rel = RelationMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int d = m(i, i);
    if (d == kRevoluteCode) diagonal.push_back(JointKind::Revolute);
    else if (d == kPrismaticCode) diagonal.push_back(JointKind::Prismatic);
    else
      throw TopologyError(TopologyError::Code::InvalidDiagonal,
                          "diagonal entry " + std::to_string(i + 1) + " is " + std::to_string(d) +
                              ", expected 8 (R) or 9 (P)");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const int c = m(i, j);
      if (!is_relation_code(c))
        throw TopologyError(TopologyError::Code::InvalidRelation,
                            "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") is " +
                                std::to_string(c) + ", expected a relation code 0-5");
      if (c != m(j, i))
        throw TopologyError(TopologyError::Code::Asymmetric,
                            "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") and (" +
                                std::to_string(j + 1) + "," + std::to_string(i + 1) + ") differ");
      rel(i, j) = static_cast<RelationCode>(c);
    }
  }
}

}  // namespace

IntMatrix encode_leg(const LegTopology& leg) { return encode_square(leg.joints, leg.relations); }

LegTopology decode_leg(const IntMatrix& matrix, int label) {
  LegTopology leg;
  leg.label = label;
  decode_square(matrix, leg.joints, leg.relations);
  return leg;
}

IntMatrix encode_platform(const PlatformRelations& platform) {
  return encode_square(platform.diagonal, platform.matrix);
}

PlatformRelations decode_platform(const IntMatrix& matrix, PlatformSide side) {
  PlatformRelations p;
  p.side = side;
  decode_square(matrix, p.diagonal, p.matrix);
  return p;
}

int MechanismTopology::total_joint_dof() const {
  int sum = 0;
  for (const auto& leg : legs) sum += static_cast<int>(leg.size());
  return sum;
}

PlatformRelations uniform_platform(const std::vector<LegTopology>& legs, PlatformSide side, RelationCode code) {
  PlatformRelations p;
  p.side = side;
  p.matrix = RelationMatrix(legs.size());
  for (std::size_t i = 0; i < legs.size(); ++i) {
    const auto& joints = legs[i].joints;
    p.diagonal.push_back(side == PlatformSide::Fixed ? joints.front() : joints.back());
    for (std::size_t j = i + 1; j < legs.size(); ++j) p.matrix.set(i, j, code);
  }
  return p;
}

std::vector<std::string> validate_mechanism(const MechanismTopology& mech) {
  std::vector<std::string> out;
  const auto k = mech.legs.size();
  if (k < kMinLegs) out.push_back("leg count < 2");
  if (k > kMaxLegs) out.push_back("leg count > 6");

  for (std::size_t i = 0; i < k; ++i) {
    const auto& leg = mech.legs[i];
    const std::string tag = "leg " + std::to_string(i + 1) + ": ";
    if (leg.label != static_cast<int>(i + 1))
      out.push_back(tag + "label " + std::to_string(leg.label) + " out of order");
    if (leg.joints.empty()) out.push_back(tag + "has no joints");
    if (leg.joints.size() > kMaxJoints) out.push_back(tag + "more than 6 joints");
    if (leg.relations.size() != leg.joints.size()) out.push_back(tag + "relation matrix size mismatch");
    else if (!leg.relations.symmetric()) out.push_back(tag + "relation matrix not symmetric");
  }

  for (const auto* p : {&mech.moving, &mech.fixed}) {
    const bool moving = p->side == PlatformSide::Moving;
    const std::string tag = moving ? "moving platform: " : "fixed platform: ";
    if (p->size() != k || p->matrix.size() != k) {
      out.push_back(tag + "platform matrix size mismatch");
      continue;
    }
    if (!p->matrix.symmetric()) out.push_back(tag + "matrix not symmetric");
    for (std::size_t i = 0; i < k; ++i) {
      const auto& joints = mech.legs[i].joints;
      if (joints.empty()) continue;
      const auto end = moving ? joints.back() : joints.front();
      if (p->diagonal[i] != end) {
        std::ostringstream os;
        os << tag << "diagonal " << i + 1 << " is " << joint_letter(p->diagonal[i]) << " but leg " << i + 1
           << (moving ? " ends" : " starts") << " with " << joint_letter(end);
        out.push_back(os.str());
      }
    }
  }
  return out;
}

}  // namespace pocmob
