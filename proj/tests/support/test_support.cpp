#include "test_support.hpp"

#include "pocmob/poc.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pocmob::test {

std::string source_path(const std::string& relative) { return std::string(POCMOB_SOURCE_DIR) + "/" + relative; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

MechanismTopology load_fixture(const std::string& name) {
  return parse_mechanism(read_file(source_path("fixtures/" + name + ".mech"))).mechanism;
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(source_path("fixtures")))
      if (e.path().extension() == ".mech") out.push_back(e.path().stem().string());
    std::sort(out.begin(), out.end());
    return out;
  }();
  return names;
}

IntMatrix leg_table_matrix(char row) {
  IntMatrix m;
  switch (row) {
    case 'a':
      m.resize(3, 3);
      m << 8, 2, 2, 2, 8, 2, 2, 2, 9;
      break;
    case 'b':
      m.resize(4, 4);
      m << 8, 1, 1, 1, 1, 8, 1, 1, 1, 1, 8, 1, 1, 1, 1, 9;
      break;
    case 'c':
      m.resize(5, 5);
      m << 9, 2, 2, 1, 1, 2, 8, 1, 2, 2, 2, 1, 8, 2, 2, 1, 2, 2, 8, 1, 1, 2, 2, 1, 8;
      break;
    case 'd':
      m.resize(6, 6);
      m << 8, 2, 0, 0, 0, 0, 2, 8, 0, 0, 0, 0, 0, 0, 9, 0, 0, 0, 0, 0, 0, 8, 2, 2, 0, 0, 0, 2, 8, 2, 0, 0, 0, 2, 2, 8;
      break;
    default: throw std::invalid_argument("leg table rows are a-d");
  }
  return m;
}

std::pair<std::vector<int>, std::vector<int>> leg_table_poc(char row) {
  switch (row) {
    case 'a': return {{0, 0, 1}, {1, 1, 0}};
    case 'b': return {{3, 0, 0, 0}, {1, 0, 0, 0}};
    case 'c': return {{3, 0, 0, 0, 0}, {0, 1, 0, 1, 0}};
    case 'd': return {{3, 0, 0, 0, 0, 0}, {3, 0, 0, 0, 0, 0}};
    default: throw std::invalid_argument("leg table rows are a-d");
  }
}

namespace {

RelationCode random_code(std::mt19937_64& rng, JointKind a, JointKind b) {
  // Weights: arbitrary, parallel, perpendicular, coaxial, coplanar, common point.
  std::discrete_distribution<int> pick({45, 20, 25, 3, 2, 5});
  auto c = static_cast<RelationCode>(pick(rng));
  if (c == RelationCode::Coaxial && (a == JointKind::Prismatic || b == JointKind::Prismatic)) c = RelationCode::Parallel;
  return c;
}

}  // namespace

bool geometry_is_generic(const MechanismTopology& mech, const RelationGraph& g) {
  try {
    const auto inst = instantiate_geometry(mech, g, 1);
    return directions_are_generic(g, inst);
  } catch (const Unsatisfiable&) {
    return false;
  }
}

bool directions_are_generic(const RelationGraph& g, const GeometricInstance& inst) {
  std::vector<Eigen::Vector3d> dir(g.class_count());
  for (int c = 0; c < g.class_count(); ++c) dir[c] = inst.at(g.representative(c)).direction;
  for (int c = 0; c < g.class_count(); ++c)
    for (int d = c + 1; d < g.class_count(); ++d) {
      if (dir[c].cross(dir[d]).norm() < 1e-6) return false;
      if (!g.classes_perpendicular(c, d) && std::abs(dir[c].dot(dir[d])) < 1e-6) return false;
    }
  return true;
}

MechanismTopology random_mechanism(std::mt19937_64& rng, int max_legs) {
  std::uniform_int_distribution<int> legs_d(2, max_legs), joints_d(1, 6);
  std::bernoulli_distribution prismatic(0.3);
  for (;;) {
    MechanismTopology m;
    m.name = "random";
    const int k = legs_d(rng);
    for (int l = 1; l <= k; ++l) {
      LegTopology leg;
      leg.label = l;
      const int f = joints_d(rng);
      for (int j = 0; j < f; ++j) leg.joints.push_back(prismatic(rng) ? JointKind::Prismatic : JointKind::Revolute);
      leg.relations = RelationMatrix(f);
      for (int i = 0; i < f; ++i)
        for (int j = i + 1; j < f; ++j) leg.relations.set(i, j, random_code(rng, leg.joints[i], leg.joints[j]));
      m.legs.push_back(std::move(leg));
    }
    m.fixed = uniform_platform(m.legs, PlatformSide::Fixed);
    m.moving = uniform_platform(m.legs, PlatformSide::Moving);
    for (auto* p : {&m.fixed, &m.moving})
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) p->matrix.set(i, j, random_code(rng, p->diagonal[i], p->diagonal[j]));
    try {
      if (geometry_is_generic(m, build_relation_graph(m))) return m;
    } catch (const InconsistentRelations&) {
    }
  }
}

RelationGraph leg_graph(int n, const std::vector<RelationSeed>& seeds) {
  std::vector<std::pair<AxisRef, JointKind>> nodes;
  for (int j = 1; j <= n; ++j) nodes.push_back({{1, j}, JointKind::Revolute});
  std::vector<AxisSeed> s;
  for (const auto& r : seeds) s.push_back({{1, static_cast<int>(r.i)}, {1, static_cast<int>(r.j)}, r.code});
  return RelationGraph::from_seeds(nodes, s);
}

namespace {

Eigen::Vector3d line_direction(const Line& l, const GeometricInstance& inst) {
  if (l.kind == Line::Kind::Axis) return inst.at(l.axis).direction;
  Eigen::MatrixXd normals(3, l.normal_to.size());
  for (std::size_t i = 0; i < l.normal_to.size(); ++i) normals.col(i) = inst.at(l.normal_to[i]).direction;
  const Eigen::MatrixXd rest = orthogonal_complement(orthonormal_basis(normals));
  if (rest.cols() != 1) throw std::invalid_argument("generic line is not determined by its normals");
  return rest.col(0);
}

}  // namespace

Eigen::MatrixXd numeric_directions(const DirectionDescriptor& d, const GeometricInstance& inst) {
  switch (d.rank) {
    case 0: return Eigen::MatrixXd(3, 0);
    case 3: return Eigen::MatrixXd::Identity(3, 3);
    case 1: return line_direction(d.span.at(0), inst);
    default: break;
  }
  if (d.span.size() >= 2) {
    Eigen::MatrixXd m(3, 2);
    m << line_direction(d.span[0], inst), line_direction(d.span[1], inst);
    return m;
  }
  if (!d.normal) throw std::invalid_argument("plane without a normal or two spanning lines");
  const Eigen::Vector3d n = line_direction(*d.normal, inst);
  return orthogonal_complement(n);
}

int numeric_dim(const Eigen::MatrixXd& m) { return numeric_rank(m); }

int numeric_meet_dim(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (numeric_rank(a) == 0 || numeric_rank(b) == 0) return 0;
  return static_cast<int>(subspace_meet(a, b).cols());
}

int numeric_sum_dim(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd both(3, a.cols() + b.cols());
  both << a, b;
  return numeric_rank(both);
}

std::vector<int> row6(std::vector<int> v) {
  v.resize(kPocColumns, 0);
  return v;
}

}  // namespace pocmob::test

namespace pocmob::test {

namespace {

using RC = RelationCode;

enum class Shape { Empty, Line, SpanPlane, NormalPlane, Full };
constexpr Shape kShapes[] = {Shape::Empty, Shape::Line, Shape::SpanPlane, Shape::NormalPlane, Shape::Full};

DirectionDescriptor make_descriptor(Shape s, AxisRef x, AxisRef y, const DirectionContext& ctx) {
  switch (s) {
    case Shape::Empty: return DirectionDescriptor::none();
    case Shape::Line: return DirectionDescriptor::line(Line::along(x));
    case Shape::SpanPlane: return ctx.plane_through(Line::along(x), Line::along(y));
    case Shape::NormalPlane: return DirectionDescriptor::normal_plane(x, {});
    case Shape::Full: return DirectionDescriptor::full();
  }
  return {};
}

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Empty: return "empty";
    case Shape::Line: return "line";
    case Shape::SpanPlane: return "span-plane";
    case Shape::NormalPlane: return "normal-plane";
    case Shape::Full: return "full";
  }
  return "?";
}

struct PairCase {
  const RelationGraph* g;
  DirectionDescriptor a, b;
  std::string label;
};

void check_pair(const PairCase& c, RuleSuiteResult& out) {
  const DirectionContext ctx(*c.g);
  const auto full = DirectionDescriptor::full();
  int bad = 0;
  auto fail = [&](const std::string& what) {
    ++bad;
    if (out.messages.size() < 10) out.messages.push_back(c.label + ": " + what);
  };

  const int ra = c.a.rank, rb = c.b.rank;
  struct Op {
    const char* name;
    int ab, ba, aa, bb;
    DirectionDescriptor result;
  };
  const auto ti = intersect_translation(c.a, c.b, ctx);
  const auto ri = intersect_rotation(c.a, c.b, ctx, &full);
  const Op inters[] = {
      {"translation intersection", ti.space.rank, intersect_translation(c.b, c.a, ctx).space.rank,
       intersect_translation(c.a, c.a, ctx).space.rank, intersect_translation(c.b, c.b, ctx).space.rank, ti.space},
      {"rotation intersection", ri.space.rank, intersect_rotation(c.b, c.a, ctx, &full).space.rank,
       intersect_rotation(c.a, c.a, ctx, &full).space.rank, intersect_rotation(c.b, c.b, ctx, &full).space.rank,
       ri.space},
  };
  const Op unions[] = {
      {"translation union", union_translation_dim(c.a, c.b, ctx), union_translation_dim(c.b, c.a, ctx),
       union_translation_dim(c.a, c.a, ctx), union_translation_dim(c.b, c.b, ctx), {}},
      {"rotation union", union_rotation_dim(c.a, c.b, ctx), union_rotation_dim(c.b, c.a, ctx),
       union_rotation_dim(c.a, c.a, ctx), union_rotation_dim(c.b, c.b, ctx), {}},
  };

  for (const auto& op : inters) {
    if (op.ab != op.ba) fail(std::string(op.name) + " not commutative");
    if (op.aa != ra || op.bb != rb) fail(std::string(op.name) + " not idempotent");
    if (op.ab > std::min(ra, rb)) fail(std::string(op.name) + " exceeds min rank");
  }
  for (const auto& op : unions) {
    if (op.ab != op.ba) fail(std::string(op.name) + " not commutative");
    if (op.aa != ra || op.bb != rb) fail(std::string(op.name) + " not idempotent");
    if (op.ab < std::max(ra, rb) || op.ab > std::min(3, ra + rb)) fail(std::string(op.name) + " out of bounds");
  }
  for (int k = 0; k < 2; ++k)
    if (inters[k].ab + unions[k].ab != ra + rb) fail(std::string(inters[k].name) + " breaks the modular identity");

  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto inst = instantiate_geometry(*c.g, seed);
    const auto na = numeric_directions(c.a, inst), nb = numeric_directions(c.b, inst);
    const int meet = numeric_meet_dim(na, nb), sum = numeric_sum_dim(na, nb);
    if (numeric_dim(na) != ra || numeric_dim(nb) != rb) fail("descriptor rank differs from its numeric subspace");
    if (meet + sum != ra + rb) fail("numeric modular identity");
    for (int k = 0; k < 2; ++k) {
      if (inters[k].ab != meet)
        fail(std::string(inters[k].name) + " rank " + std::to_string(inters[k].ab) + ", numeric " +
             std::to_string(meet));
      if (unions[k].ab != sum)
        fail(std::string(unions[k].name) + " rank " + std::to_string(unions[k].ab) + ", numeric " +
             std::to_string(sum));
      // The symbolic intersection must lie inside both operands. A generic
      // line with a single normal cannot be rebuilt numerically; rank only.
      Eigen::MatrixXd nr;
      try {
        nr = numeric_directions(inters[k].result, inst);
      } catch (const std::invalid_argument&) {
        if (seed == 1) ++out.rank_only;
        continue;
      }
      if (numeric_sum_dim(nr, na) != ra || numeric_sum_dim(nr, nb) != rb)
        fail(std::string(inters[k].name) + " result is not inside both operands");
    }
  }
  ++out.cases;
  if (bad) ++out.violations;
}

}  // namespace

RuleSuiteResult run_rule_table_suite(int random_cases, std::uint64_t seed) {
  RuleSuiteResult out;
  const RC within[] = {RC::Arbitrary, RC::Perpendicular};
  const RC across[] = {RC::Arbitrary, RC::Parallel, RC::Perpendicular};

  // Grid: operand A is built from axes 1, 2 and operand B from axes 3, 4.
  for (RC wa : within)
    for (RC wb : within)
      for (RC c13 : across)
        for (RC c24 : across) {
          RelationGraph g;
          try {
            g = leg_graph(4, {{1, 2, wa}, {3, 4, wb}, {1, 3, c13}, {2, 4, c24}});
          } catch (const InconsistentRelations&) {
            continue;
          }
          // A perpendicular cycle 1-2-4-3 forces 4 || 1, which the graph does not state.
          if (!directions_are_generic(g, instantiate_geometry(g, 1))) {
            ++out.skipped_graphs;
            continue;
          }
          const DirectionContext ctx(g);
          for (Shape sa : kShapes)
            for (Shape sb : kShapes) {
              PairCase c{&g, make_descriptor(sa, {1, 1}, {1, 2}, ctx), make_descriptor(sb, {1, 3}, {1, 4}, ctx), ""};
              c.label = std::string(shape_name(sa)) + " vs " + shape_name(sb) + " [" +
                        std::string(relation_name(wa)) + "," + std::string(relation_name(wb)) + "," +
                        std::string(relation_name(c13)) + "," + std::string(relation_name(c24)) + "]";
              check_pair(c, out);
              ++out.exhaustive;
            }
        }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> code(0, 2), axis(1, 5), shape(0, 4);
  int made = 0;
  while (made < random_cases) {
    std::vector<RelationSeed> seeds;
    for (std::size_t i = 1; i <= 5; ++i)
      for (std::size_t j = i + 1; j <= 5; ++j) seeds.push_back({i, j, std::array{RC::Arbitrary, RC::Parallel, RC::Perpendicular}[code(rng)]});
    RelationGraph g;
    try {
      g = leg_graph(5, seeds);
    } catch (const InconsistentRelations&) {
      continue;
    }
    try {
      if (!directions_are_generic(g, instantiate_geometry(g, 1))) continue;
    } catch (const Unsatisfiable&) {
      continue;
    }
    const DirectionContext ctx(g);
    auto pick = [&](Shape& s, AxisRef& x, AxisRef& y) {
      for (;;) {
        s = kShapes[shape(rng)];
        x = {1, axis(rng)};
        y = {1, axis(rng)};
        if (s != Shape::SpanPlane) return;
        const auto r = g.relation(x, y);
        if (r != RC::Parallel && r != RC::Coaxial) return;
      }
    };
    Shape sa, sb;
    AxisRef xa, ya, xb, yb;
    pick(sa, xa, ya);
    pick(sb, xb, yb);
    PairCase c{&g, make_descriptor(sa, xa, ya, ctx), make_descriptor(sb, xb, yb, ctx),
               "random #" + std::to_string(made) + " " + shape_name(sa) + " vs " + shape_name(sb)};
    check_pair(c, out);
    ++made;
  }
  return out;
}

}  // namespace pocmob::test

namespace pocmob::test {

MechanismTopology permute_legs(const MechanismTopology& mech, const std::vector<int>& order) {
  MechanismTopology out;
  out.name = mech.name;
  auto platform = [&](const PlatformRelations& p) {
    PlatformRelations q{p.side, {}, RelationMatrix(order.size())};
    for (std::size_t i = 0; i < order.size(); ++i) {
      q.diagonal.push_back(p.diagonal.at(order[i]));
      for (std::size_t j = 0; j < order.size(); ++j) q.matrix(i, j) = p.matrix(order[i], order[j]);
    }
    return q;
  };
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto leg = mech.legs.at(order[i]);
    leg.label = static_cast<int>(i) + 1;
    out.legs.push_back(std::move(leg));
  }
  out.moving = platform(mech.moving);
  out.fixed = platform(mech.fixed);
  return out;
}

}  // namespace pocmob::test

namespace pocmob::test {

PropertySweepResult run_property_sweep(int random_count, std::uint64_t seed) {
  PropertySweepResult out;
  auto note = [&](const std::string& who, const std::string& what) {
    ++out.violations;
    if (out.messages.size() < 10) out.messages.push_back(who + ": " + what);
  };
  auto check = [&](const MechanismTopology& mech, const std::string& who) {
    const auto r = analyze_mechanism(mech);
    const auto g = build_relation_graph(mech);
    ++out.mechanisms;
    if (r.total_joint_dof != mech.total_joint_dof()) note(who, "joint sum");
    if (r.dof + r.loop_sum() != r.total_joint_dof) note(who, "dof + loop sum != joint sum");
    auto fixed_point = [&](const PocMatrix& m, const std::string& what) {
      ++out.matrices;
      if (!(normalize(m, g) == m)) note(who, what + " " + format_poc(m) + " -> " + format_poc(normalize(m, g)));
    };
    for (const auto& leg : r.legs) fixed_point(leg.matrix, "leg " + std::to_string(leg.label));
    for (std::size_t j = 0; j < r.sub_pms.size(); ++j) fixed_point(r.sub_pms[j], "sub-PM " + std::to_string(j + 1));
    fixed_point(r.poc, "POC");
  };
  for (const auto& name : fixture_names()) check(load_fixture(name), name);
  std::mt19937_64 rng(seed);
  for (int n = 0; n < random_count; ++n) check(random_mechanism(rng), "random #" + std::to_string(n));
  return out;
}

}  // namespace pocmob::test
