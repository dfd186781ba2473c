#include "pocmob/relation_graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace pocmob {

std::string axis_label(AxisRef a, JointKind kind) {
  return joint_letter(kind) + std::to_string(a.leg) + std::to_string(a.joint);
}

std::string axis_label(AxisRef a) { return "J" + std::to_string(a.leg) + std::to_string(a.joint); }

namespace {

struct DisjointSet {
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
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

// Dense class ids in first-appearance order of nodes.
std::vector<int> dense_ids(DisjointSet& ds, std::size_t n) {
  std::vector<int> out(n, -1);
  std::map<std::size_t, int> ids;
  for (std::size_t i = 0; i < n; ++i) {
    auto root = ds.find(i);
    auto [it, inserted] = ids.emplace(root, static_cast<int>(ids.size()));
    out[i] = it->second;
  }
  return out;
}

bool joins_directions(RelationCode c) { return c == RelationCode::Parallel || c == RelationCode::Coaxial; }

}  // namespace

RelationGraph RelationGraph::from_seeds(std::vector<std::pair<AxisRef, JointKind>> nodes,
                                        const std::vector<AxisSeed>& seeds) {
  RelationGraph g;
  std::sort(nodes.begin(), nodes.end());
  for (const auto& [ref, kind] : nodes) {
    if (g.index_.count(ref)) continue;
    g.index_[ref] = g.nodes_.size();
    g.nodes_.push_back(ref);
    g.kinds_.push_back(kind);
    g.leg_length_[ref.leg] = std::max(g.leg_length_[ref.leg], ref.joint);
  }
  const auto n = g.nodes_.size();

  DisjointSet par(n), coax(n);
  std::vector<std::vector<std::size_t>> direction_edges(n);
  for (const auto& s : seeds) {
    const auto a = g.index(g.resolve(s.a));
    const auto b = g.index(g.resolve(s.b));
    if (a == b) continue;
    const auto key = std::minmax(a, b);
    if (s.code != RelationCode::Arbitrary) g.known_.try_emplace({key.first, key.second}, s.code);
    if (joins_directions(s.code)) {
      par.unite(a, b);
      direction_edges[a].push_back(b);
      direction_edges[b].push_back(a);
    }
    if (s.code == RelationCode::Coaxial) coax.unite(a, b);
  }

  // Parallel revolute axes through a common point share their line.
  for (const auto& s : seeds) {
    if (s.code != RelationCode::CommonPoint) continue;
    const auto a = g.index(g.resolve(s.a));
    const auto b = g.index(g.resolve(s.b));
    if (g.kinds_[a] == JointKind::Revolute && g.kinds_[b] == JointKind::Revolute && par.find(a) == par.find(b))
      coax.unite(a, b);
  }

  g.parallel_ = dense_ids(par, n);
  g.coaxial_ = dense_ids(coax, n);
  const int classes = n ? *std::max_element(g.parallel_.begin(), g.parallel_.end()) + 1 : 0;
  g.class_members_.assign(classes, {});
  for (std::size_t i = 0; i < n; ++i) g.class_members_[g.parallel_[i]].push_back(g.nodes_[i]);

  for (const auto& s : seeds) {
    if (s.code != RelationCode::Perpendicular) continue;
    const auto a = g.index(g.resolve(s.a));
    const auto b = g.index(g.resolve(s.b));
    const int ca = g.parallel_[a], cb = g.parallel_[b];
    if (ca == cb) {
      // Name the chain of parallel/coaxial seeds that joins the two axes.
      std::vector<std::ptrdiff_t> prev(n, -1);
      std::queue<std::size_t> q;
      q.push(a);
      prev[a] = static_cast<std::ptrdiff_t>(a);
      while (!q.empty()) {
        auto x = q.front();
        q.pop();
        for (auto y : direction_edges[x])
          if (prev[y] < 0) {
            prev[y] = static_cast<std::ptrdiff_t>(x);
            q.push(y);
          }
      }
      std::vector<std::size_t> path;
      for (auto x = b; prev[x] >= 0 && x != a; x = static_cast<std::size_t>(prev[x])) path.push_back(x);
      path.push_back(a);
      std::ostringstream os;
      os << "inconsistent relations: " << axis_label(g.nodes_[a], g.kinds_[a]) << " is seeded perpendicular to "
         << axis_label(g.nodes_[b], g.kinds_[b]) << " but parallel closure joins them: ";
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        if (it != path.rbegin()) os << " || ";
        os << axis_label(g.nodes_[*it], g.kinds_[*it]);
      }
      throw InconsistentRelations(os.str());
    }
    g.perpendicular_.insert(std::minmax(ca, cb));
  }
  return g;
}

std::size_t RelationGraph::index(AxisRef a) const {
  auto it = index_.find(a);
  if (it == index_.end())
    throw UnknownAxis("unknown axis leg " + std::to_string(a.leg) + " joint " + std::to_string(a.joint));
  return it->second;
}

AxisRef RelationGraph::resolve(AxisRef a) const {
  if (a.leg == kFixedPlatformLeg) return {a.joint, 1};
  if (a.leg == kMovingPlatformLeg) {
    auto it = leg_length_.find(a.joint);
    if (it == leg_length_.end()) throw UnknownAxis("moving platform alias for unknown leg " + std::to_string(a.joint));
    return {a.joint, it->second};
  }
  return a;
}

bool RelationGraph::contains(AxisRef a) const { return index_.count(resolve(a)) > 0; }

JointKind RelationGraph::kind(AxisRef a) const { return kinds_[index(resolve(a))]; }

int RelationGraph::parallel_class(AxisRef a) const { return parallel_[index(resolve(a))]; }

int RelationGraph::coaxial_class(AxisRef a) const { return coaxial_[index(resolve(a))]; }

bool RelationGraph::classes_perpendicular(int c1, int c2) const { return perpendicular_.count(std::minmax(c1, c2)) > 0; }

RelationCode RelationGraph::seeded(AxisRef a, AxisRef b) const {
  const auto ia = index(resolve(a));
  const auto ib = index(resolve(b));
  auto it = known_.find(std::minmax(ia, ib));
  return it == known_.end() ? RelationCode::Arbitrary : it->second;
}

RelationCode RelationGraph::relation(AxisRef a, AxisRef b) const {
  const auto ia = index(resolve(a));
  const auto ib = index(resolve(b));
  if (ia == ib) return RelationCode::Parallel;
  if (coaxial_[ia] == coaxial_[ib]) return RelationCode::Coaxial;
  if (parallel_[ia] == parallel_[ib]) return RelationCode::Parallel;
  if (classes_perpendicular(parallel_[ia], parallel_[ib])) return RelationCode::Perpendicular;
  return seeded(a, b);
}

RelationCode relation_between(const RelationGraph& g, AxisRef a, AxisRef b) { return g.relation(a, b); }

std::vector<AxisSeed> mechanism_seeds(const MechanismTopology& mech) {
  std::vector<AxisSeed> seeds;
  for (const auto& leg : mech.legs)
    for (std::size_t i = 0; i < leg.size(); ++i)
      for (std::size_t j = i + 1; j < leg.size(); ++j)
        seeds.push_back({{leg.label, static_cast<int>(i + 1)}, {leg.label, static_cast<int>(j + 1)}, leg.relation(i, j)});

  for (const auto* p : {&mech.fixed, &mech.moving}) {
    const int virtual_leg = p->side == PlatformSide::Fixed ? kFixedPlatformLeg : kMovingPlatformLeg;
    const auto k = std::min(p->matrix.size(), mech.legs.size());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        seeds.push_back({{virtual_leg, mech.legs[i].label}, {virtual_leg, mech.legs[j].label}, p->matrix(i, j)});
  }
  return seeds;
}

RelationGraph build_relation_graph(const MechanismTopology& mech) {
  std::vector<std::pair<AxisRef, JointKind>> nodes;
  for (const auto& leg : mech.legs)
    for (std::size_t j = 0; j < leg.size(); ++j) nodes.push_back({{leg.label, static_cast<int>(j + 1)}, leg.joints[j]});
  return RelationGraph::from_seeds(std::move(nodes), mechanism_seeds(mech));
}

RelationGraph build_leg_relation_graph(const LegTopology& leg) {
  std::vector<std::pair<AxisRef, JointKind>> nodes;
  for (std::size_t j = 0; j < leg.size(); ++j) nodes.push_back({{leg.label, static_cast<int>(j + 1)}, leg.joints[j]});
  std::vector<AxisSeed> seeds;
  for (std::size_t i = 0; i < leg.size(); ++i)
    for (std::size_t j = i + 1; j < leg.size(); ++j)
      seeds.push_back({{leg.label, static_cast<int>(i + 1)}, {leg.label, static_cast<int>(j + 1)}, leg.relation(i, j)});
  return RelationGraph::from_seeds(std::move(nodes), seeds);
}

}  // namespace pocmob
