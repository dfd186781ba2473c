#include "pocmob/subchain.hpp"

#include <stdexcept>

namespace pocmob {

namespace {

using RC = RelationCode;
using SF = SegmentFamily;

const std::array<SubchainInfo, kCatalogueSize> kCatalogue{{
    {SubchainKind::RparR, 1, SF::G2, "G2", "R || R", "RR", {RC::Parallel}, 1, {1, 0}, {1, 0}},
    {SubchainKind::RperpP, 2, SF::G2, "G2", "R _|_ P", "RP", {RC::Perpendicular}, 1, {1, 0}, {1, 0}},
    {SubchainKind::PperpR, 3, SF::G2, "G2", "P _|_ R", "PR", {RC::Perpendicular}, 2, {0, 1}, {0, 1}},
    {SubchainKind::RRR, 4, SF::G3, "G3", "R || R || R", "RRR",
     {RC::Parallel, RC::Parallel, RC::Parallel}, 1, {2, 0, 0}, {1, 0, 0}},
    {SubchainKind::RRP, 5, SF::G3, "G3", "R || R _|_ P", "RRP",
     {RC::Parallel, RC::Perpendicular, RC::Perpendicular}, 1, {2, 0, 0}, {1, 0, 0}},
    {SubchainKind::PRR, 6, SF::G3, "G3", "P _|_ R || R", "PRR",
     {RC::Perpendicular, RC::Perpendicular, RC::Parallel}, 2, {0, 2, 0}, {0, 1, 0}},
    {SubchainKind::RPR, 7, SF::G3, "G3", "R (_|_ P) || R", "RPR",
     {RC::Perpendicular, RC::Parallel, RC::Perpendicular}, 1, {2, 0, 0}, {1, 0, 0}},
    {SubchainKind::RPP, 8, SF::G3, "G3", "R (_|_ P) _|_ P", "RPP",
     {RC::Perpendicular, RC::Perpendicular, RC::Perpendicular}, 1, {2, 0, 0}, {1, 0, 0}},
    {SubchainKind::PPR, 9, SF::G3, "G3", "P (_|_ P) _|_ R", "PPR",
     {RC::Perpendicular, RC::Perpendicular, RC::Perpendicular}, 3, {0, 0, 2}, {0, 0, 1}},
    {SubchainKind::PRP, 10, SF::G3, "G3", "P (_|_ R) _|_ P", "PRP",
     {RC::Perpendicular, RC::Perpendicular, RC::Perpendicular}, 2, {0, 2, 0}, {0, 1, 0}},
    {SubchainKind::RR, 11, SF::S2, "S2", "R - R", "RR", {RC::Arbitrary}, 1, {0, 0}, {1, 1}},
    {SubchainKind::U, 12, SF::S2, "S2", "R _|_ R", "RR", {RC::Perpendicular}, 1, {0, 0}, {1, 1}},
    {SubchainKind::SphericalArbitrary, 13, SF::S3, "S3", "R - R - R", "RRR",
     {RC::Arbitrary, RC::Arbitrary, RC::Arbitrary}, 1, {0, 0, 0}, {1, 1, 1}},
    {SubchainKind::SphericalCommonPoint, 14, SF::S3, "S3", "R * R * R", "RRR",
     {RC::CommonPoint, RC::CommonPoint, RC::CommonPoint}, 1, {0, 0, 0}, {1, 1, 1}},
    {SubchainKind::SphericalOrthogonal, 15, SF::S3, "S3", "R _|_ R _|_ R", "RRR",
     {RC::Perpendicular, RC::Perpendicular, RC::Perpendicular}, 1, {0, 0, 0}, {1, 1, 1}},
}};

const SubchainInfo kSingleR{SubchainKind::SingleR, 0, SF::Single, "R", "R", "R", {}, 1, {0}, {1}};
const SubchainInfo kSingleP{SubchainKind::SingleP, 0, SF::Single, "P", "P", "P", {}, 1, {1}, {0}};

bool code_matches(RelationCode wanted, RelationCode actual, int row) {
  switch (wanted) {
    // Coaxial revolutes share a line and generate no planar translation.
    case RC::Parallel: return actual == RC::Parallel;
    case RC::Arbitrary:
      // Two revolutes with no direction relation form the generic S2; the
      // three-joint form needs every pair unconstrained.
      if (row == 11) return actual == RC::Arbitrary || actual == RC::Coplanar || actual == RC::CommonPoint;
      return actual == RC::Arbitrary;
    default: return actual == wanted;
  }
}

bool matches(const SubchainInfo& info, const LegTopology& leg, std::size_t at, const RelationGraph& g) {
  const int n = info.size();
  if (at + n > leg.size()) return false;
  for (int k = 0; k < n; ++k)
    if (leg.joints[at + k] != (info.letters[k] == 'R' ? JointKind::Revolute : JointKind::Prismatic)) return false;
  auto ref = [&](int k) { return AxisRef{leg.label, static_cast<int>(at) + k + 1}; };
  static constexpr std::pair<int, int> kPairs[] = {{0, 1}, {0, 2}, {1, 2}};
  for (std::size_t p = 0; p < info.codes.size(); ++p) {
    const auto [i, j] = kPairs[p];
    const auto actual = relation_between(g, ref(i), ref(j));
    if (!code_matches(info.codes[p], actual, info.row)) return false;
  }
  return true;
}

}  // namespace

const std::array<SubchainInfo, kCatalogueSize>& subchain_catalogue() { return kCatalogue; }

const SubchainInfo& subchain_info(SubchainKind kind) {
  if (kind == SubchainKind::SingleR) return kSingleR;
  if (kind == SubchainKind::SingleP) return kSingleP;
  return kCatalogue.at(static_cast<std::size_t>(kind) - 1);
}

LegTopology subchain_topology(SubchainKind kind) {
  const auto& info = subchain_info(kind);
  std::vector<RelationSeed> seeds;
  static constexpr std::pair<std::size_t, std::size_t> kPairs[] = {{1, 2}, {1, 3}, {2, 3}};
  for (std::size_t p = 0; p < info.codes.size(); ++p) seeds.push_back({kPairs[p].first, kPairs[p].second, info.codes[p]});
  return make_leg(joints_from_string(info.letters), seeds);
}

std::vector<Segment> extract_subchains(const LegTopology& leg, const RelationGraph& g) {
  std::vector<Segment> out;
  std::size_t at = 0;
  while (at < leg.size()) {
    const SubchainInfo* hit = nullptr;
    for (int len : {3, 2}) {
      for (const auto& info : kCatalogue)
        if (info.size() == len && matches(info, leg, at, g)) {
          hit = &info;
          break;
        }
      if (hit) break;
    }
    const int first = static_cast<int>(at) + 1;
    if (hit) {
      out.push_back({hit->kind, first, first + hit->size() - 1});
      at += hit->size();
    } else {
      out.push_back({leg.joints[at] == JointKind::Revolute ? SubchainKind::SingleR : SubchainKind::SingleP, first, first});
      ++at;
    }
  }
  return out;
}

PocMatrix subchain_poc(SubchainKind kind, int first, int f, int leg_label) {
  const auto& info = subchain_info(kind);
  if (first < 1 || first + info.size() - 1 > f || f > kPocColumns)
    throw std::out_of_range("subchain_poc: segment outside the leg");

  PocMatrix m;
  m.columns = f;
  m.translation_owner = m.rotation_owner = leg_label;
  auto joint = [&](int k) { return AxisRef{leg_label, first + k}; };
  auto off = [&](int a, int b) { return Line::offset(joint(a), joint(a), joint(b)); };
  const int col = first - 1 + info.column - 1;

  for (int k = 0; k < info.size(); ++k) {
    m.t[first - 1 + k] = info.t[k];
    m.r[first - 1 + k] = info.r[k];
    if (info.t[k] || info.r[k]) m.family[first - 1 + k] = info.family;
  }

  switch (info.family) {
    case SegmentFamily::Single:
      (kind == SubchainKind::SingleR ? m.r_dir : m.t_dir)[col] = DirectionDescriptor::line(Line::along(joint(0)));
      break;
    case SegmentFamily::S2:
    case SegmentFamily::S3:
      for (int k = 0; k < info.size(); ++k) m.r_dir[first - 1 + k] = DirectionDescriptor::line(Line::along(joint(k)));
      break;
    case SegmentFamily::G2:
      if (kind == SubchainKind::RparR) {
        m.t_dir[col] = DirectionDescriptor::line(off(0, 1));
        m.r_dir[col] = DirectionDescriptor::line(Line::along(joint(0)));
      } else if (kind == SubchainKind::RperpP) {
        m.t_dir[col] = DirectionDescriptor::line(Line::along(joint(1)));
        m.r_dir[col] = DirectionDescriptor::line(Line::along(joint(0)));
      } else {
        m.t_dir[col] = DirectionDescriptor::line(Line::along(joint(0)));
        m.r_dir[col] = DirectionDescriptor::line(Line::along(joint(1)));
      }
      break;
    case SegmentFamily::G3: {
      // Planar: translations span the normal plane of the revolute direction.
      const int pivot = info.column - 1;
      std::vector<Line> span;
      for (int k = 0; k < 3; ++k) {
        if (k == pivot) continue;
        span.push_back(info.letters[k] == 'P' ? Line::along(joint(k)) : off(pivot, k));
      }
      m.t_dir[col] = DirectionDescriptor::normal_plane(joint(pivot), span);
      m.r_dir[col] = DirectionDescriptor::line(Line::along(joint(pivot)));
      break;
    }
    case SegmentFamily::None: break;
  }
  return m;
}

PocMatrix subchain_poc(const Segment& s, int f, int leg_label) { return subchain_poc(s.kind, s.first, f, leg_label); }

std::string describe_segment(const Segment& s) {
  std::string out = subchain_info(s.kind).name;
  out += "[" + std::to_string(s.first);
  if (s.last != s.first) out += "-" + std::to_string(s.last);
  return out + "]";
}

}  // namespace pocmob
