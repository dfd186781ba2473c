#pragma once

#include <array>
#include <string>
#include <vector>

#include "pocmob/poc.hpp"
#include "pocmob/relation_graph.hpp"

namespace pocmob {

/// The fifteen catalogued planar/spherical sub-chains plus lone joints.
enum class SubchainKind {
  RparR = 1,      // R || R
  RperpP,         // R _|_ P
  PperpR,         // P _|_ R
  RRR,            // R || R || R
  RRP,            // R || R _|_ P
  PRR,            // P _|_ R || R
  RPR,            // R (_|_ P) || R
  RPP,            // R (_|_ P) _|_ P
  PPR,            // P (_|_ P) _|_ R
  PRP,            // P (_|_ R) _|_ P
  RR,             // R - R
  U,              // R _|_ R
  SphericalArbitrary,
  SphericalCommonPoint,
  SphericalOrthogonal,
  SingleR,
  SingleP,
};

inline constexpr int kCatalogueSize = 15;

struct SubchainInfo {
  SubchainKind kind;
  int row;                    // catalogue row 1..15, 0 for single joints
  SegmentFamily family;
  const char* name;           // "G3", "S2", "R" ...
  const char* symbol;         // "P _|_ R || R"
  const char* letters;        // "PRR"
  std::vector<RelationCode> codes;  // (1,2) or (1,2),(1,3),(2,3)
  int column;                 // 1-based column within the segment carrying the entries
  std::vector<int> t;         // POC pattern over the segment
  std::vector<int> r;

  int size() const { return static_cast<int>(std::char_traits<char>::length(letters)); }
};

const SubchainInfo& subchain_info(SubchainKind kind);
/// Rows 1..15 in order.
const std::array<SubchainInfo, kCatalogueSize>& subchain_catalogue();

/// Leg topology of a catalogue row, e.g. [[9,2,2],[2,8,1],[2,1,8]] for P _|_ R || R.
LegTopology subchain_topology(SubchainKind kind);

struct Segment {
  SubchainKind kind;
  int first;  // 1-based, inclusive
  int last;

  int size() const { return last - first + 1; }
  bool operator==(const Segment&) const = default;
};

/// Greedy base-first segmentation: three-joint patterns (planar before
/// spherical), then two-joint patterns, else a single joint.
std::vector<Segment> extract_subchains(const LegTopology& leg, const RelationGraph& g);

/// Supplemented 2×6 matrix of one segment of a leg with `f` joints.
PocMatrix subchain_poc(SubchainKind kind, int first, int f, int leg_label = 1);
PocMatrix subchain_poc(const Segment& s, int f, int leg_label = 1);

/// "G3[1-3]", "P[4]".
std::string describe_segment(const Segment& s);

}  // namespace pocmob
