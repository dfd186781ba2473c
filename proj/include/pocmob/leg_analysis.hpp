#pragma once

#include <string>
#include <vector>

#include "pocmob/poc.hpp"
#include "pocmob/subchain.hpp"

namespace pocmob {

struct LegTraceStep {
  Segment segment;
  PocMatrix matrix;  // supplemented matrix of this segment alone
};

struct LegPoc {
  int label = 1;
  int f = 0;
  std::vector<Segment> segments;
  std::vector<LegTraceStep> trace;
  PocMatrix initial;  // cell-wise OR of all segments, before normalization
  PocMatrix matrix;
  int xi_t = 0;
  int xi_r = 0;

  int xi() const { return xi_t + xi_r; }
};

/// POC of a single leg: segment, OR the segment matrices, normalize.
LegPoc analyze_leg(const LegTopology& leg, const RelationGraph& g);

}  // namespace pocmob
