#include "pocmob/leg_analysis.hpp"

namespace pocmob {

LegPoc analyze_leg(const LegTopology& leg, const RelationGraph& g) {
  LegPoc out;
  out.label = leg.label;
  out.f = static_cast<int>(leg.size());
  out.segments = extract_subchains(leg, g);

  std::vector<PocMatrix> parts;
  for (const auto& s : out.segments) {
    parts.push_back(subchain_poc(s, out.f, leg.label));
    out.trace.push_back({s, parts.back()});
  }
  out.initial = poc_or(parts);
  out.matrix = normalize(out.initial, g);
  out.xi_t = out.matrix.xi_t();
  out.xi_r = out.matrix.xi_r();
  return out;
}

}  // namespace pocmob
