#include "pocmob/mobility.hpp"

#include <numeric>
#include <sstream>

namespace pocmob {

int MobilityReport::loop_sum() const {
  return std::accumulate(loop_ranks.begin(), loop_ranks.end(), 0,
                         [](int acc, const LoopRank& l) { return acc + l.xi(); });
}

std::string dof_label(const MobilityReport& r) {
  return r.rigid() ? "rigid (F = " + std::to_string(r.dof) + ")" : std::to_string(r.dof);
}

namespace {

std::string owners(const PocMatrix& m) {
  return "(" + std::to_string(m.translation_owner) + ", " + std::to_string(m.rotation_owner) + ")";
}

std::string describe_poc(const PocMatrix& m, const RelationGraph& g) {
  return format_poc(m) + " owners " + owners(m) + ", G = (" + std::to_string(m.xi_t()) + ", " +
         describe_translation(translation_view(m, g), g) + "), H = (" + std::to_string(m.xi_r()) + ", " +
         describe_rotation(rotation_view(m, g), g) + ")";
}

std::string legs_range(int last) { return "1-" + std::to_string(last); }

}  // namespace

MobilityReport analyze_mechanism(const MechanismTopology& mech, RelationPolicy policy) {
  if (auto problems = validate_mechanism(mech); !problems.empty()) {
    std::string msg = "invalid mechanism";
    for (const auto& p : problems) msg += "; " + p;
    throw AnalysisError(msg);
  }
  const RelationGraph g = build_relation_graph(mech);
  const DirectionContext ctx(g, policy);

  MobilityReport rep;
  rep.name = mech.name;
  auto trace = [&](int step, std::string text) { rep.trace.push_back({step, std::move(text)}); };

  // Step 1
  {
    std::ostringstream os;
    os << "input " << mech.legs.size() << " legs:";
    for (const auto& leg : mech.legs) os << " L" << leg.label << "=" << joints_to_string(leg.joints);
    trace(1, os.str());
  }

  // Step 2
  for (const auto& leg : mech.legs) {
    rep.legs.push_back(analyze_leg(leg, g));
    const auto& lp = rep.legs.back();
    std::string segs;
    for (const auto& s : lp.segments) segs += (segs.empty() ? "" : " ") + describe_segment(s);
    trace(2, "leg " + std::to_string(lp.label) + ": " + segs + "; OR = " + format_poc(lp.initial) + "; M_L" +
                 std::to_string(lp.label) + " = " + format_poc(lp.matrix) + ", G = (" + std::to_string(lp.xi_t) +
                 ", " + describe_translation(translation_view(lp.matrix, g), g) + "), H = (" +
                 std::to_string(lp.xi_r) + ", " + describe_rotation(rotation_view(lp.matrix, g), g) + ")");
  }

  // Step 3
  {
    rep.total_joint_dof = mech.total_joint_dof();
    std::string terms;
    for (const auto& leg : mech.legs) terms += (terms.empty() ? "" : " + ") + std::to_string(leg.size());
    trace(3, "sum f = " + terms + " = " + std::to_string(rep.total_joint_dof));
  }

  // Steps 4-7 and 9: fold the legs in input order.
  const int v = static_cast<int>(mech.legs.size()) - 1;
  PocMatrix sub = rep.legs.front().matrix;
  std::vector<TraceStep> final_step;
  for (int j = 1; j <= v; ++j) {
    const auto& next = rep.legs[j].matrix;
    LoopRank lr;
    PocMatrix joined;
    try {
      lr = loop_rank(sub, next, ctx);
      joined = intersect_poc(sub, next, ctx);
    } catch (const IndeterminateRelation& e) {
      throw IndeterminateRelation(std::string(e.what()) + " in loop " + std::to_string(j), j);
    }
    rep.loop_ranks.push_back(lr);
    const std::string closing = j == 1 ? "legs 1 and 2" : "sub-PM " + legs_range(j) + " with leg " + std::to_string(j + 1);
    trace(j == 1 ? 4 : 7, "loop " + std::to_string(j) + " (" + closing + "): xi_t = " + std::to_string(lr.xi_t) +
                              ", xi_r = " + std::to_string(lr.xi_r) + ", xi_L" + std::to_string(j) + " = " +
                              std::to_string(lr.xi()));
    sub = joined;
    rep.sub_pms.push_back(sub);
    const std::string text = "sub-PM " + legs_range(j + 1) + ": " + describe_poc(sub, g);
    if (j == v) final_step.push_back({9, text});
    else trace(j == 1 ? 5 : 6, text);
  }

  // Step 8
  rep.dof = rep.total_joint_dof - rep.loop_sum();
  {
    std::string terms;
    for (const auto& lr : rep.loop_ranks) terms += (terms.empty() ? "" : " + ") + std::to_string(lr.xi());
    trace(8, "F = " + std::to_string(rep.total_joint_dof) + " - (" + terms + ") = " + std::to_string(rep.dof));
  }

  // Step 9
  rep.poc = sub;
  rep.classification = classify(sub);
  rep.translation = describe_translation(translation_view(sub, g), g);
  rep.rotation = describe_rotation(rotation_view(sub, g), g);
  for (auto& s : final_step) rep.trace.push_back(std::move(s));
  trace(9, "mobility " + rep.classification + ", translation " + rep.translation + ", rotation " + rep.rotation);
  return rep;
}

}  // namespace pocmob
